// relscan: conservative perception-relevance analysis of recorded
// highway traffic.
//
// Subcommands:
//   analyze  - run the relevance criteria and baselines over a tracks
//              recording, emitting per-pair CSVs, ECDFs and an SVG plot
//   certify  - empirical conservativeness certificate of the closed
//              forms against the rollout oracle
//   synth    - deterministic synthetic recordings in the tracks format

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relscan/analyze.hpp"
#include "relscan/errors.hpp"
#include "relscan/oracle.hpp"
#include "relscan/synth.hpp"

namespace {

int run_analyze(const std::string& tracks, const std::string& meta,
                const std::string& params_path, const std::string& fidelity,
                const std::string& ego, int stride, const std::string& out,
                int workers) {
  relscan::RunConfig config;
  config.tracks_path = tracks;
  config.meta_path = meta;
  if (!params_path.empty()) {
    const relscan::ParamsFile params = relscan::load_params_file(params_path);
    config.params = params.capabilities;
    config.thresholds = params.thresholds;
  }
  config.fidelity = fidelity == "literal"
                        ? relscan::FormulaFidelity::kLiteral
                        : relscan::FormulaFidelity::kCorrected;
  if (ego != "all") {
    config.ego_selection = relscan::SingleEgo{std::stoll(ego)};
  }
  config.frame_stride = stride;
  config.out_dir = out;
  config.workers = workers;

  const relscan::AnalyzeSummary summary = relscan::analyze(config);
  std::cout << "frames_sampled = " << summary.frames_sampled << "\n"
            << "pairs_evaluated = " << summary.pairs_evaluated << "\n"
            << "relevant_pairs = " << summary.relevant_pairs << "\n";
  return 0;
}

int run_certify(std::int64_t samples, std::uint64_t seed,
                const std::string& params_path, const std::string& fidelity,
                const std::string& out) {
  relscan::CapabilityParams params;
  if (!params_path.empty()) {
    params = relscan::load_params_file(params_path).capabilities;
  }
  const relscan::FormulaFidelity f =
      fidelity == "literal" ? relscan::FormulaFidelity::kLiteral
                            : relscan::FormulaFidelity::kCorrected;
  const relscan::oracle::CertifyReport report =
      relscan::oracle::certify_random(params, f, samples, seed);
  const std::string text =
      relscan::oracle::certify_report_text(report, samples, seed, f);
  std::cout << text;
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    file << text;
  }
  return 0;
}

int run_synth(const std::string& kind, double v1, double v2, double gap,
              std::int64_t frames, int vehicles, std::uint64_t seed,
              const std::string& out) {
  relscan::SynthSpec spec;
  spec.kind = relscan::synth_kind_from_string(kind);
  spec.v1 = v1;
  spec.v2 = v2;
  spec.gap = gap;
  spec.n_frames = frames;
  spec.n_vehicles = vehicles;
  spec.seed = seed;
  const auto records = relscan::synth_fixture(spec);
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    throw relscan::FormatError("cannot open output file: " + out);
  }
  relscan::write_tracks_csv(file, records);
  std::cout << "records = " << records.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conservative perception-relevance analysis for highway traffic"};
  app.require_subcommand(1);

  auto* analyze_cmd =
      app.add_subcommand("analyze", "analyze a tracks recording");
  std::string tracks, meta, params_path, out = "out";
  std::string fidelity = "corrected", ego = "all";
  int stride = 0, workers = 1;
  analyze_cmd->add_option("--tracks", tracks, "tracks CSV path")->required();
  analyze_cmd->add_option("--meta", meta, "recording meta CSV path");
  analyze_cmd->add_option("--params", params_path, "key = value params file");
  analyze_cmd->add_option("--fidelity", fidelity, "corrected|literal")
      ->check(CLI::IsMember({"corrected", "literal"}));
  analyze_cmd->add_option("--ego", ego, "all or a vehicle id");
  analyze_cmd->add_option("--stride", stride, "frame stride (0 = 1 Hz)");
  analyze_cmd->add_option("--out", out, "output directory");
  analyze_cmd->add_option("--workers", workers, "parallel workers");

  auto* certify_cmd =
      app.add_subcommand("certify", "conservativeness certificate");
  std::int64_t samples = 10000;
  std::uint64_t seed = 42;
  std::string certify_out;
  certify_cmd->add_option("--samples", samples, "number of sampled profiles")
      ->required();
  certify_cmd->add_option("--seed", seed, "rng seed")->required();
  certify_cmd->add_option("--params", params_path, "key = value params file");
  certify_cmd->add_option("--fidelity", fidelity, "corrected|literal")
      ->check(CLI::IsMember({"corrected", "literal"}));
  certify_cmd->add_option("--out", certify_out, "also write the report here");

  auto* synth_cmd = app.add_subcommand("synth", "synthetic recording");
  std::string kind = "following", synth_out;
  double v1 = 30.0, v2 = 30.0, gap = 50.0;
  std::int64_t n_frames = 1;
  int n_vehicles = 2;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--kind", kind,
                        "following|oncoming|receding|merging|mixed|bulk")
      ->required();
  synth_cmd->add_option("--out", synth_out, "output CSV path")->required();
  synth_cmd->add_option("--v1", v1, "ego speed [m/s]");
  synth_cmd->add_option("--v2", v2, "object speed [m/s]");
  synth_cmd->add_option("--gap", gap, "initial gap [m]");
  synth_cmd->add_option("--frames", n_frames, "number of frames");
  synth_cmd->add_option("--vehicles", n_vehicles, "number of vehicles");
  synth_cmd->add_option("--seed", synth_seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze_cmd->parsed()) {
      return run_analyze(tracks, meta, params_path, fidelity, ego, stride,
                         out, workers);
    }
    if (certify_cmd->parsed()) {
      return run_certify(samples, seed, params_path, fidelity, certify_out);
    }
    return run_synth(kind, v1, v2, gap, n_frames, n_vehicles, synth_seed,
                     synth_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const relscan::InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const relscan::InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const relscan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
