#include "relscan/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "relscan/ecdf.hpp"
#include "relscan/relevance.hpp"
#include "relscan/svg_plot.hpp"

namespace relscan {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct FrameOutput {
  std::string rows;
  std::array<std::vector<double>, kCategoryCount> samples;
  std::int64_t pairs = 0;
  std::int64_t relevant = 0;
  std::int64_t overlap = 0;
  std::int64_t headway_flagged = 0;
  std::int64_t ttc_flagged = 0;
};

Category scenario_category(FunctionalScenario s) {
  switch (s) {
    case FunctionalScenario::kRta:
      return Category::kRta;
    case FunctionalScenario::kRatPlus:
      return Category::kRatPlus;
    case FunctionalScenario::kRatMinus:
      return Category::kRatMinus;
    case FunctionalScenario::kRtt:
      return Category::kRtt;
    case FunctionalScenario::kRaa:
      return Category::kRaa;
    default:
      return Category::kTxt;
  }
}

FrameOutput process_frame(std::int64_t frame_id,
                          const std::vector<ObjectState>& states,
                          const RunConfig& config) {
  FrameOutput out;
  std::vector<PairState> frame_pairs;
  if (std::holds_alternative<SingleEgo>(config.ego_selection)) {
    const std::int64_t ego_id = std::get<SingleEgo>(config.ego_selection).id;
    const bool present =
        std::any_of(states.begin(), states.end(),
                    [&](const ObjectState& s) { return s.id == ego_id; });
    if (!present) return out;  // the ego is not on the segment this frame
    frame_pairs = pairs(states, config.ego_selection);
  } else {
    frame_pairs = pairs(states, config.ego_selection);
  }

  std::ostringstream rows;
  for (const PairState& pair : frame_pairs) {
    const RelevanceVerdict verdict =
        evaluate_pair(pair, config.params, config.fidelity);
    const double dist = pair.center_distance();
    std::array<std::string, 6> d_min_cols;  // R.TA .. T.XT, empty when n/a
    std::string scenario_list;
    for (const auto& entry : verdict.entries) {
      const Category cat = scenario_category(entry.scenario);
      const std::size_t idx =
          static_cast<std::size_t>(cat) - static_cast<std::size_t>(Category::kRta);
      d_min_cols[idx] = std::isfinite(entry.d_min) ? fmt_double(entry.d_min)
                                                   : "-inf";
      if (!scenario_list.empty()) scenario_list += ';';
      scenario_list += to_string(entry.scenario);
      if (entry.triggered) {
        out.samples[static_cast<std::size_t>(cat)].push_back(dist);
      }
    }

    BaselineFlags flags;
    std::optional<double> ttc;
    if (dist > geometry::kDistanceEpsilon) {
      flags = baseline_flags(pair, config.thresholds);
      ttc = time_to_collision(pair);
    }
    const double headway_dist =
        headway_distance(pair.ego.v.norm(), config.thresholds);

    out.samples[static_cast<std::size_t>(Category::kAll)].push_back(dist);
    if (verdict.relevant) {
      out.samples[static_cast<std::size_t>(Category::kRelevant)].push_back(
          dist);
    }
    out.samples[static_cast<std::size_t>(Category::kHeadway)].push_back(
        headway_dist);
    if (flags.ttc_relevant) {
      out.samples[static_cast<std::size_t>(Category::kTtc)].push_back(dist);
    }

    ++out.pairs;
    if (verdict.relevant) ++out.relevant;
    if (verdict.overlap) ++out.overlap;
    if (flags.headway_relevant) ++out.headway_flagged;
    if (flags.ttc_relevant) ++out.ttc_flagged;

    rows << frame_id << ',' << pair.ego.id << ',' << pair.ooi.id << ','
         << fmt_double(dist) << ',' << fmt_double(pair.gap0) << ','
         << scenario_list;
    for (const std::string& col : d_min_cols) rows << ',' << col;
    rows << ',' << (verdict.relevant ? 1 : 0) << ','
         << (verdict.overlap ? 1 : 0) << ','
         << (ttc ? fmt_double(*ttc) : "inf") << ','
         << (flags.ttc_relevant ? 1 : 0) << ',' << fmt_double(headway_dist)
         << ',' << (flags.headway_relevant ? 1 : 0) << '\n';
  }
  out.rows = rows.str();
  return out;
}

void write_ecdf_csv(const fs::path& path, const std::vector<double>& samples) {
  const Ecdf ecdf{std::vector<double>(samples)};
  std::ofstream out(path, std::ios::binary);
  out << "distance,cum_fraction\n";
  const auto& vals = ecdf.sorted_values();
  char buf[96];
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    std::snprintf(buf, sizeof(buf), "%.6f,%.8f\n", vals[i],
                  static_cast<double>(j) / static_cast<double>(vals.size()));
    out << buf;
    i = j;
  }
}

}  // namespace

std::string category_name(Category c) {
  switch (c) {
    case Category::kAll:
      return "all";
    case Category::kRelevant:
      return "relevant";
    case Category::kRta:
      return "rta";
    case Category::kRatPlus:
      return "ratplus";
    case Category::kRatMinus:
      return "ratminus";
    case Category::kRtt:
      return "rtt";
    case Category::kRaa:
      return "raa";
    case Category::kTxt:
      return "txt";
    case Category::kHeadway:
      return "headway";
    case Category::kTtc:
      return "ttc";
  }
  return "?";
}

AnalyzeSummary analyze(const RunConfig& config) {
  config.params.validate();
  config.thresholds.validate();

  std::ifstream tracks_in(config.tracks_path, std::ios::binary);
  if (!tracks_in) {
    throw FormatError("cannot open tracks file: " + config.tracks_path);
  }
  const std::vector<TrackRecord> records = parse_tracks(tracks_in);

  RecordingMeta meta;
  if (!config.meta_path.empty()) {
    std::ifstream meta_in(config.meta_path, std::ios::binary);
    if (!meta_in) {
      throw FormatError("cannot open meta file: " + config.meta_path);
    }
    meta = parse_meta(meta_in);
  }
  const int stride = config.frame_stride > 0
                         ? config.frame_stride
                         : std::max(1, static_cast<int>(std::lround(
                                           meta.frame_rate)));

  const auto grouped = frames(records);

  if (std::holds_alternative<SingleEgo>(config.ego_selection)) {
    const std::int64_t ego_id = std::get<SingleEgo>(config.ego_selection).id;
    const bool anywhere = std::any_of(
        grouped.begin(), grouped.end(), [&](const auto& fr) {
          return std::any_of(
              fr.second.begin(), fr.second.end(),
              [&](const ObjectState& s) { return s.id == ego_id; });
        });
    if (!anywhere) {
      throw UnknownEgoId("ego id " + std::to_string(ego_id) +
                         " not present in the recording");
    }
  }

  std::vector<std::size_t> sampled;
  for (std::size_t i = 0; i < grouped.size(); i += stride) sampled.push_back(i);

  // Frames are independent; chunked workers produce per-frame outputs
  // that are merged in frame order, so the bytes do not depend on the
  // worker count.
  std::vector<FrameOutput> outputs(sampled.size());
  const int workers = std::max(1, config.workers);
  if (workers == 1 || sampled.size() <= 1) {
    for (std::size_t k = 0; k < sampled.size(); ++k) {
      const auto& fr = grouped[sampled[k]];
      outputs[k] = process_frame(fr.first, fr.second, config);
    }
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk =
        (sampled.size() + static_cast<std::size_t>(workers) - 1) /
        static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(begin + chunk, sampled.size());
      if (begin >= end) break;
      jobs.push_back(std::async(std::launch::async, [&, begin, end]() {
        for (std::size_t k = begin; k < end; ++k) {
          const auto& fr = grouped[sampled[k]];
          outputs[k] = process_frame(fr.first, fr.second, config);
        }
      }));
    }
    for (auto& job : jobs) job.get();
  }

  AnalyzeSummary summary;
  summary.frames_total = static_cast<std::int64_t>(grouped.size());
  summary.frames_sampled = static_cast<std::int64_t>(sampled.size());
  summary.stride = stride;

  std::array<std::vector<double>, kCategoryCount> samples;
  std::ostringstream all_rows;
  for (const FrameOutput& out : outputs) {
    all_rows << out.rows;
    summary.pairs_evaluated += out.pairs;
    summary.relevant_pairs += out.relevant;
    summary.overlap_pairs += out.overlap;
    summary.headway_relevant_pairs += out.headway_flagged;
    summary.ttc_relevant_pairs += out.ttc_flagged;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      samples[c].insert(samples[c].end(), out.samples[c].begin(),
                        out.samples[c].end());
    }
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    summary.category_counts[c] =
        static_cast<std::int64_t>(samples[c].size());
  }

  const fs::path out_dir(config.out_dir.empty() ? "." : config.out_dir);
  fs::create_directories(out_dir);

  {
    std::ofstream pairs_csv(out_dir / "pairs.csv", std::ios::binary);
    pairs_csv << "frame,ego_id,ooi_id,center_distance,gap,scenarios,"
                 "dmin_rta,dmin_ratplus,dmin_ratminus,dmin_rtt,dmin_raa,"
                 "dmin_txt,relevant,overlap,ttc,ttc_relevant,headway_distance,"
                 "headway_relevant\n";
    pairs_csv << all_rows.str();
  }

  std::vector<Ecdf> ecdfs;
  std::vector<EcdfCurve> curves;
  ecdfs.reserve(kCategoryCount);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    if (samples[c].empty()) continue;
    const std::string name = category_name(static_cast<Category>(c));
    write_ecdf_csv(out_dir / ("ecdf_" + name + ".csv"), samples[c]);
    ecdfs.emplace_back(std::vector<double>(samples[c]));
  }
  std::size_t ecdf_idx = 0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    if (samples[c].empty()) continue;
    curves.push_back(
        {category_name(static_cast<Category>(c)), &ecdfs[ecdf_idx++]});
  }
  if (!curves.empty()) {
    std::ofstream svg(out_dir / "ecdf.svg", std::ios::binary);
    svg << plot_ecdf_svg(curves);
  }

  {
    std::ofstream sum(out_dir / "summary.txt", std::ios::binary);
    sum << "frames_total = " << summary.frames_total << "\n"
        << "frames_sampled = " << summary.frames_sampled << "\n"
        << "stride = " << summary.stride << "\n"
        << "pairs_evaluated = " << summary.pairs_evaluated << "\n"
        << "relevant_pairs = " << summary.relevant_pairs << "\n"
        << "overlap_pairs = " << summary.overlap_pairs << "\n";
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      sum << "count_" << category_name(static_cast<Category>(c)) << " = "
          << summary.category_counts[c] << "\n";
    }
    sum << "headway_relevant_pairs = " << summary.headway_relevant_pairs
        << "\n"
        << "ttc_relevant_pairs = " << summary.ttc_relevant_pairs << "\n"
        << "fidelity = " << to_string(config.fidelity) << "\n"
        << "a_max = " << config.params.a_max << "\n"
        << "a1_b = " << config.params.a1_b << "\n"
        << "a2_b = " << config.params.a2_b << "\n"
        << "a1_g = " << config.params.a1_g << "\n"
        << "t1_r = " << config.params.t1_r << "\n"
        << "t2_r = " << config.params.t2_r << "\n"
        << "headway_s = " << config.thresholds.headway_s << "\n"
        << "ttc_s = " << config.thresholds.ttc_s << "\n";
  }
  return summary;
}

}  // namespace relscan
