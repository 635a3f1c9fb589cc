#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "relscan/baselines.hpp"
#include "relscan/ingest.hpp"
#include "relscan/params.hpp"

namespace relscan {

/// Distance categories aggregated into ECDFs. `kHeadway` collects the
/// headway rule distance (ego speed times the headway requirement) per
/// pair; all other categories collect center distances.
enum class Category {
  kAll,
  kRelevant,
  kRta,
  kRatPlus,
  kRatMinus,
  kRtt,
  kRaa,
  kTxt,
  kHeadway,
  kTtc,
};
inline constexpr std::size_t kCategoryCount = 10;
std::string category_name(Category c);

struct RunConfig {
  std::string tracks_path;
  std::string meta_path;  // empty: assume 25 Hz
  CapabilityParams params;
  BaselineThresholds thresholds;
  FormulaFidelity fidelity = FormulaFidelity::kCorrected;
  EgoSelection ego_selection = AllOrdered{};
  int frame_stride = 0;  // 0: derive from the frame rate (1 Hz sampling)
  std::string out_dir;
  int workers = 1;
};

struct AnalyzeSummary {
  std::int64_t frames_total = 0;
  std::int64_t frames_sampled = 0;
  int stride = 1;
  std::int64_t pairs_evaluated = 0;
  std::int64_t relevant_pairs = 0;
  std::int64_t overlap_pairs = 0;
  std::array<std::int64_t, kCategoryCount> category_counts{};
  std::int64_t headway_relevant_pairs = 0;
  std::int64_t ttc_relevant_pairs = 0;
};

/// Runs ingestion, classification, relevance and baselines over the
/// sampled frames and writes pairs.csv, ecdf_<category>.csv, summary.txt
/// and ecdf.svg into the output directory. Output bytes are identical
/// for identical input and configuration, independent of the worker
/// count.
AnalyzeSummary analyze(const RunConfig& config);

}  // namespace relscan
