#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relscan/ingest.hpp"

namespace relscan {

/// Deterministic synthetic recordings in the tracks CSV format, used
/// where licensed recordings cannot ship with the repository.
struct SynthSpec {
  enum class Kind {
    kFollowing,  // ego behind a leader, same direction
    kOncoming,   // mutual approach
    kReceding,   // mutual recession
    kMerging,    // laterally offset ego ahead of a faster object
    kMixed,      // multi-vehicle, multi-lane traffic
    kBulk,       // kMixed sized by frames x vehicles
  };
  Kind kind = Kind::kFollowing;
  double v1 = 30.0;   // m/s, ego (or typical) speed
  double v2 = 30.0;   // m/s, object speed
  double gap = 50.0;  // m, initial size-adjusted gap
  std::int64_t n_frames = 1;
  int n_vehicles = 2;
  std::uint64_t seed = 0;
};

SynthSpec::Kind synth_kind_from_string(const std::string& name);

/// Generates the records for a spec; identical spec gives identical
/// records. Throws InvalidSpec on out-of-range values.
std::vector<TrackRecord> synth_fixture(const SynthSpec& spec);

}  // namespace relscan
