#include "relscan/synth.hpp"

#include <cmath>
#include <random>

#include "relscan/errors.hpp"

namespace relscan {

namespace {

constexpr double kSegmentLength = 420.0;  // m
constexpr double kFrameRate = 25.0;       // Hz
constexpr double kCarWidth = 5.0;         // box extent along x
constexpr double kCarHeight = 2.0;

double size_radius(double w, double h) { return 0.5 * std::hypot(w, h); }

// Values are quantized to the tracks-file precision so that parsing a
// serialized fixture reproduces it exactly.
double quantize(double v) { return std::round(v * 1e4) / 1e4; }

TrackRecord box_at_center(std::int64_t frame, std::int64_t id, double cx,
                          double cy, double vx, double vy, double w,
                          double h) {
  TrackRecord rec;
  rec.frame = frame;
  rec.id = id;
  rec.x = quantize(cx - w / 2.0);
  rec.y = quantize(cy - h / 2.0);
  rec.width = quantize(w);
  rec.height = quantize(h);
  rec.vx = quantize(vx);
  rec.vy = quantize(vy);
  return rec;
}

void validate(const SynthSpec& spec) {
  if (spec.v1 < 0.0 || spec.v2 < 0.0 || spec.gap < 0.0 ||
      spec.n_frames < 1 || spec.n_vehicles < 2) {
    throw InvalidSpec("synth spec values out of range");
  }
}

/// Two-vehicle kinds share the same skeleton; only the initial motion
/// differs.
std::vector<TrackRecord> two_vehicle(const SynthSpec& spec, double ego_cy,
                                     double ego_vy, double ooi_dir) {
  const double s2 = size_radius(kCarWidth, kCarHeight);
  const double center_dist = spec.gap + 2.0 * s2;
  const double ego_cx = 10.0;
  const double ooi_cx = ego_cx + center_dist;
  const double dt = 1.0 / kFrameRate;
  std::vector<TrackRecord> out;
  out.reserve(2 * static_cast<std::size_t>(spec.n_frames));
  for (std::int64_t f = 0; f < spec.n_frames; ++f) {
    const double t = f * dt;
    double ego_v = spec.v1;
    if (spec.kind == SynthSpec::Kind::kReceding) ego_v = -spec.v1;
    out.push_back(box_at_center(f + 1, 1, ego_cx + ego_v * t,
                                ego_cy + ego_vy * t, ego_v, ego_vy, kCarWidth,
                                kCarHeight));
    out.push_back(box_at_center(f + 1, 2, ooi_cx + ooi_dir * spec.v2 * t, 10.0,
                                ooi_dir * spec.v2, 0.0, kCarWidth,
                                kCarHeight));
  }
  return out;
}

std::vector<TrackRecord> multi_vehicle(const SynthSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Vehicle {
    double x, y, vx, vy, w, h;
  };
  const double forward_lanes[] = {4.0, 8.0, 12.0};
  const double backward_lanes[] = {20.0, 24.0, 28.0};
  std::vector<Vehicle> fleet;
  fleet.reserve(static_cast<std::size_t>(spec.n_vehicles));
  for (int i = 0; i < spec.n_vehicles; ++i) {
    Vehicle v;
    const bool forward = unit(rng) < 0.5;
    const int lane = static_cast<int>(unit(rng) * 3.0) % 3;
    v.y = forward ? forward_lanes[lane] : backward_lanes[lane];
    const bool truck = unit(rng) < 0.2;
    v.w = truck ? 12.0 : 4.2 + 1.2 * unit(rng);
    v.h = truck ? 2.5 : 1.8 + 0.4 * unit(rng);
    const double speed = truck ? 20.0 + 5.0 * unit(rng)
                               : 17.0 + 25.0 * unit(rng);
    v.vx = forward ? speed : -speed;
    // Occasional lateral drift to exercise the merge hypothesis.
    v.vy = unit(rng) < 0.25 ? (unit(rng) - 0.5) : 0.0;
    v.x = kSegmentLength * unit(rng);
    fleet.push_back(v);
  }

  const double dt = 1.0 / kFrameRate;
  std::vector<TrackRecord> out;
  out.reserve(fleet.size() * static_cast<std::size_t>(spec.n_frames));
  for (std::int64_t f = 0; f < spec.n_frames; ++f) {
    const double t = f * dt;
    for (std::size_t i = 0; i < fleet.size(); ++i) {
      const Vehicle& v = fleet[i];
      // Wrap on the segment so the population stays constant.
      double cx = std::fmod(v.x + v.vx * t, kSegmentLength);
      if (cx < 0.0) cx += kSegmentLength;
      out.push_back(box_at_center(f + 1, static_cast<std::int64_t>(i + 1), cx,
                                  v.y + v.vy * t, v.vx, v.vy, v.w, v.h));
    }
  }
  return out;
}

}  // namespace

SynthSpec::Kind synth_kind_from_string(const std::string& name) {
  if (name == "following") return SynthSpec::Kind::kFollowing;
  if (name == "oncoming") return SynthSpec::Kind::kOncoming;
  if (name == "receding") return SynthSpec::Kind::kReceding;
  if (name == "merging") return SynthSpec::Kind::kMerging;
  if (name == "mixed") return SynthSpec::Kind::kMixed;
  if (name == "bulk") return SynthSpec::Kind::kBulk;
  throw InvalidSpec("unknown synth kind `" + name + "`");
}

std::vector<TrackRecord> synth_fixture(const SynthSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case SynthSpec::Kind::kFollowing:
      return two_vehicle(spec, 10.0, 0.0, +1.0);
    case SynthSpec::Kind::kOncoming:
      return two_vehicle(spec, 10.0, 0.0, -1.0);
    case SynthSpec::Kind::kReceding:
      return two_vehicle(spec, 10.0, 0.0, +1.0);
    case SynthSpec::Kind::kMerging: {
      // The object approaches from behind along its lane; the ego sits
      // ahead with a lateral offset, drifting toward the lane.
      const double s = size_radius(kCarWidth, kCarHeight);
      const double dt = 1.0 / kFrameRate;
      std::vector<TrackRecord> out;
      for (std::int64_t f = 0; f < spec.n_frames; ++f) {
        const double t = f * dt;
        out.push_back(box_at_center(f + 1, 1,
                                    10.0 + spec.gap + 2.0 * s + spec.v1 * t,
                                    13.5 - 0.8 * t, spec.v1, -0.8, kCarWidth,
                                    kCarHeight));
        out.push_back(box_at_center(f + 1, 2, 10.0 + spec.v2 * t, 10.0,
                                    spec.v2, 0.0, kCarWidth, kCarHeight));
      }
      return out;
    }
    case SynthSpec::Kind::kMixed:
    case SynthSpec::Kind::kBulk:
      return multi_vehicle(spec);
  }
  throw InvalidSpec("unhandled synth kind");
}

}  // namespace relscan
