#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "relscan/scenarios.hpp"

namespace relscan {

/// One bounding box of a tracks file. (x, y) is the box corner as
/// recorded; sizes must be positive.
struct TrackRecord {
  std::int64_t frame = 0;
  std::int64_t id = 0;
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

struct RecordingMeta {
  double frame_rate = 25.0;  // Hz
  std::optional<double> segment_length = std::nullopt;  // m
};

/// Streaming reader over a tracks CSV. The header must name at least
/// frame, id, x, y, width, height, xVelocity, yVelocity; unknown columns
/// are ignored. Throws FormatError with the offending line number.
class TrackReader {
 public:
  explicit TrackReader(std::istream& in);
  std::optional<TrackRecord> next();
  std::int64_t line() const { return line_; }

 private:
  std::istream& in_;
  std::int64_t line_ = 0;
  std::size_t n_columns_ = 0;
  std::size_t col_frame_, col_id_, col_x_, col_y_;
  std::size_t col_width_, col_height_, col_vx_, col_vy_;
};

/// Reads a full tracks stream into memory.
std::vector<TrackRecord> parse_tracks(std::istream& in);

/// Meta CSV with columns id, frameRate (further columns ignored).
RecordingMeta parse_meta(std::istream& in);

/// Box center, velocity and the circumscribed size radius. The
/// circumscribed circle never under-approximates the box.
ObjectState to_object_state(const TrackRecord& rec);

/// Records grouped by frame in ascending frame order; states sorted by
/// id within a frame. Throws DuplicateId when an id repeats in a frame.
std::vector<std::pair<std::int64_t, std::vector<ObjectState>>> frames(
    const std::vector<TrackRecord>& records);

struct AllOrdered {};
struct SingleEgo {
  std::int64_t id = 0;
};
using EgoSelection = std::variant<AllOrdered, SingleEgo>;

/// Ego/object pairs of one frame. AllOrdered yields every ordered pair;
/// SingleEgo pairs the given ego against all others and throws
/// UnknownEgoId when it is absent.
std::vector<PairState> pairs(const std::vector<ObjectState>& frame_states,
                             const EgoSelection& selection);

/// Serializes records in the tracks CSV format this library parses.
void write_tracks_csv(std::ostream& out,
                      const std::vector<TrackRecord>& records);

}  // namespace relscan
