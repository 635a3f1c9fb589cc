#include "relscan/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "relscan/errors.hpp"

namespace relscan {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& field, std::int64_t line,
                    const std::string& column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw FormatError(line, "non-numeric value `" + field + "` in column " +
                                column);
  }
  return value;
}

std::int64_t parse_int(const std::string& field, std::int64_t line,
                       const std::string& column) {
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError(line, "non-integer value `" + field + "` in column " +
                                column);
  }
  return value;
}

}  // namespace

TrackReader::TrackReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw FormatError(1, "missing header line");
  }
  ++line_;
  const std::vector<std::string> names = split_csv(header);
  n_columns_ = names.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  const auto require = [&](const char* name) {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw FormatError(1, std::string("missing required column `") + name +
                               "`");
    }
    return it->second;
  };
  col_frame_ = require("frame");
  col_id_ = require("id");
  col_x_ = require("x");
  col_y_ = require("y");
  col_width_ = require("width");
  col_height_ = require("height");
  col_vx_ = require("xVelocity");
  col_vy_ = require("yVelocity");
}

std::optional<TrackRecord> TrackReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() < n_columns_) {
      throw FormatError(line_, "expected " + std::to_string(n_columns_) +
                                   " fields, got " +
                                   std::to_string(fields.size()));
    }
    TrackRecord rec;
    rec.frame = parse_int(fields[col_frame_], line_, "frame");
    rec.id = parse_int(fields[col_id_], line_, "id");
    rec.x = parse_double(fields[col_x_], line_, "x");
    rec.y = parse_double(fields[col_y_], line_, "y");
    rec.width = parse_double(fields[col_width_], line_, "width");
    rec.height = parse_double(fields[col_height_], line_, "height");
    rec.vx = parse_double(fields[col_vx_], line_, "xVelocity");
    rec.vy = parse_double(fields[col_vy_], line_, "yVelocity");
    if (rec.frame < 0) {
      throw FormatError(line_, "negative frame index");
    }
    if (rec.width <= 0.0 || rec.height <= 0.0) {
      throw FormatError(line_, "non-positive box dimension");
    }
    return rec;
  }
  return std::nullopt;
}

std::vector<TrackRecord> parse_tracks(std::istream& in) {
  TrackReader reader(in);
  std::vector<TrackRecord> out;
  while (auto rec = reader.next()) {
    out.push_back(*rec);
  }
  return out;
}

RecordingMeta parse_meta(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw FormatError(1, "missing meta header line");
  }
  const std::vector<std::string> names = split_csv(header);
  std::size_t rate_col = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "frameRate") rate_col = i;
  }
  if (rate_col == names.size()) {
    throw FormatError(1, "missing required column `frameRate`");
  }
  std::string line;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() <= rate_col) {
      throw FormatError(line_no, "too few fields in meta row");
    }
    RecordingMeta meta;
    meta.frame_rate = parse_double(fields[rate_col], line_no, "frameRate");
    if (meta.frame_rate <= 0.0) {
      throw FormatError(line_no, "frameRate must be positive");
    }
    return meta;
  }
  throw FormatError(line_no, "meta file has no data row");
}

ObjectState to_object_state(const TrackRecord& rec) {
  ObjectState state;
  state.id = rec.id;
  state.r = {rec.x + rec.width / 2.0, rec.y + rec.height / 2.0};
  state.v = {rec.vx, rec.vy};
  state.s = 0.5 * std::hypot(rec.width, rec.height);
  return state;
}

std::vector<std::pair<std::int64_t, std::vector<ObjectState>>> frames(
    const std::vector<TrackRecord>& records) {
  std::map<std::int64_t, std::vector<ObjectState>> grouped;
  for (const TrackRecord& rec : records) {
    grouped[rec.frame].push_back(to_object_state(rec));
  }
  std::vector<std::pair<std::int64_t, std::vector<ObjectState>>> out;
  out.reserve(grouped.size());
  for (auto& [frame, states] : grouped) {
    std::sort(states.begin(), states.end(),
              [](const ObjectState& a, const ObjectState& b) {
                return a.id < b.id;
              });
    for (std::size_t i = 1; i < states.size(); ++i) {
      if (states[i].id == states[i - 1].id) {
        throw DuplicateId("id " + std::to_string(states[i].id) +
                          " appears twice in frame " + std::to_string(frame));
      }
    }
    out.emplace_back(frame, std::move(states));
  }
  return out;
}

std::vector<PairState> pairs(const std::vector<ObjectState>& frame_states,
                             const EgoSelection& selection) {
  std::vector<PairState> out;
  if (std::holds_alternative<AllOrdered>(selection)) {
    out.reserve(frame_states.size() * (frame_states.size() - 1));
    for (const ObjectState& ego : frame_states) {
      for (const ObjectState& ooi : frame_states) {
        if (ego.id == ooi.id) continue;
        out.push_back(PairState::make(ego, ooi));
      }
    }
    return out;
  }
  const std::int64_t ego_id = std::get<SingleEgo>(selection).id;
  const auto it =
      std::find_if(frame_states.begin(), frame_states.end(),
                   [&](const ObjectState& s) { return s.id == ego_id; });
  if (it == frame_states.end()) {
    throw UnknownEgoId("ego id " + std::to_string(ego_id) +
                       " not present in frame");
  }
  for (const ObjectState& ooi : frame_states) {
    if (ooi.id == ego_id) continue;
    out.push_back(PairState::make(*it, ooi));
  }
  return out;
}

void write_tracks_csv(std::ostream& out,
                      const std::vector<TrackRecord>& records) {
  out << "frame,id,x,y,width,height,xVelocity,yVelocity,laneId\n";
  char buf[256];
  for (const TrackRecord& rec : records) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%lld,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,0\n",
                  static_cast<long long>(rec.frame),
                  static_cast<long long>(rec.id), rec.x, rec.y, rec.width,
                  rec.height, rec.vx, rec.vy);
    out << buf;
  }
}

}  // namespace relscan
