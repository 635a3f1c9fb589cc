#include <doctest.h>

#include <cmath>
#include <sstream>

#include "relscan/ingest.hpp"
#include "relscan/synth.hpp"

using namespace relscan;

namespace {

const char* kHeader = "frame,id,x,y,width,height,xVelocity,yVelocity\n";

std::vector<TrackRecord> parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tracks(in);
}

}  // namespace

TEST_CASE("parses a well-formed row") {
  const auto records =
      parse_string(std::string(kHeader) + "1,5,100.0,10.0,5.0,2.0,30.0,0.0\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].frame == 1);
  CHECK(records[0].id == 5);
  CHECK(records[0].x == doctest::Approx(100.0));
  CHECK(records[0].vx == doctest::Approx(30.0));
}

TEST_CASE("unknown columns are ignored") {
  const auto records = parse_string(
      "frame,id,x,y,width,height,xVelocity,yVelocity,laneId,foo\n"
      "1,5,100.0,10.0,5.0,2.0,30.0,0.0,3,bar\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].height == doctest::Approx(2.0));
}

TEST_CASE("format errors carry line numbers") {
  SUBCASE("empty file") {
    CHECK_THROWS_AS(parse_string(""), FormatError);
  }
  SUBCASE("missing required column") {
    CHECK_THROWS_AS(parse_string("frame,id,x,y,width,height,xVelocity\n"),
                    FormatError);
  }
  SUBCASE("negative dimension") {
    try {
      parse_string(std::string(kHeader) + "1,5,0,0,5,2,0,0\n" +
                   "1,6,0,0,-1,2,0,0\n");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric field") {
    try {
      parse_string(std::string(kHeader) + "1,5,abc,0,5,2,0,0\n");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("short row") {
    CHECK_THROWS_AS(parse_string(std::string(kHeader) + "1,5,0,0\n"),
                    FormatError);
  }
}

TEST_CASE("object state uses the box center and circumscribed radius") {
  TrackRecord rec{1, 7, 100.0, 10.0, 5.0, 2.0, 30.0, 0.0};
  const ObjectState state = to_object_state(rec);
  CHECK(state.r.x == doctest::Approx(102.5));
  CHECK(state.r.y == doctest::Approx(11.0));
  CHECK(state.s == doctest::Approx(0.5 * std::sqrt(29.0)));

  TrackRecord square{1, 8, 0.0, 0.0, 2.0, 2.0, 0.0, 0.0};
  const ObjectState sq = to_object_state(square);
  CHECK(sq.r.x == doctest::Approx(1.0));
  CHECK(sq.s == doctest::Approx(std::sqrt(2.0)));

  TrackRecord tiny{1, 9, 0.0, 0.0, 0.1, 0.1, 0.0, 0.0};
  CHECK(to_object_state(tiny).s == doctest::Approx(0.0707106781));

  // The circumscribed circle always contains the box.
  for (double w : {0.5, 2.0, 5.0, 12.0}) {
    for (double h : {0.5, 2.0, 2.5}) {
      TrackRecord r2{1, 1, 0, 0, w, h, 0, 0};
      CHECK(to_object_state(r2).s >= std::max(w, h) / 2.0);
    }
  }
}

TEST_CASE("frame grouping sorts and rejects duplicates") {
  std::vector<TrackRecord> records = {
      {2, 9, 0, 0, 1, 1, 0, 0},
      {1, 5, 0, 0, 1, 1, 0, 0},
      {2, 3, 0, 0, 1, 1, 0, 0},
  };
  const auto grouped = frames(records);
  REQUIRE(grouped.size() == 2);
  CHECK(grouped[0].first == 1);
  CHECK(grouped[1].second[0].id == 3);
  CHECK(grouped[1].second[1].id == 9);

  records.push_back({1, 5, 1, 1, 1, 1, 0, 0});
  CHECK_THROWS_AS(frames(records), DuplicateId);
}

TEST_CASE("pair enumeration") {
  std::vector<ObjectState> states = {
      {1, {0, 0}, {1, 0}, 1.0},
      {2, {10, 0}, {1, 0}, 1.0},
      {3, {20, 0}, {1, 0}, 1.0},
  };
  CHECK(pairs(states, AllOrdered{}).size() == 6);
  const auto single = pairs(states, SingleEgo{1});
  REQUIRE(single.size() == 2);
  CHECK(single[0].ego.id == 1);
  CHECK_THROWS_AS(pairs(states, SingleEgo{99}), UnknownEgoId);
}

TEST_CASE("meta parsing") {
  std::istringstream in("id,frameRate,speedLimit\n1,25,120\n");
  CHECK(parse_meta(in).frame_rate == doctest::Approx(25.0));
  std::istringstream bad("id,speedLimit\n1,120\n");
  CHECK_THROWS_AS(parse_meta(bad), FormatError);
}

TEST_CASE("synthetic fixtures are deterministic and round-trip") {
  SynthSpec spec;
  spec.kind = SynthSpec::Kind::kMixed;
  spec.n_frames = 5;
  spec.n_vehicles = 8;
  spec.seed = 99;
  const auto a = synth_fixture(spec);
  const auto b = synth_fixture(spec);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 40);

  std::ostringstream out_a, out_b;
  write_tracks_csv(out_a, a);
  write_tracks_csv(out_b, b);
  CHECK(out_a.str() == out_b.str());

  std::istringstream back(out_a.str());
  const auto parsed = parse_tracks(back);
  REQUIRE(parsed.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(parsed[i].frame == a[i].frame);
    CHECK(parsed[i].id == a[i].id);
    CHECK(parsed[i].x == doctest::Approx(a[i].x).epsilon(1e-6));
    CHECK(parsed[i].width == doctest::Approx(a[i].width).epsilon(1e-6));
    CHECK(parsed[i].vx == doctest::Approx(a[i].vx).epsilon(1e-6));
  }
}

TEST_CASE("two-vehicle fixtures realize the requested gap") {
  SynthSpec spec;
  spec.kind = SynthSpec::Kind::kFollowing;
  spec.v1 = 30.0;
  spec.v2 = 30.0;
  spec.gap = 30.0;
  const auto records = synth_fixture(spec);
  REQUIRE(records.size() == 2);
  const auto a = to_object_state(records[0]);
  const auto b = to_object_state(records[1]);
  const auto pair = PairState::make(a, b);
  CHECK(pair.gap0 == doctest::Approx(30.0));

  SynthSpec bad = spec;
  bad.gap = -1.0;
  CHECK_THROWS_AS(synth_fixture(bad), InvalidSpec);
  CHECK_THROWS_AS(synth_kind_from_string("nope"), InvalidSpec);
}

TEST_CASE("fixture kinds realize their scenario geometry") {
  SynthSpec spec;
  spec.gap = 200.0;
  const auto states = [&]() {
    const auto records = synth_fixture(spec);
    return PairState::make(to_object_state(records[0]),
                           to_object_state(records[1]));
  };
  spec.kind = SynthSpec::Kind::kOncoming;
  CHECK(classify_radial(states()) ==
        std::vector<FunctionalScenario>{FunctionalScenario::kRtt});
  spec.kind = SynthSpec::Kind::kReceding;
  CHECK(classify_radial(states()) ==
        std::vector<FunctionalScenario>{FunctionalScenario::kRaa});
  // Merging: the laterally drifting vehicle ahead sees the follower as
  // approaching along its lane.
  spec.kind = SynthSpec::Kind::kMerging;
  CHECK(classify_tangential(states()) == FunctionalScenario::kTxt);
  const auto records = synth_fixture(spec);
  const auto swapped = PairState::make(to_object_state(records[1]),
                                       to_object_state(records[0]));
  CHECK(classify_tangential(swapped) == FunctionalScenario::kTxa);
}
