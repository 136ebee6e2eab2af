#include <doctest.h>

#include <string>

#include "vts/errors.hpp"
#include "vts/scenario.hpp"

using namespace vts;

namespace {

Scenario two_on_one() {
  Scenario s;
  s.pursuers = {{1, {0, 0}, 1.0}, {2, {0, 1}, 1.0}, {3, {0, 2}, 1.0}};
  s.evaders = {{1, {10, 0}, 0.5, kPi}};
  s.region = {1, 5, -1, 3};
  s.max_virtual_targets = 2;
  return s;
}

bool mentions(const std::vector<std::string>& v, const std::string& text) {
  for (const auto& s : v)
    if (s.find(text) != std::string::npos) return true;
  return false;
}

std::string scenario_json(const std::string& pursuers, const std::string& evaders, int mv = 1,
                          const std::string& extra = "") {
  return R"({"pursuers": [)" + pursuers + R"(], "evaders": [)" + evaders +
         R"(], "vt_region": {"x_min": 0, "x_max": 1, "y_min": 0, "y_max": 1}, "max_virtual_targets": )" +
         std::to_string(mv) + extra + "}";
}

}  // namespace

TEST_CASE("Table 1 scenario loads") {
  const Scenario s = load_scenario(VTS_DATA_DIR "/table1.json");
  CHECK(s.num_pursuers() == 4);
  CHECK(s.num_evaders() == 2);
  CHECK(s.region.x_min == 3.0);
  CHECK(s.region.x_max == 8.0);
  CHECK(s.region.y_min == -4.0);
  CHECK(s.region.y_max == 10.0);
  CHECK(s.pursuers[2].position == Point2{-2, 6});
  CHECK(s.evaders[1].position == Point2{20, 8});
  CHECK(s.max_virtual_targets == 3);
  CHECK(validate(s).empty());
}

TEST_CASE("load errors") {
  SUBCASE("missing file names the path") {
    try {
      load_scenario("/nonexistent/scenario.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("/nonexistent/scenario.json") != std::string::npos);
    }
  }
  SUBCASE("one pursuer, two evaders") {
    const auto text = scenario_json(R"({"id": 1, "x": 0, "y": 0, "speed": 1})",
                                    R"({"id": 1, "x": 5, "y": 0, "speed": 0.5, "heading": 0},
                                       {"id": 2, "x": 6, "y": 0, "speed": 0.5, "heading": 0})",
                                    1, R"(, "allow_mv_ge_n": true)");
    try {
      parse_scenario(text);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(mentions(e.violations(), "N >= M violated"));
    }
  }
  SUBCASE("equal speeds") {
    const auto text = scenario_json(R"({"id": 1, "x": 0, "y": 0, "speed": 1}, {"id": 2, "x": 0, "y": 1, "speed": 1})",
                                    R"({"id": 1, "x": 5, "y": 0, "speed": 1, "heading": 0})");
    try {
      parse_scenario(text);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.violations().size() == 1);
      CHECK(mentions(e.violations(), "speed ratio mu >= 1"));
    }
  }
  SUBCASE("malformed JSON") { CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError); }
  SUBCASE("unknown top-level key") {
    const auto text = scenario_json(R"({"id": 1, "x": 0, "y": 0, "speed": 1}, {"id": 2, "x": 0, "y": 1, "speed": 1})",
                                    R"({"id": 1, "x": 5, "y": 0, "speed": 0.5, "heading": 0})", 1,
                                    R"(, "capture_radius": 0.1)");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }
  SUBCASE("unknown nested key") {
    const auto text =
        scenario_json(R"({"id": 1, "x": 0, "y": 0, "speed": 1, "fuel": 3}, {"id": 2, "x": 0, "y": 1, "speed": 1})",
                      R"({"id": 1, "x": 5, "y": 0, "speed": 0.5, "heading": 0})");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }
  SUBCASE("missing field") {
    const auto text = scenario_json(R"({"id": 1, "x": 0, "speed": 1}, {"id": 2, "x": 0, "y": 1, "speed": 1})",
                                    R"({"id": 1, "x": 5, "y": 0, "speed": 0.5, "heading": 0})");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }
}

TEST_CASE("heading 3pi/2 is normalized without a violation") {
  const auto text = scenario_json(R"({"id": 1, "x": 0, "y": 0, "speed": 1}, {"id": 2, "x": 0, "y": 1, "speed": 1})",
                                  R"({"id": 1, "x": 5, "y": 0, "speed": 0.5, "heading": 4.71238898038469})");
  const Scenario s = parse_scenario(text);
  CHECK(s.evaders[0].heading == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(validate(s).empty());
}

TEST_CASE("each invariant violated on its own gives exactly one violation") {
  REQUIRE(validate(two_on_one()).empty());

  struct Case {
    const char* name;
    void (*mutate)(Scenario&);
    const char* text;
  };
  const Case cases[] = {
      {"non-finite pursuer", [](Scenario& s) { s.pursuers[0].position.x = std::nan(""); }, "pursuers[0].position"},
      {"non-finite evader", [](Scenario& s) { s.evaders[0].position.y = INFINITY; }, "evaders[0].position"},
      {"pursuer speed", [](Scenario& s) { s.pursuers[1].speed = 0.0; }, "pursuers[1].speed"},
      {"evader speed", [](Scenario& s) { s.evaders[0].speed = -0.5; }, "evaders[0].speed"},
      {"heading range", [](Scenario& s) { s.evaders[0].heading = 4.0; }, "evaders[0].heading"},
      {"region x", [](Scenario& s) { s.region.x_max = s.region.x_min; }, "x_min < x_max"},
      {"region y", [](Scenario& s) { s.region.y_min = 10.0; }, "y_min < y_max"},
      {"N >= M", [](Scenario& s) {
         s.evaders.push_back(s.evaders[0]);
         s.evaders.push_back(s.evaders[0]);
         s.evaders.push_back(s.evaders[0]);
       },
       "N >= M violated"},
      {"mu < 1", [](Scenario& s) { s.evaders[0].speed = 1.0; }, "speed ratio mu >= 1"},
      {"M_V >= 1", [](Scenario& s) { s.max_virtual_targets = 0; }, "must be >= 1"},
      {"M_V < N", [](Scenario& s) { s.max_virtual_targets = 3; }, "M_V < N"},
      {"turn weight", [](Scenario& s) { s.turn_weight = -1.0; }, "turn_weight"},
      {"no evaders", [](Scenario& s) { s.evaders.clear(); }, "at least one evader"},
  };
  for (const auto& c : cases) {
    const std::string name = c.name;
    CAPTURE(name);

    Scenario s = two_on_one();
    c.mutate(s);
    const auto v = validate(s);
    const std::string last = v.empty() ? "" : v.back();
    CAPTURE(last);
    CHECK(v.size() == 1);
    CHECK(mentions(v, c.text));
  }
}

TEST_CASE("M_V = N can be allowed explicitly") {
  Scenario s = two_on_one();
  s.max_virtual_targets = 3;
  CHECK(validate(s).size() == 1);
  s.allow_mv_ge_n = true;
  CHECK(validate(s).empty());
}

TEST_CASE("serialize and reload round-trips") {
  const Scenario a = load_scenario(VTS_DATA_DIR "/table1.json");
  const Scenario b = parse_scenario(serialize_scenario(a));
  REQUIRE(a.num_pursuers() == b.num_pursuers());
  REQUIRE(a.num_evaders() == b.num_evaders());
  for (std::size_t i = 0; i < a.num_pursuers(); ++i) {
    CHECK(a.pursuers[i].id == b.pursuers[i].id);
    CHECK(a.pursuers[i].position == b.pursuers[i].position);
    CHECK(a.pursuers[i].speed == b.pursuers[i].speed);
  }
  for (std::size_t j = 0; j < a.num_evaders(); ++j) {
    CHECK(a.evaders[j].id == b.evaders[j].id);
    CHECK(a.evaders[j].position == b.evaders[j].position);
    CHECK(a.evaders[j].speed == b.evaders[j].speed);
    CHECK(a.evaders[j].heading == b.evaders[j].heading);
  }
  CHECK(a.region.x_min == b.region.x_min);
  CHECK(a.region.y_max == b.region.y_max);
  CHECK(a.max_virtual_targets == b.max_virtual_targets);
  CHECK(a.turn_weight == b.turn_weight);
  CHECK(a.allow_mv_ge_n == b.allow_mv_ge_n);
  CHECK(serialize_scenario(a) == serialize_scenario(b));
}
