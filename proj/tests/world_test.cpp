#include <doctest.h>

#include <algorithm>

#include "refquest/errors.hpp"
#include "refquest/world.hpp"
#include "refquest/worlds.hpp"
#include "support.hpp"

using namespace refquest;
using refquest::test::make_world;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate_world flags identical assignments with both ids") {
  auto w = make_world({"color", "shape"}, {{{"color", "red"}, {"shape", "tall"}}, {{"color", "red"}, {"shape", "tall"}}});
  auto v = validate_world(w);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("e1") != std::string::npos);
  CHECK(v[0].find("e2") != std::string::npos);
}

TEST_CASE("validate_world reports an incomplete assignment") {
  auto w = make_world({"color", "shape"}, {{{"color", "red"}, {"shape", "tall"}}, {{"color", "blue"}}});
  auto v = validate_world(w);
  CHECK(mentions(v, "incomplete assignment"));
  CHECK(mentions(v, "shape"));
}

TEST_CASE("validate_world catches schema and id problems") {
  World w{PropertySchema({{"color", {"red", "red"}}, {"color", {}}}), {}};
  auto v = validate_world(w);
  CHECK(mentions(v, "duplicate property 'color'"));
  CHECK(mentions(v, "empty domain"));
  CHECK(mentions(v, "twice"));
  CHECK(mentions(v, "no entities"));

  auto dup = make_world({"color"}, {{{"color", "red"}}, {{"color", "blue"}}});
  dup.entities[1].id = "e1";
  CHECK(mentions(validate_world(dup), "duplicate entity id 'e1'"));
}

TEST_CASE("spacecraft world validates with 18 tools and 6 properties") {
  const World& w = spacecraft_world();
  CHECK(validate_world(w).empty());
  CHECK(w.entities.size() == 18);
  CHECK(w.schema.size() == 6);
}

TEST_CASE("load_world errors") {
  SUBCASE("malformed text carries position context") {
    try {
      load_world("{\n  \"schema\": [\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
  SUBCASE("missing key names the path") {
    try {
      load_world(R"({"schema": [{"name": "color"}], "entities": []})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("schema[0]") != std::string::npos);
      CHECK(std::string(e.what()).find("values") != std::string::npos);
    }
  }
  SUBCASE("empty entity list is a validation error") {
    CHECK_THROWS_AS(load_world(R"({"schema": [{"name": "color", "values": ["red"]}], "entities": []})"),
                    ValidationError);
  }
  SUBCASE("unknown property value names the property") {
    const char* text = R"({"schema": [{"name": "color", "values": ["red", "blue"]}],
      "entities": [{"id": "a", "label": "x", "type": "t", "assignment": {"color": "mauve"}}]})";
    try {
      load_world(text);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0].find("color") != std::string::npos);
      CHECK(e.violations()[0].find("mauve") != std::string::npos);
    }
  }
}

TEST_CASE("serialize_world round-trips") {
  const World& w = spacecraft_world();
  auto text = serialize_world(w);
  CHECK(load_world(text) == w);
  CHECK(serialize_world(load_world(text)) == text);

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto r = refquest::test::random_small_world(rng);
    CHECK(load_world(serialize_world(r)) == r);
  }
}

TEST_CASE("valid worlds are pairwise distinguishable") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto w = refquest::test::random_small_world(rng);
    REQUIRE(validate_world(w).empty());
    for (std::size_t a = 0; a < w.entities.size(); ++a) {
      for (std::size_t b = a + 1; b < w.entities.size(); ++b) {
        CHECK(w.entities[a].assignment != w.entities[b].assignment);
      }
    }
  }
}
