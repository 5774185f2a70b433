#include <doctest.h>

#include <cmath>
#include <map>

#include "refquest/dnet.hpp"
#include "refquest/errors.hpp"
#include "refquest/worlds.hpp"
#include "support.hpp"

using namespace refquest;
using refquest::test::make_world;
using refquest::test::share;

// Frozen reference values, computed independently in double precision:
//   -(2/3)log2(2/3) - (1/3)log2(1/3)                = 0.9182958340544896
//   H_bin(0.25) = -0.25 log2 0.25 - 0.75 log2 0.75   = 0.8112781244591328
//   4 * 0.25 * H_bin(0.25)                           = 0.8112781244591328
constexpr double kH_2_1 = 0.9182958340544896;
constexpr double kHbinQuarter = 0.8112781244591328;

TEST_CASE("wh_entropy") {
  std::vector<double> uniform4{0.25, 0.25, 0.25, 0.25};
  CHECK(wh_entropy(uniform4) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(wh_entropy(std::vector<double>{1.0}) == 0.0);
  CHECK(std::abs(wh_entropy(std::vector<double>{2.0 / 3.0, 1.0 / 3.0}) - kH_2_1) < 1e-9);
  CHECK(std::abs(wh_entropy(std::vector<double>{0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0}) - kH_2_1) < 1e-9);
}

TEST_CASE("yn_expected_entropy") {
  CHECK(std::abs(yn_expected_entropy(std::vector<double>{0.5, 0.5}) - 1.0) < 1e-9);
  CHECK(std::abs(binary_entropy(0.25) - kHbinQuarter) < 1e-9);
  CHECK(std::abs(yn_expected_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) - kHbinQuarter) < 1e-9);
  CHECK(yn_expected_entropy(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("entropy properties over random distributions") {
  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    auto p = refquest::test::random_distribution(rng, 1 + rng.index(8));
    double wh = wh_entropy(p);
    double yn = yn_expected_entropy(p);
    std::size_t support = 0;
    for (double x : p) support += x > 0.0;
    CHECK(yn <= wh + 1e-12);
    CHECK(wh >= 0.0);
    CHECK(wh <= std::log2(static_cast<double>(support)) + 1e-12);
    CHECK(((wh == 0.0) == (support == 1)));
    CHECK(((yn == 0.0) == (support == 1)));
  }
}

TEST_CASE("question naming and catalog") {
  CHECK(make_wh_question("color").type_name() == "Query:Color");
  CHECK(make_wh_question("color").surface == "What color is it?");
  auto yn = make_yn_question("color", "red");
  CHECK(yn.type_name() == "Confirm:Color");
  CHECK(yn.surface == "Is it red?");

  const auto& catalog = question_catalog();
  CHECK(catalog.size() == 12);
  std::size_t wh = 0, yn_count = 0;
  for (const auto& t : catalog) (t.kind == QuestionKind::wh ? wh : yn_count)++;
  CHECK(wh == 9);
  CHECK(yn_count == 3);
  for (const char* name : {"Confirm:Color", "Confirm:Spatial", "Confirm:Landmark"}) {
    bool found = false;
    for (const auto& t : catalog) found = found || t.name == name;
    CHECK_MESSAGE(found, name);
  }
  // The shipped frequency table covers every catalog type.
  for (const auto& t : catalog) CHECK(default_frequency_table().find(t.name).has_value());
}

TEST_CASE("frequency tables") {
  auto t = FrequencyTable::from_weights({{"Query:Color", 3}, {"Query:Shape", 1}});
  CHECK(t.at("Query:Color") == doctest::Approx(75.0));
  CHECK(t.at("Query:Shape") == doctest::Approx(25.0));
  CHECK_THROWS_AS(t.at("Query:Size"), MissingFrequency);

  const auto& d = default_frequency_table();
  double total = 0.0;
  for (const auto& [name, v] : d.entries()) {
    total += v;
    if (name != "Query:Color") CHECK(v < d.at("Query:Color"));
  }
  CHECK(total == doctest::Approx(100.0));

  CHECK_THROWS_AS(load_frequency_table("{\"frequencies\": {\"Query:Color\": -1}}"), ParseError);
  CHECK_THROWS_AS(load_frequency_table("[1,2]"), ParseError);
}

TEST_CASE("data_driven_utilities") {
  // Shape unknown among the candidates (tall vs short), color known (red).
  auto world = share(make_world({"color", "shape", "size"},
                                {{{"color", "red"}, {"shape", "tall"}, {"size", "big"}},
                                 {{"color", "red"}, {"shape", "short"}, {"size", "small"}}}));
  auto belief = init_belief(world, "thing");
  auto table = FrequencyTable::from_normalized({{"Query:Shape", 20}, {"Query:Color", 35}});
  std::vector<Question> qs{make_wh_question("shape"), make_wh_question("color")};
  auto u = data_driven_utilities(table, belief, qs);
  CHECK(u.at(qs[0]) == 20.0);
  CHECK(u.at(qs[1]) == 0.0);

  auto known = apply_wh_answer(belief, "shape", "tall");
  CHECK(data_driven_utilities(table, known, qs).at(qs[0]) == 0.0);

  std::vector<Question> with_size{make_wh_question("size")};
  CHECK_THROWS_AS(data_driven_utilities(table, belief, with_size), MissingFrequency);
}

TEST_CASE("build_network on the spacecraft emitters") {
  auto world = spacecraft_world_ptr();
  auto belief = init_belief(world, "temporal emitter");
  auto net = build_network(belief, UtilityPolicy::entropy());

  // Emitters vary on color, texture and symbol; any two of them separate all three.
  CHECK(net.active.size() == 2);
  std::size_t wh = 0;
  for (const auto& q : net.questions) {
    if (q.kind == QuestionKind::wh) ++wh;
  }
  CHECK(wh == net.active.size());
  for (const auto& e : net.utilities.entries) {
    bool varying = e.question.property == "color" || e.question.property == "texture" ||
                   e.question.property == "symbol";
    CHECK(varying);
    CHECK(e.utility > 0.0);
  }
  // Chance nodes.
  CHECK(net.referents.candidates.size() == 3);
  CHECK(net.referents.probability_each == doctest::Approx(1.0 / 3.0));
  CHECK(net.property_nodes.size() == 6);
  CHECK(net.instruction.observed == "temporal emitter");
  CHECK(net.instruction.prior.size() == 6);

  // Every property is active when the full world is the candidate set, which
  // instantiates the catalog types present in this schema.
  std::vector<std::size_t> all(world->entities.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Belief everything(world, "any tool", all);
  auto full = build_network(everything, UtilityPolicy::entropy());
  CHECK(full.active.size() >= 3);
  for (const auto& q : full.questions) {
    if (q.kind == QuestionKind::yn) CHECK(q.property == "color");
  }
}

TEST_CASE("build_network with one candidate is empty") {
  auto belief = apply_wh_answer(init_belief(spacecraft_world_ptr(), "temporal emitter"), "color", "blue");
  auto net = build_network(belief, UtilityPolicy::entropy());
  CHECK(net.active.size() == 0);
  CHECK(net.questions.empty());
  CHECK_THROWS_AS(select_question(net, belief), NoInformativeQuestion);
}

TEST_CASE("twelve-type configuration instantiates 9 WH and 3 YN when every property exists") {
  std::vector<std::string> props{"color", "shape", "size", "texture", "symbol", "pattern", "spatial", "landmark",
                                 "container"};
  // A base row plus nine entities, entity i differing from it only on property i.
  std::vector<refquest::test::Row> rows(1);
  for (const auto& p : props) rows[0][p] = "a";
  for (std::size_t i = 0; i < props.size(); ++i) {
    refquest::test::Row r;
    for (std::size_t p = 0; p < props.size(); ++p) r[props[p]] = p == i ? "b" : "a";
    rows.push_back(r);
  }
  auto world = share(make_world(props, rows));
  auto net = build_network(init_belief(world, "thing"), UtilityPolicy::entropy());
  std::size_t wh = 0, yn = 0;
  for (const auto& q : net.questions) (q.kind == QuestionKind::wh ? wh : yn)++;
  CHECK(wh == 9);
  CHECK(yn == 3);
}

TEST_CASE("select_question") {
  SUBCASE("two candidates differing only in color") {
    auto world = share(make_world({"color", "shape"}, {{{"color", "red"}, {"shape", "tall"}},
                                                       {{"color", "blue"}, {"shape", "tall"}}}));
    auto b = init_belief(world, "thing");
    auto q = select_question(build_network(b, UtilityPolicy::entropy()), b);
    CHECK(q.kind == QuestionKind::wh);
    CHECK(q.property == "color");
  }
  SUBCASE("argmax picks the higher-entropy property") {
    // color: 3 distinct values (1.58 bits); shape: 2+1 split (0.92 bits).
    // Shape comes first in the schema so order alone would pick it.
    auto world = share(make_world({"shape", "color"}, {{{"color", "red"}, {"shape", "tall"}},
                                                       {{"color", "blue"}, {"shape", "tall"}},
                                                       {{"color", "green"}, {"shape", "short"}}}));
    auto b = init_belief(world, "thing");
    auto net = build_network(b, UtilityPolicy::entropy(), YnConfig::none());
    // Minimum set is {color}: shape never enters the decision node.
    CHECK(select_question(net, b).property == "color");

    // Hand-built network where both are active.
    DecisionNetwork manual;
    manual.questions = {make_wh_question("shape"), make_wh_question("color")};
    manual.utilities.entries = {{manual.questions[0], 0.92}, {manual.questions[1], 1.58}};
    CHECK(select_question(manual, b).property == "color");
  }
  SUBCASE("all-zero utilities raise NoInformativeQuestion") {
    auto world = share(make_world({"color"}, {{{"color", "red"}}, {{"color", "blue"}}}));
    auto b = init_belief(world, "thing");
    auto zero = FrequencyTable::from_normalized({{"Query:Color", 0}, {"Confirm:Color", 0}});
    auto net = build_network(b, UtilityPolicy::data(zero));
    CHECK_THROWS_AS(select_question(net, b), NoInformativeQuestion);
  }
  SUBCASE("YN questions confirm the modal value, ties by value order") {
    auto world = share(make_world({"color", "size"}, {{{"color", "blue"}, {"size", "small"}},
                                                      {{"color", "red"}, {"size", "small"}},
                                                      {{"color", "red"}, {"size", "large"}}}));
    auto net = build_network(init_belief(world, "thing"), UtilityPolicy::entropy());
    REQUIRE(net.questions.size() == 3);
    CHECK(net.questions[1].kind == QuestionKind::yn);
    CHECK(net.questions[1].value == "red");

    auto tie = share(make_world({"color"}, {{{"color", "blue"}}, {{"color", "red"}}}));
    auto tie_net = build_network(init_belief(tie, "thing"), UtilityPolicy::entropy());
    CHECK(tie_net.questions[1].value == "blue");
  }
}

TEST_CASE("argmax is invariant to log base and frequency scale") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    auto world = share(refquest::test::random_small_world(rng, 6, 5));
    if (world->entities.size() < 2) continue;
    auto b = init_belief(world, "thing");
    auto net = build_network(b, UtilityPolicy::entropy());

    // Natural-log utilities: scale every entry by ln 2.
    DecisionNetwork nats = net;
    for (auto& e : nats.utilities.entries) e.utility *= std::log(2.0);
    CHECK(select_question(nats, b) == select_question(net, b));

    std::map<std::string, double> weights;
    for (const auto& t : question_catalog()) weights[t.name] = 1.0 + static_cast<double>(rng.index(10));
    for (std::size_t p = 0; p < world->schema.size(); ++p) {
      weights["Query:" + std::string(1, 'P') + std::to_string(p)] = 1.0 + static_cast<double>(rng.index(10));
    }
    std::map<std::string, double> scaled;
    for (auto& [k, v] : weights) scaled[k] = v * 7.5;
    auto a = build_network(b, UtilityPolicy::data(FrequencyTable::from_normalized(weights)));
    auto c = build_network(b, UtilityPolicy::data(FrequencyTable::from_normalized(scaled)));
    CHECK(select_question(a, b) == select_question(c, b));
  }
}

TEST_CASE("rebuilding after answers never grows the active set") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto world = share(refquest::test::random_small_world(rng, 6, 5));
    const auto& target = world->entities[rng.index(world->entities.size())];
    auto b = init_belief(world, "thing");
    std::size_t previous = build_network(b, UtilityPolicy::entropy()).active.size();
    while (!resolved(b)) {
      auto net = build_network(b, UtilityPolicy::entropy());
      CHECK(net.active.size() <= previous);
      previous = net.active.size();
      auto q = select_question(net, b);
      CHECK(select_question(net, b) == q);  // deterministic
      b = apply_wh_answer(b, q.property, target.value(q.property));
    }
  }
}
