#include "refquest/dnet.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "refquest/embedded_frequencies.hpp"
#include "refquest/errors.hpp"

namespace refquest {

namespace {

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

// Relative tolerance for utility ties; entropies of permuted distributions
// can differ in the last bit.
constexpr double kTieTolerance = 1e-12;

bool greater_than(double a, double b) { return a > b + kTieTolerance * std::max(1.0, std::abs(b)); }

}  // namespace

std::string question_type_name(QuestionKind kind, std::string_view property) {
  return (kind == QuestionKind::wh ? "Query:" : "Confirm:") + capitalized(property);
}

std::string Question::type_name() const { return question_type_name(kind, property); }

Question make_wh_question(std::string_view property) {
  Question q;
  q.kind = QuestionKind::wh;
  q.property = std::string(property);
  q.surface = "What " + q.property + " is it?";
  return q;
}

Question make_yn_question(std::string_view property, std::optional<std::string_view> value) {
  Question q;
  q.kind = QuestionKind::yn;
  q.property = std::string(property);
  if (value) {
    q.value = std::string(*value);
    q.surface = "Is it " + *q.value + "?";
  } else {
    q.surface = "Is it <" + q.property + ">?";
  }
  return q;
}

const std::vector<QuestionType>& question_catalog() {
  static const std::vector<QuestionType> catalog = [] {
    std::vector<QuestionType> out;
    for (const char* p : {"color", "shape", "size", "texture", "symbol", "pattern", "spatial", "landmark", "container"}) {
      out.push_back({question_type_name(QuestionKind::wh, p), QuestionKind::wh, p});
    }
    for (const char* p : {"color", "spatial", "landmark"}) {
      out.push_back({question_type_name(QuestionKind::yn, p), QuestionKind::yn, p});
    }
    return out;
  }();
  return catalog;
}

bool YnConfig::eligible(std::string_view property) const {
  return std::find(properties.begin(), properties.end(), property) != properties.end();
}

FrequencyTable FrequencyTable::from_weights(const std::map<std::string, double>& weights) {
  double total = 0.0;
  for (const auto& [name, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("frequency for '" + name + "' must be a non-negative number");
    }
    total += w;
  }
  FrequencyTable t;
  for (const auto& [name, w] : weights) t.entries_.emplace(name, total > 0.0 ? 100.0 * w / total : 0.0);
  return t;
}

FrequencyTable FrequencyTable::from_normalized(std::map<std::string, double> values) {
  FrequencyTable t;
  for (auto& [name, v] : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("frequency for '" + name + "' must be non-negative");
    t.entries_.emplace(name, v);
  }
  return t;
}

std::optional<double> FrequencyTable::find(std::string_view type_name) const {
  auto it = entries_.find(type_name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double FrequencyTable::at(std::string_view type_name) const {
  if (auto v = find(type_name)) return *v;
  throw MissingFrequency("no frequency for question type '" + std::string(type_name) + "'");
}

FrequencyTable load_frequency_table(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("frequency table: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("frequencies") || !doc["frequencies"].is_object()) {
    throw ParseError("frequency table: expected an object with a 'frequencies' mapping");
  }
  std::map<std::string, double> weights;
  for (const auto& [name, v] : doc["frequencies"].items()) {
    if (!v.is_number()) throw ParseError("frequencies." + name + ": expected a number");
    double w = v.get<double>();
    if (w < 0.0) throw ParseError("frequencies." + name + ": must be non-negative");
    weights.emplace(name, w);
  }
  return FrequencyTable::from_weights(weights);
}

const FrequencyTable& default_frequency_table() {
  static const FrequencyTable table = load_frequency_table(embedded::kQuestionFrequenciesJson);
  return table;
}

double UtilityTable::at(const Question& question) const {
  for (const auto& e : entries) {
    if (e.question == question) return e.utility;
  }
  throw std::out_of_range("no utility for question '" + question.type_name() + "'");
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0 && p < 1.0) h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double wh_entropy(std::span<const double> probs) {
  // Summing in sorted order makes permuted distributions score identically.
  std::vector<double> sorted(probs.begin(), probs.end());
  std::sort(sorted.begin(), sorted.end());
  double h = 0.0;
  for (double p : sorted) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double wh_entropy(const PropertyDistribution& dist) { return wh_entropy(dist.probs); }

double yn_expected_entropy(std::span<const double> probs) {
  std::vector<double> sorted(probs.begin(), probs.end());
  std::sort(sorted.begin(), sorted.end());
  double h = 0.0;
  for (double p : sorted) h += p * binary_entropy(p);
  return h;
}

double yn_expected_entropy(const PropertyDistribution& dist) { return yn_expected_entropy(dist.probs); }

UtilityTable entropy_utilities(const Belief& belief, std::span<const Question> questions) {
  UtilityTable table;
  for (const auto& q : questions) {
    auto dist = distribution(belief, q.property);
    double u = q.kind == QuestionKind::wh ? wh_entropy(dist) : yn_expected_entropy(dist);
    table.entries.push_back({q, u});
  }
  return table;
}

UtilityTable data_driven_utilities(const FrequencyTable& freq, const Belief& belief,
                                   std::span<const Question> questions) {
  UtilityTable table;
  for (const auto& q : questions) {
    double f = freq.at(q.type_name());
    bool unknown = distribution(belief, q.property).support() > 1;
    table.entries.push_back({q, unknown ? f : 0.0});
  }
  return table;
}

std::vector<Question> full_question_list(const PropertySchema& schema, const YnConfig& yn) {
  std::vector<Question> out;
  for (const auto& p : schema.properties()) {
    out.push_back(make_wh_question(p.name));
    if (yn.eligible(p.name)) out.push_back(make_yn_question(p.name));
  }
  return out;
}

namespace {

std::size_t modal_index(const PropertyDistribution& d) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.probs.size(); ++i) {
    if (d.probs[i] > d.probs[best]) best = i;
  }
  return best;
}

}  // namespace

DecisionNetwork build_network(const Belief& belief, const UtilityPolicy& policy, const YnConfig& yn,
                              std::size_t exact_limit) {
  const World& world = belief.world();
  DecisionNetwork net;
  net.mode = policy.mode;

  net.instruction.observed = belief.instruction_label();
  std::set<std::string> vocabulary;
  for (const auto& e : world.entities) vocabulary.insert(e.label);
  for (const auto& label : vocabulary) net.instruction.prior[label] = 1.0 / static_cast<double>(vocabulary.size());

  net.referents.candidates = belief.candidate_ids();
  net.referents.probability_each = belief.size() ? 1.0 / static_cast<double>(belief.size()) : 0.0;

  for (std::size_t p = 0; p < world.schema.size(); ++p) net.property_nodes.push_back(distribution(belief, p));

  net.active = compute_min_set(world, belief.candidates(), exact_limit);
  for (auto p : net.active.properties) {
    const auto& name = world.schema[p].name;
    net.questions.push_back(make_wh_question(name));
    if (yn.eligible(name)) {
      const auto& dist = net.property_nodes[p];
      net.questions.push_back(make_yn_question(name, dist.values[modal_index(dist)]));
    }
  }

  net.utilities = policy.mode == UtilityMode::entropy
                      ? entropy_utilities(belief, net.questions)
                      : data_driven_utilities(policy.frequencies, belief, net.questions);
  return net;
}

double expected_utility(const DecisionNetwork& net, std::size_t question_index) {
  return net.utilities.entries.at(question_index).utility;
}

Question select_question(const DecisionNetwork& net, const Belief& belief) {
  if (net.questions.empty()) {
    throw NoInformativeQuestion("decision network for '" + belief.instruction_label() + "' has no questions");
  }
  std::size_t best = 0;
  double best_u = expected_utility(net, 0);
  for (std::size_t i = 1; i < net.questions.size(); ++i) {
    double u = expected_utility(net, i);
    if (greater_than(u, best_u)) {
      best = i;
      best_u = u;
    }
  }
  if (best_u <= 0.0 && belief.size() > 1) {
    throw NoInformativeQuestion("every question has zero utility while " + std::to_string(belief.size()) +
                                " candidates remain for '" + belief.instruction_label() + "'");
  }
  return net.questions[best];
}

}  // namespace refquest
