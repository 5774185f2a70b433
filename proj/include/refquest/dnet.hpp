#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refquest/belief.hpp"
#include "refquest/minset.hpp"
#include "refquest/world.hpp"

namespace refquest {

enum class QuestionKind { wh, yn };

/// An action of the decision node. WH questions carry no value; YN questions
/// name the value they confirm. A YN question without a value is a template
/// whose value is bound when it is asked.
struct Question {
  QuestionKind kind = QuestionKind::wh;
  PropertyName property;
  std::optional<PropertyValue> value;
  std::string surface;

  /// "Query:Color" for WH, "Confirm:Color" for YN.
  std::string type_name() const;

  bool operator==(const Question&) const = default;
};

Question make_wh_question(std::string_view property);
Question make_yn_question(std::string_view property, std::optional<std::string_view> value = std::nullopt);
std::string question_type_name(QuestionKind kind, std::string_view property);

struct QuestionType {
  std::string name;
  QuestionKind kind;
  PropertyName property;
};

/// The twelve question types of the decision node: nine feature and location
/// queries plus three confirmations.
const std::vector<QuestionType>& question_catalog();

/// Properties that get a YN question in addition to their WH question.
struct YnConfig {
  std::vector<PropertyName> properties{"color", "spatial", "landmark"};

  bool eligible(std::string_view property) const;
  static YnConfig none() { return YnConfig{{}}; }
};

/// Question-type frequencies, normalized so the entries sum to 100.
class FrequencyTable {
 public:
  FrequencyTable() = default;

  /// Non-negative raw weights, rescaled to sum to 100.
  static FrequencyTable from_weights(const std::map<std::string, double>& weights);
  /// Values used as given (already on the 0..100 scale).
  static FrequencyTable from_normalized(std::map<std::string, double> values);

  std::optional<double> find(std::string_view type_name) const;
  /// Throws MissingFrequency.
  double at(std::string_view type_name) const;
  const std::map<std::string, double, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, double, std::less<>> entries_;
};

/// Parses {"frequencies": {type: weight, ...}} and normalizes it.
FrequencyTable load_frequency_table(std::string_view text);
/// The shipped table (worlds/question_frequencies.json).
const FrequencyTable& default_frequency_table();

enum class UtilityMode { entropy, data };

struct UtilityPolicy {
  UtilityMode mode = UtilityMode::entropy;
  FrequencyTable frequencies;  // consulted in data mode only

  static UtilityPolicy entropy() { return {}; }
  static UtilityPolicy data(FrequencyTable table = default_frequency_table()) {
    return {UtilityMode::data, std::move(table)};
  }
};

struct UtilityEntry {
  Question question;
  double utility = 0.0;
};

struct UtilityTable {
  std::vector<UtilityEntry> entries;

  /// Throws std::out_of_range when the question has no entry.
  double at(const Question& question) const;
};

// Shannon entropy utilities, in bits.

/// Binary entropy H(p) = -p log p - (1-p) log (1-p), with 0 log 0 = 0.
double binary_entropy(double p);
/// -sum p log p over the non-zero probabilities.
double wh_entropy(std::span<const double> probs);
double wh_entropy(const PropertyDistribution& dist);
/// sum_i p_i * H(p_i): expected entropy of confirming each value.
double yn_expected_entropy(std::span<const double> probs);
double yn_expected_entropy(const PropertyDistribution& dist);

/// WH questions score wh_entropy, YN questions yn_expected_entropy, both over
/// the candidates' distribution for the question's property.
UtilityTable entropy_utilities(const Belief& belief, std::span<const Question> questions);

/// Each question about a property that is still unknown (non-zero entropy
/// among candidates) gets its type's frequency; known properties get 0.
/// Throws MissingFrequency for a question type absent from the table.
UtilityTable data_driven_utilities(const FrequencyTable& table, const Belief& belief,
                                   std::span<const Question> questions);

/// Chance node for the verbal instruction. It is always observed; the uniform
/// prior over the instruction vocabulary is kept for inspection only.
struct InstructionNode {
  std::string observed;
  std::map<std::string, double> prior;
};

/// Chance node over the possible referents; uniform over the candidates.
struct ReferentNode {
  std::vector<std::string> candidates;
  double probability_each = 0.0;
};

/// Snapshot of the decision network for one turn.
struct DecisionNetwork {
  InstructionNode instruction;
  ReferentNode referents;
  std::vector<PropertyDistribution> property_nodes;  // one per schema property
  MinSet active;                                     // minimum disambiguating set
  std::vector<Question> questions;                   // decision node
  UtilityTable utilities;                            // utility node
  UtilityMode mode = UtilityMode::entropy;
};

/// Every question an agent could ask in `schema`: one WH per property, then a
/// YN template for eligible properties, in schema order.
std::vector<Question> full_question_list(const PropertySchema& schema, const YnConfig& yn = {});

/// Constructs the network for the belief's current candidates: the active
/// property set is their minimum disambiguating set, each active property
/// gets a WH question (and a YN question bound to the modal value when
/// eligible), and the utility table follows the policy.
DecisionNetwork build_network(const Belief& belief, const UtilityPolicy& policy, const YnConfig& yn = {},
                              std::size_t exact_limit = kDefaultExactLimit);

/// Sum over chance-node states of P(s|e) U(a,s). The utility node already
/// conditions on the belief's distributions, so this is the table entry.
double expected_utility(const DecisionNetwork& net, std::size_t question_index);

/// Maximum-expected-utility question. Ties keep question-list order (schema
/// property order, WH before YN). Throws NoInformativeQuestion when the list
/// is empty or every utility is 0 while the referent is still ambiguous.
Question select_question(const DecisionNetwork& net, const Belief& belief);

}  // namespace refquest
