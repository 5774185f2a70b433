#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "refquest/belief.hpp"
#include "refquest/dnet.hpp"
#include "refquest/rng.hpp"
#include "refquest/world.hpp"

namespace refquest {

struct Answer {
  QuestionKind kind = QuestionKind::wh;
  PropertyValue value;  // WH answers
  bool yes = false;     // YN answers

  std::string text() const;
  bool operator==(const Answer&) const = default;
};

/// Ground-truth readout: WH gives the target's value, YN says whether the
/// target has the asked value.
Answer oracle_answer(const World& world, const Entity& target, const Question& question);

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Answer answer(const Question& question) = 0;
};

class SimulatedOracle final : public Oracle {
 public:
  /// Throws UnknownReferent if the target is not in the world.
  SimulatedOracle(std::shared_ptr<const World> world, std::string target_id);

  Answer answer(const Question& question) override;
  const std::string& target() const noexcept { return target_; }

 private:
  std::shared_ptr<const World> world_;
  std::string target_;
};

/// Asks a person at a terminal. Prints one question per line and reads
/// `yes`/`no` (or `y`/`n`) for YN questions and a domain value for WH
/// questions, re-prompting on anything else.
class HumanOracle final : public Oracle {
 public:
  HumanOracle(std::istream& in, std::ostream& out, const PropertySchema& schema);

  Answer answer(const Question& question) override;

 private:
  std::istream& in_;
  std::ostream& out_;
  const PropertySchema& schema_;
  std::size_t asked_ = 0;
};

struct ModelAgent {
  UtilityPolicy policy;
};

struct BaselineAgent {
  std::uint64_t seed = 0;
};

using AgentPolicy = std::variant<ModelAgent, BaselineAgent>;

/// What the slot-filling baseline has learned so far. A property is known
/// after a WH answer, a YN "yes", or once YN "no" answers have ruled out all
/// but one value of its domain.
class BaselineKnowledge {
 public:
  explicit BaselineKnowledge(const PropertySchema& schema) : schema_(&schema) {}

  void record(const Question& question, const Answer& answer);
  bool known(std::string_view property) const { return known_.count(std::string(property)) > 0; }
  const std::set<PropertyName>& known_set() const noexcept { return known_; }

 private:
  const PropertySchema* schema_;
  std::set<PropertyName> known_;
  std::map<PropertyName, std::set<PropertyValue>> eliminated_;
};

/// Uniform choice among questions whose property is not yet known. A chosen
/// YN template is bound to a uniformly random value present among the
/// candidates. Throws NoInformativeQuestion when nothing is eligible.
Question baseline_choose(const Belief& belief, const std::set<PropertyName>& known,
                         std::span<const Question> questions, Rng& rng);

struct EpisodeOptions {
  std::size_t max_questions = 50;
  YnConfig yn;
  std::size_t exact_limit = kDefaultExactLimit;
};

struct Turn {
  Question question;
  Answer answer;
  std::size_t candidates_after = 0;
};

struct EpisodeRecord {
  std::string instruction_label;
  std::string target_id;  // empty when a human answered
  std::string resolved_id;
  std::vector<Turn> transcript;
  std::size_t question_count = 0;
  std::size_t initial_candidates = 0;
  std::size_t initial_min_set = 0;  // minimum disambiguating set size at the start

  std::size_t count(QuestionKind kind) const;
};

/// Runs the ask-answer-filter loop against a simulated oracle for `target_id`.
/// Throws UnknownReferent, BudgetExceeded, or std::invalid_argument when
/// max_questions is below the number of schema properties.
EpisodeRecord run_episode(const std::shared_ptr<const World>& world, std::string_view target_id,
                          const AgentPolicy& agent, const EpisodeOptions& options = {});

/// Same loop against any oracle, starting from an instruction label.
EpisodeRecord run_episode(const std::shared_ptr<const World>& world, std::string_view instruction_label,
                          Oracle& oracle, const AgentPolicy& agent, const EpisodeOptions& options = {});

std::string agent_name(const AgentPolicy& agent);

/// Human-readable transcript, one line per turn.
std::string format_transcript(const EpisodeRecord& record);
/// Structured (JSON) transcript.
std::string episode_json(const EpisodeRecord& record);

}  // namespace refquest
