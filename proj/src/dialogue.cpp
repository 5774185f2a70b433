#include "refquest/dialogue.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "refquest/errors.hpp"

namespace refquest {

std::string Answer::text() const {
  if (kind == QuestionKind::yn) return yes ? "yes" : "no";
  return value;
}

Answer oracle_answer(const World& world, const Entity& target, const Question& question) {
  world.schema.require(question.property);
  const auto& truth = target.value(question.property);
  Answer a;
  a.kind = question.kind;
  if (question.kind == QuestionKind::wh) {
    a.value = truth;
  } else {
    if (!question.value) throw std::invalid_argument("YN question without a value");
    a.yes = truth == *question.value;
  }
  return a;
}

SimulatedOracle::SimulatedOracle(std::shared_ptr<const World> world, std::string target_id)
    : world_(std::move(world)), target_(std::move(target_id)) {
  world_->entity(target_);
}

Answer SimulatedOracle::answer(const Question& question) {
  return oracle_answer(*world_, world_->entity(target_), question);
}

HumanOracle::HumanOracle(std::istream& in, std::ostream& out, const PropertySchema& schema)
    : in_(in), out_(out), schema_(schema) {}

namespace {

std::string trimmed_lower(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Answer HumanOracle::answer(const Question& question) {
  ++asked_;
  const auto& domain = schema_[schema_.require(question.property)].values;
  out_ << "Q" << asked_ << ": " << question.surface << "\n" << std::flush;
  std::string line;
  while (std::getline(in_, line)) {
    auto reply = trimmed_lower(line);
    Answer a;
    a.kind = question.kind;
    if (question.kind == QuestionKind::yn) {
      if (reply == "yes" || reply == "y") {
        a.yes = true;
        return a;
      }
      if (reply == "no" || reply == "n") return a;
      out_ << "Please answer yes or no.\n" << std::flush;
      continue;
    }
    for (const auto& v : domain) {
      if (trimmed_lower(v) == reply) {
        a.value = v;
        return a;
      }
    }
    out_ << "Please answer one of:";
    for (const auto& v : domain) out_ << ' ' << v;
    out_ << "\n" << std::flush;
  }
  throw Error("input closed before the question was answered");
}

void BaselineKnowledge::record(const Question& question, const Answer& answer) {
  if (question.kind == QuestionKind::wh || answer.yes) {
    known_.insert(question.property);
    return;
  }
  auto& gone = eliminated_[question.property];
  gone.insert(*question.value);
  const auto& domain = (*schema_)[schema_->require(question.property)].values;
  if (gone.size() + 1 >= domain.size()) known_.insert(question.property);
}

Question baseline_choose(const Belief& belief, const std::set<PropertyName>& known,
                         std::span<const Question> questions, Rng& rng) {
  std::vector<const Question*> eligible;
  for (const auto& q : questions) {
    if (!known.count(q.property)) eligible.push_back(&q);
  }
  if (eligible.empty()) {
    throw NoInformativeQuestion("baseline has no question about an unknown property");
  }
  Question q = *eligible[rng.index(eligible.size())];
  if (q.kind == QuestionKind::yn && !q.value) {
    auto dist = distribution(belief, q.property);
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
      if (dist.probs[i] > 0.0) present.push_back(i);
    }
    q = make_yn_question(q.property, dist.values[present[rng.index(present.size())]]);
  }
  return q;
}

std::size_t EpisodeRecord::count(QuestionKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(transcript.begin(), transcript.end(), [kind](const Turn& t) { return t.question.kind == kind; }));
}

namespace {

Belief apply_answer(const Belief& belief, const Question& q, const Answer& a) {
  if (q.kind == QuestionKind::wh) return apply_wh_answer(belief, q.property, a.value);
  return apply_yn_answer(belief, q.property, *q.value, a.yes);
}

}  // namespace

EpisodeRecord run_episode(const std::shared_ptr<const World>& world, std::string_view instruction_label,
                          Oracle& oracle, const AgentPolicy& agent, const EpisodeOptions& options) {
  if (options.max_questions < world->schema.size()) {
    throw std::invalid_argument("max_questions (" + std::to_string(options.max_questions) +
                                ") is below the number of properties (" + std::to_string(world->schema.size()) + ")");
  }
  Belief belief = init_belief(world, instruction_label);

  EpisodeRecord record;
  record.instruction_label = std::string(instruction_label);
  record.initial_candidates = belief.size();
  record.initial_min_set = compute_min_set(*world, belief.candidates(), options.exact_limit).size();

  const auto all_questions = full_question_list(world->schema, options.yn);
  BaselineKnowledge knowledge(world->schema);
  Rng rng(std::holds_alternative<BaselineAgent>(agent) ? std::get<BaselineAgent>(agent).seed : 0);

  while (!resolved(belief)) {
    if (record.transcript.size() >= options.max_questions) {
      throw BudgetExceeded(agent_name(agent) + " asked " + std::to_string(record.transcript.size()) +
                           " questions without resolving '" + record.instruction_label + "' (" +
                           std::to_string(belief.size()) + " candidates left)");
    }
    Question q;
    if (const auto* model = std::get_if<ModelAgent>(&agent)) {
      auto net = build_network(belief, model->policy, options.yn, options.exact_limit);
      q = select_question(net, belief);
    } else {
      q = baseline_choose(belief, knowledge.known_set(), all_questions, rng);
    }
    Answer a = oracle.answer(q);
    belief = apply_answer(belief, q, a);
    knowledge.record(q, a);
    record.transcript.push_back({std::move(q), std::move(a), belief.size()});
  }
  record.resolved_id = *resolved(belief);
  record.question_count = record.transcript.size();
  return record;
}

EpisodeRecord run_episode(const std::shared_ptr<const World>& world, std::string_view target_id,
                          const AgentPolicy& agent, const EpisodeOptions& options) {
  const Entity& target = world->entity(target_id);
  SimulatedOracle oracle(world, target.id);
  auto record = run_episode(world, target.label, oracle, agent, options);
  record.target_id = target.id;
  if (record.resolved_id != record.target_id) {
    throw std::logic_error("episode resolved '" + record.resolved_id + "' instead of '" + record.target_id + "'");
  }
  return record;
}

std::string agent_name(const AgentPolicy& agent) {
  if (const auto* m = std::get_if<ModelAgent>(&agent)) {
    return m->policy.mode == UtilityMode::entropy ? "model-entropy" : "model-data";
  }
  return "baseline";
}

std::string format_transcript(const EpisodeRecord& record) {
  std::ostringstream out;
  out << "instruction: " << record.instruction_label << " (" << record.initial_candidates << " candidates)\n";
  for (std::size_t i = 0; i < record.transcript.size(); ++i) {
    const auto& t = record.transcript[i];
    out << "Q" << (i + 1) << " [" << t.question.type_name() << "] " << t.question.surface << " -> "
        << t.answer.text() << "  (" << t.candidates_after << " left)\n";
  }
  out << "resolved: " << record.resolved_id << "\n";
  out << "questions: " << record.question_count << "\n";
  return out.str();
}

std::string episode_json(const EpisodeRecord& record) {
  using ordered = nlohmann::ordered_json;
  ordered turns = ordered::array();
  for (const auto& t : record.transcript) {
    ordered q = {{"type", t.question.type_name()},
                 {"kind", t.question.kind == QuestionKind::wh ? "wh" : "yn"},
                 {"property", t.question.property}};
    if (t.question.value) q["value"] = *t.question.value;
    q["surface"] = t.question.surface;
    turns.push_back({{"question", q}, {"answer", t.answer.text()}, {"candidates_after", t.candidates_after}});
  }
  ordered doc = {{"instruction", record.instruction_label},
                 {"target", record.target_id},
                 {"resolved", record.resolved_id},
                 {"initial_candidates", record.initial_candidates},
                 {"initial_min_set", record.initial_min_set},
                 {"question_count", record.question_count},
                 {"transcript", turns}};
  return doc.dump(2) + "\n";
}

}  // namespace refquest
