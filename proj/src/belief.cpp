#include "refquest/belief.hpp"

#include <algorithm>
#include <stdexcept>

#include "refquest/errors.hpp"

namespace refquest {

double PropertyDistribution::prob(std::string_view value) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return probs[i];
  }
  return 0.0;
}

std::size_t PropertyDistribution::support() const {
  return static_cast<std::size_t>(std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; }));
}

Belief::Belief(std::shared_ptr<const World> world, std::string instruction_label, std::vector<std::size_t> candidates)
    : world_(std::move(world)), label_(std::move(instruction_label)), candidates_(std::move(candidates)) {
  if (!world_) throw std::invalid_argument("belief needs a world");
}

std::vector<std::string> Belief::candidate_ids() const {
  std::vector<std::string> ids;
  ids.reserve(candidates_.size());
  for (auto c : candidates_) ids.push_back(world_->entities[c].id);
  return ids;
}

Belief init_belief(std::shared_ptr<const World> world, std::string_view instruction_label) {
  if (!world) throw std::invalid_argument("init_belief: null world");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < world->entities.size(); ++i) {
    if (world->entities[i].label == instruction_label) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw UnknownReferent("unknown referent: no entity is labelled '" + std::string(instruction_label) + "'");
  }
  return Belief(std::move(world), std::string(instruction_label), std::move(candidates));
}

PropertyDistribution distribution(const Belief& belief, std::size_t property_index) {
  const auto& prop = belief.world().schema[property_index];
  PropertyDistribution d{prop.name, prop.values, std::vector<double>(prop.values.size(), 0.0)};
  if (belief.size() == 0) return d;
  std::vector<std::size_t> counts(prop.values.size(), 0);
  for (auto c : belief.candidates()) {
    const auto& v = belief.world().entities[c].value(prop.name);
    auto idx = belief.world().schema.value_index(property_index, v);
    if (idx) ++counts[*idx];
  }
  const double n = static_cast<double>(belief.size());
  for (std::size_t i = 0; i < counts.size(); ++i) d.probs[i] = static_cast<double>(counts[i]) / n;
  return d;
}

PropertyDistribution distribution(const Belief& belief, std::string_view property) {
  return distribution(belief, belief.world().schema.require(property));
}

namespace {

template <typename Keep>
Belief filter(const Belief& belief, std::string_view property, std::string_view value, Keep&& keep,
              const std::string& what) {
  const auto& schema = belief.world().schema;
  auto p = schema.require(property);
  if (!schema.value_index(p, value)) {
    throw std::invalid_argument("value '" + std::string(value) + "' is not in the domain of '" +
                                std::string(property) + "'");
  }
  std::vector<std::size_t> kept;
  for (auto c : belief.candidates()) {
    if (keep(belief.world().entities[c].value(property) == value)) kept.push_back(c);
  }
  if (kept.empty()) {
    throw ContradictoryAnswer("answer " + what + " eliminates every candidate for '" +
                              belief.instruction_label() + "'");
  }
  return Belief(belief.world_ptr(), belief.instruction_label(), std::move(kept));
}

}  // namespace

Belief apply_wh_answer(const Belief& belief, std::string_view property, std::string_view value) {
  return filter(
      belief, property, value, [](bool match) { return match; },
      std::string(property) + "=" + std::string(value));
}

Belief apply_yn_answer(const Belief& belief, std::string_view property, std::string_view value, bool yes) {
  return filter(
      belief, property, value, [yes](bool match) { return match == yes; },
      std::string(yes ? "yes" : "no") + " to " + std::string(property) + "=" + std::string(value));
}

std::optional<std::string> resolved(const Belief& belief) {
  if (belief.size() != 1) return std::nullopt;
  return belief.world().entities[belief.candidates().front()].id;
}

}  // namespace refquest
