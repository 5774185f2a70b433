#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refquest/world.hpp"

namespace refquest {

/// Value distribution of one property over the surviving candidates.
/// `probs` is aligned with the property's schema domain; values absent from
/// every candidate carry probability 0.
struct PropertyDistribution {
  PropertyName property;
  std::vector<PropertyValue> values;
  std::vector<double> probs;

  double prob(std::string_view value) const;
  /// Number of values with non-zero probability.
  std::size_t support() const;
};

/// Evidence state of one episode. Immutable: updates return new values.
///
/// The posterior over referents is uniform over `candidates()` (hard
/// filtering), which is exact Bayesian updating from a uniform prior when
/// answers are truthful.
class Belief {
 public:
  Belief(std::shared_ptr<const World> world, std::string instruction_label, std::vector<std::size_t> candidates);

  const World& world() const noexcept { return *world_; }
  const std::shared_ptr<const World>& world_ptr() const noexcept { return world_; }
  const std::string& instruction_label() const noexcept { return label_; }
  /// Entity indices into world().entities, in world order.
  const std::vector<std::size_t>& candidates() const noexcept { return candidates_; }
  std::size_t size() const noexcept { return candidates_.size(); }
  std::vector<std::string> candidate_ids() const;

 private:
  std::shared_ptr<const World> world_;
  std::string label_;
  std::vector<std::size_t> candidates_;
};

/// Candidates are every entity carrying `instruction_label`.
/// Throws UnknownReferent when none does.
Belief init_belief(std::shared_ptr<const World> world, std::string_view instruction_label);

/// Throws std::out_of_range for a property outside the schema.
PropertyDistribution distribution(const Belief& belief, std::string_view property);
PropertyDistribution distribution(const Belief& belief, std::size_t property_index);

/// Keeps candidates whose value for `property` equals `value`.
/// Throws ContradictoryAnswer if none remain, std::invalid_argument if the
/// value is outside the property's domain.
Belief apply_wh_answer(const Belief& belief, std::string_view property, std::string_view value);

/// yes keeps candidates with the value, no removes them.
Belief apply_yn_answer(const Belief& belief, std::string_view property, std::string_view value, bool yes);

std::optional<std::string> resolved(const Belief& belief);

}  // namespace refquest
