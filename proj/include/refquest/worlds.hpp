#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "refquest/world.hpp"

namespace refquest {

/// Parameters of a randomly generated task world.
///
/// `n_varying` properties are sampled independently per entity; the rest hold
/// one shared value. Entities are labelled in groups of `group_size`, and an
/// instruction naming a group's label is ambiguous across that group.
struct RandomWorldSpec {
  std::size_t n_entities = 20;
  std::size_t n_properties = 7;
  std::size_t n_varying = 3;
  std::size_t values_per_property = 4;
  std::size_t group_size = 7;
  std::uint64_t seed = 0;

  static RandomWorldSpec low_variance(std::uint64_t seed = 0);
  static RandomWorldSpec high_variance(std::uint64_t seed = 0);

  /// Empty when the spec is feasible; otherwise the reasons it is not.
  std::vector<std::string> problems() const;
};

/// Property names used by generated worlds, in order. Past the end of the
/// pool names are synthesized as "property_<k>".
std::string random_property_name(std::size_t index);

/// Deterministic given spec.seed. Throws InfeasibleSpec when the spec cannot
/// produce pairwise-distinct entities.
World generate_random_world(const RandomWorldSpec& spec);

/// The shipped spacecraft tool world: 6 tool types x 3 instances, 6 features.
const World& spacecraft_world();
std::shared_ptr<const World> spacecraft_world_ptr();

/// Indices of properties whose value differs somewhere across the world.
std::vector<std::size_t> varying_properties(const World& world);

}  // namespace refquest
