#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "refquest/world.hpp"

namespace refquest {

/// A clause lists the schema indices (ascending) of properties on which one
/// entity pair differs. Any disambiguating property set must intersect it.
using Clause = std::vector<std::size_t>;

struct ClauseSet {
  std::vector<Clause> clauses;

  /// Ascending, duplicate-free indices of every property in some clause.
  std::vector<std::size_t> universe() const;
};

/// Minimum disambiguating property set, as ascending schema indices.
struct MinSet {
  std::vector<std::size_t> properties;
  bool exact = true;  // false when the greedy approximation was used

  bool contains(std::size_t property) const;
  std::vector<PropertyName> names(const PropertySchema& schema) const;
  std::size_t size() const noexcept { return properties.size(); }
};

inline constexpr std::size_t kDefaultExactLimit = 16;

/// One clause per unordered pair, in pair order (i < j). Throws
/// IndistinguishablePair for a pair with identical assignments.
ClauseSet pairwise_clauses(std::span<const Entity> entities, const PropertySchema& schema);
ClauseSet pairwise_clauses(const World& world, std::span<const std::size_t> members);

/// Minimum-cardinality hitting set when the clause universe has at most
/// `exact_limit` properties (cardinality-ordered exhaustive search), greedy
/// set cover otherwise. Ties go to the lexicographically first subset in
/// schema order.
MinSet solve_min_hitting_set(const ClauseSet& clauses, std::size_t exact_limit = kDefaultExactLimit);

MinSet compute_min_set(std::span<const Entity> entities, const PropertySchema& schema,
                       std::size_t exact_limit = kDefaultExactLimit);
MinSet compute_min_set(const World& world, std::span<const std::size_t> members,
                       std::size_t exact_limit = kDefaultExactLimit);

/// True when `set` intersects every clause.
bool hits_all(const ClauseSet& clauses, std::span<const std::size_t> set);

}  // namespace refquest
