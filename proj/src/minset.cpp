#include "refquest/minset.hpp"

#include <algorithm>
#include <cstdint>

#include "refquest/errors.hpp"

namespace refquest {

std::vector<std::size_t> ClauseSet::universe() const {
  std::vector<std::size_t> out;
  for (const auto& c : clauses) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MinSet::contains(std::size_t property) const {
  return std::binary_search(properties.begin(), properties.end(), property);
}

std::vector<PropertyName> MinSet::names(const PropertySchema& schema) const {
  std::vector<PropertyName> out;
  out.reserve(properties.size());
  for (auto p : properties) out.push_back(schema[p].name);
  return out;
}

namespace {

template <typename ValueOf>
ClauseSet build_clauses(std::size_t n, const PropertySchema& schema, ValueOf&& value_of,
                        const std::vector<const Entity*>& members) {
  ClauseSet out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Clause clause;
      for (std::size_t p = 0; p < schema.size(); ++p) {
        if (value_of(i, p) != value_of(j, p)) clause.push_back(p);
      }
      if (clause.empty()) throw IndistinguishablePair(members[i]->id, members[j]->id);
      out.clauses.push_back(std::move(clause));
    }
  }
  return out;
}

ClauseSet clauses_for(const std::vector<const Entity*>& members, const PropertySchema& schema) {
  // Resolve every value once; string lookups dominate otherwise.
  const std::size_t n = members.size();
  std::vector<const PropertyValue*> table(n * schema.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < schema.size(); ++p) {
      table[i * schema.size() + p] = &members[i]->value(schema[p].name);
    }
  }
  auto value_of = [&](std::size_t i, std::size_t p) -> const PropertyValue& {
    return *table[i * schema.size() + p];
  };
  return build_clauses(n, schema, value_of, members);
}

}  // namespace

ClauseSet pairwise_clauses(std::span<const Entity> entities, const PropertySchema& schema) {
  std::vector<const Entity*> members;
  members.reserve(entities.size());
  for (const auto& e : entities) members.push_back(&e);
  return clauses_for(members, schema);
}

ClauseSet pairwise_clauses(const World& world, std::span<const std::size_t> members) {
  std::vector<const Entity*> ptrs;
  ptrs.reserve(members.size());
  for (auto m : members) ptrs.push_back(&world.entities.at(m));
  return clauses_for(ptrs, world.schema);
}

bool hits_all(const ClauseSet& clauses, std::span<const std::size_t> set) {
  for (const auto& clause : clauses.clauses) {
    bool hit = std::any_of(clause.begin(), clause.end(), [&](std::size_t p) {
      return std::find(set.begin(), set.end(), p) != set.end();
    });
    if (!hit) return false;
  }
  return true;
}

namespace {

MinSet exact_search(const std::vector<Clause>& clauses, const std::vector<std::size_t>& universe) {
  const std::size_t u = universe.size();
  std::vector<std::uint64_t> masks;
  masks.reserve(clauses.size());
  for (const auto& clause : clauses) {
    std::uint64_t m = 0;
    for (auto p : clause) {
      auto pos = std::lower_bound(universe.begin(), universe.end(), p) - universe.begin();
      m |= std::uint64_t{1} << pos;
    }
    masks.push_back(m);
  }

  // Combinations of k positions in lexicographic order, k = 0, 1, ..., u.
  std::vector<std::size_t> pick;
  for (std::size_t k = 0; k <= u; ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::uint64_t chosen = 0;
      for (auto i : pick) chosen |= std::uint64_t{1} << i;
      bool ok = std::all_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & chosen) != 0; });
      if (ok) {
        MinSet out;
        for (auto i : pick) out.properties.push_back(universe[i]);
        return out;
      }
      // Advance to the next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == u - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  // Unreachable: the full universe hits every non-empty clause.
  return MinSet{universe, true};
}

MinSet greedy_cover(const std::vector<Clause>& clauses, const std::vector<std::size_t>& universe) {
  std::vector<bool> covered(clauses.size(), false);
  std::size_t remaining = clauses.size();
  MinSet out;
  out.exact = false;
  while (remaining > 0) {
    std::size_t best = universe.front();
    std::size_t best_count = 0;
    for (auto p : universe) {
      std::size_t count = 0;
      for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!covered[c] && std::binary_search(clauses[c].begin(), clauses[c].end(), p)) ++count;
      }
      if (count > best_count) {
        best = p;
        best_count = count;
      }
    }
    out.properties.push_back(best);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      if (!covered[c] && std::binary_search(clauses[c].begin(), clauses[c].end(), best)) {
        covered[c] = true;
        --remaining;
      }
    }
  }
  std::sort(out.properties.begin(), out.properties.end());
  return out;
}

}  // namespace

MinSet solve_min_hitting_set(const ClauseSet& clauses, std::size_t exact_limit) {
  std::vector<Clause> unique = clauses.clauses;
  for (auto& c : unique) std::sort(c.begin(), c.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.empty()) return MinSet{};

  const auto universe = clauses.universe();
  if (universe.size() <= exact_limit && universe.size() <= 63) return exact_search(unique, universe);
  return greedy_cover(unique, universe);
}

MinSet compute_min_set(std::span<const Entity> entities, const PropertySchema& schema, std::size_t exact_limit) {
  if (entities.size() < 2) return MinSet{};
  return solve_min_hitting_set(pairwise_clauses(entities, schema), exact_limit);
}

MinSet compute_min_set(const World& world, std::span<const std::size_t> members, std::size_t exact_limit) {
  if (members.size() < 2) return MinSet{};
  return solve_min_hitting_set(pairwise_clauses(world, members), exact_limit);
}

}  // namespace refquest
