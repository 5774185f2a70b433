#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// minset solver or the entropy code it checks.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "refquest/rng.hpp"
#include "refquest/world.hpp"

namespace refquest::test {

using Row = std::map<std::string, std::string>;

/// Builds a world whose schema domains are exactly the values used by `rows`,
/// in first-seen order.
inline World make_world(const std::vector<std::string>& properties, const std::vector<Row>& rows,
                        const std::string& label = "thing") {
  std::vector<Property> props;
  for (const auto& p : properties) {
    Property prop{p, {}};
    for (const auto& r : rows) {
      auto it = r.find(p);
      if (it == r.end()) continue;
      bool seen = false;
      for (const auto& v : prop.values) seen = seen || v == it->second;
      if (!seen) prop.values.push_back(it->second);
    }
    props.push_back(std::move(prop));
  }
  World w{PropertySchema(std::move(props)), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    w.entities.push_back({"e" + std::to_string(i + 1), label, "thing", rows[i]});
  }
  return w;
}

inline std::shared_ptr<const World> share(World w) { return std::make_shared<const World>(std::move(w)); }

/// Brute-force minimum: smallest property subset (by cardinality) under which
/// every pair of entities still differs. Returns the cardinality.
inline std::size_t brute_force_min_cardinality(const World& w) {
  const std::size_t n = w.schema.size();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t bits = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (bits >= best) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < w.entities.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < w.entities.size(); ++j) {
        bool differs = false;
        for (std::size_t p = 0; p < n && !differs; ++p) {
          if ((mask >> p) & 1) {
            const auto& name = w.schema[p].name;
            differs = w.entities[i].assignment.at(name) != w.entities[j].assignment.at(name);
          }
        }
        ok = differs;
      }
    }
    if (ok) best = bits;
  }
  return best;
}

/// Small random world with pairwise-distinct entities, for property tests.
inline World random_small_world(Rng& rng, std::size_t max_entities = 6, std::size_t max_properties = 5) {
  while (true) {
    std::size_t n_props = 1 + rng.index(max_properties);
    std::size_t n_values = 2 + rng.index(3);
    std::size_t n_entities = 1 + rng.index(max_entities);
    std::size_t capacity = 1;
    for (std::size_t i = 0; i < n_props && capacity < n_entities; ++i) capacity *= n_values;
    if (capacity < n_entities) continue;

    std::vector<Property> props;
    for (std::size_t p = 0; p < n_props; ++p) {
      Property prop{"p" + std::to_string(p), {}};
      for (std::size_t v = 0; v < n_values; ++v) prop.values.push_back("v" + std::to_string(v));
      props.push_back(std::move(prop));
    }
    World w{PropertySchema(props), {}};
    std::vector<Row> seen;
    while (w.entities.size() < n_entities) {
      Row row;
      for (const auto& prop : props) row[prop.name] = prop.values[rng.index(n_values)];
      bool dup = false;
      for (const auto& s : seen) dup = dup || s == row;
      if (dup) continue;
      seen.push_back(row);
      w.entities.push_back({"e" + std::to_string(w.entities.size()), "thing", "thing", row});
    }
    return w;
  }
}

/// Random probability vector over `size` slots, some of them zero.
inline std::vector<double> random_distribution(Rng& rng, std::size_t size = 6) {
  std::vector<double> p(size, 0.0);
  double total = 0.0;
  for (auto& x : p) {
    if (rng.index(3) == 0) continue;
    x = static_cast<double>(rng.next() % 1000 + 1);
    total += x;
  }
  if (total == 0.0) {
    p[rng.index(size)] = 1.0;
    return p;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace refquest::test
