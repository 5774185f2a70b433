#include "refquest/worlds.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "refquest/embedded_spacecraft.hpp"
#include "refquest/errors.hpp"
#include "refquest/rng.hpp"

namespace refquest {

RandomWorldSpec RandomWorldSpec::low_variance(std::uint64_t seed) {
  RandomWorldSpec s;
  s.n_varying = 3;
  s.seed = seed;
  return s;
}

RandomWorldSpec RandomWorldSpec::high_variance(std::uint64_t seed) {
  RandomWorldSpec s;
  s.n_varying = 7;
  s.seed = seed;
  return s;
}

std::vector<std::string> RandomWorldSpec::problems() const {
  std::vector<std::string> out;
  if (n_entities == 0) out.push_back("n_entities must be at least 1");
  if (n_properties == 0) out.push_back("n_properties must be at least 1");
  if (values_per_property == 0) out.push_back("values_per_property must be at least 1");
  if (group_size == 0) out.push_back("group_size must be at least 1");
  if (n_varying > n_properties) {
    out.push_back("n_varying (" + std::to_string(n_varying) + ") exceeds n_properties (" +
                  std::to_string(n_properties) + ")");
  }
  // values_per_property ^ n_varying >= n_entities, without overflow.
  std::size_t capacity = 1;
  for (std::size_t i = 0; i < n_varying && capacity < n_entities; ++i) capacity *= values_per_property;
  if (capacity < n_entities) {
    out.push_back(std::to_string(values_per_property) + "^" + std::to_string(n_varying) + " = " +
                  std::to_string(capacity) + " distinct assignments cannot cover " + std::to_string(n_entities) +
                  " entities");
  }
  return out;
}

std::string random_property_name(std::size_t index) {
  static constexpr std::array<const char*, 9> pool = {"color",   "shape",   "size",     "texture",  "symbol",
                                                      "pattern", "spatial", "landmark", "container"};
  if (index < pool.size()) return pool[index];
  return "property_" + std::to_string(index);
}

World generate_random_world(const RandomWorldSpec& spec) {
  if (auto problems = spec.problems(); !problems.empty()) {
    std::string msg = "infeasible random world spec:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InfeasibleSpec(msg);
  }
  Rng rng(spec.seed);

  std::vector<Property> props;
  for (std::size_t p = 0; p < spec.n_properties; ++p) {
    Property prop{random_property_name(p), {}};
    for (std::size_t v = 0; v < spec.values_per_property; ++v) prop.values.push_back(prop.name + "_" + std::to_string(v));
    props.push_back(std::move(prop));
  }

  // Pick the varying properties with a partial Fisher-Yates shuffle.
  std::vector<std::size_t> order(spec.n_properties);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < spec.n_varying; ++i) std::swap(order[i], order[i + rng.index(order.size() - i)]);
  std::vector<bool> varying(spec.n_properties, false);
  for (std::size_t i = 0; i < spec.n_varying; ++i) varying[order[i]] = true;

  std::vector<std::size_t> constant(spec.n_properties);
  for (auto& c : constant) c = rng.index(spec.values_per_property);

  World world{PropertySchema(std::move(props)), {}};
  std::set<std::vector<std::size_t>> seen;
  while (world.entities.size() < spec.n_entities) {
    std::vector<std::size_t> codes(spec.n_properties);
    for (std::size_t p = 0; p < spec.n_properties; ++p) {
      codes[p] = varying[p] ? rng.index(spec.values_per_property) : constant[p];
    }
    if (!seen.insert(codes).second) continue;  // resample on collision

    const std::size_t i = world.entities.size();
    const std::size_t group = i / spec.group_size;
    Entity e;
    e.id = "e" + std::to_string(i);
    e.type_name = "group_" + std::to_string(group);
    e.label = "object " + std::to_string(group);
    for (std::size_t p = 0; p < spec.n_properties; ++p) {
      const auto& prop = world.schema[p];
      e.assignment.emplace(prop.name, prop.values[codes[p]]);
    }
    world.entities.push_back(std::move(e));
  }
  return world;
}

std::shared_ptr<const World> spacecraft_world_ptr() {
  static const std::shared_ptr<const World> world =
      std::make_shared<const World>(load_world(embedded::kSpacecraftWorldJson));
  return world;
}

const World& spacecraft_world() { return *spacecraft_world_ptr(); }

std::vector<std::size_t> varying_properties(const World& world) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < world.schema.size(); ++p) {
    const auto& name = world.schema[p].name;
    for (const auto& e : world.entities) {
      if (e.value(name) != world.entities.front().value(name)) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace refquest
