#include "refquest/world.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "refquest/errors.hpp"

namespace refquest {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("invalid world: " + join(violations, "; ")), violations_(std::move(violations)) {}

IndistinguishablePair::IndistinguishablePair(std::string first, std::string second)
    : Error("entities '" + first + "' and '" + second + "' have identical assignments"),
      first_(std::move(first)),
      second_(std::move(second)) {}

PropertySchema::PropertySchema(std::vector<Property> properties) : properties_(std::move(properties)) {}

std::optional<std::size_t> PropertySchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < properties_.size(); ++i) {
    if (properties_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t PropertySchema::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw std::out_of_range("unknown property '" + std::string(name) + "'");
}

std::optional<std::size_t> PropertySchema::value_index(std::size_t property, std::string_view value) const {
  const auto& values = properties_.at(property).values;
  auto it = std::find(values.begin(), values.end(), value);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

bool PropertySchema::contains_value(std::string_view property, std::string_view value) const {
  auto i = index_of(property);
  return i && value_index(*i, value).has_value();
}

const PropertyValue& Entity::value(std::string_view property) const {
  auto it = assignment.find(std::string(property));
  if (it == assignment.end()) {
    throw std::out_of_range("entity '" + id + "' has no value for '" + std::string(property) + "'");
  }
  return it->second;
}

std::optional<std::size_t> World::find(std::string_view id) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].id == id) return i;
  }
  return std::nullopt;
}

const Entity& World::entity(std::string_view id) const {
  if (auto i = find(id)) return entities[*i];
  throw UnknownReferent("unknown referent '" + std::string(id) + "'");
}

std::vector<std::string> validate_world(const World& world) {
  std::vector<std::string> out;
  const auto& props = world.schema.properties();

  std::set<std::string> names;
  for (const auto& p : props) {
    if (p.name.empty()) out.push_back("schema: property with empty name");
    if (!names.insert(p.name).second) out.push_back("schema: duplicate property '" + p.name + "'");
    if (p.values.empty()) out.push_back("schema: property '" + p.name + "' has an empty domain");
    std::set<std::string> seen;
    for (const auto& v : p.values) {
      if (!seen.insert(v).second) {
        out.push_back("schema: property '" + p.name + "' lists value '" + v + "' twice");
      }
    }
  }

  if (world.entities.empty()) out.push_back("world has no entities");

  std::set<std::string> ids;
  for (const auto& e : world.entities) {
    if (e.id.empty()) out.push_back("entity with empty id");
    if (!ids.insert(e.id).second) out.push_back("duplicate entity id '" + e.id + "'");
    for (const auto& p : props) {
      auto it = e.assignment.find(p.name);
      if (it == e.assignment.end()) {
        out.push_back("entity '" + e.id + "': incomplete assignment, missing property '" + p.name + "'");
      } else if (std::find(p.values.begin(), p.values.end(), it->second) == p.values.end()) {
        out.push_back("entity '" + e.id + "': value '" + it->second + "' not in domain of property '" +
                      p.name + "'");
      }
    }
    for (const auto& [name, value] : e.assignment) {
      if (!names.count(name)) {
        out.push_back("entity '" + e.id + "': unknown property '" + name + "'");
      }
    }
  }

  for (std::size_t i = 0; i < world.entities.size(); ++i) {
    for (std::size_t j = i + 1; j < world.entities.size(); ++j) {
      if (world.entities[i].assignment == world.entities[j].assignment) {
        out.push_back("entities '" + world.entities[i].id + "' and '" + world.entities[j].id +
                      "' have identical assignments");
      }
    }
  }
  return out;
}

namespace {

const json& field(const json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return node.at(key);
}

std::string string_field(const json& node, const char* key, const std::string& where) {
  const json& v = field(node, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

World load_world(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("world config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("world config: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema" && key != "entities" && key != "notes") {
      throw ParseError("world config: unknown top-level key '" + key + "'");
    }
  }

  const json& schema_node = field(doc, "schema", "world config");
  if (!schema_node.is_array()) throw ParseError("schema: expected a list");
  std::vector<Property> props;
  for (std::size_t i = 0; i < schema_node.size(); ++i) {
    const std::string where = "schema[" + std::to_string(i) + "]";
    Property p;
    p.name = string_field(schema_node[i], "name", where);
    const json& values = field(schema_node[i], "values", where);
    if (!values.is_array()) throw ParseError(where + ".values: expected a list");
    for (const auto& v : values) {
      if (!v.is_string()) throw ParseError(where + ".values: expected string tokens");
      p.values.push_back(v.get<std::string>());
    }
    props.push_back(std::move(p));
  }

  const json& entities_node = field(doc, "entities", "world config");
  if (!entities_node.is_array()) throw ParseError("entities: expected a list");
  World world{PropertySchema(std::move(props)), {}};
  for (std::size_t i = 0; i < entities_node.size(); ++i) {
    const std::string where = "entities[" + std::to_string(i) + "]";
    const json& node = entities_node[i];
    Entity e;
    e.id = string_field(node, "id", where);
    e.label = string_field(node, "label", where);
    e.type_name = string_field(node, "type", where);
    const json& assignment = field(node, "assignment", where);
    if (!assignment.is_object()) throw ParseError(where + ".assignment: expected a mapping");
    for (const auto& [k, v] : assignment.items()) {
      if (!v.is_string()) throw ParseError(where + ".assignment." + k + ": expected a string token");
      e.assignment.emplace(k, v.get<std::string>());
    }
    world.entities.push_back(std::move(e));
  }

  if (auto violations = validate_world(world); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return world;
}

World load_world_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open world config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_world(buf.str());
}

std::string serialize_world(const World& world) {
  using ordered = nlohmann::ordered_json;
  ordered schema = ordered::array();
  for (const auto& p : world.schema.properties()) {
    schema.push_back({{"name", p.name}, {"values", p.values}});
  }
  ordered entities = ordered::array();
  for (const auto& e : world.entities) {
    ordered assignment = ordered::object();
    for (const auto& p : world.schema.properties()) {
      if (auto it = e.assignment.find(p.name); it != e.assignment.end()) {
        assignment[p.name] = it->second;
      }
    }
    entities.push_back({{"id", e.id}, {"label", e.label}, {"type", e.type_name}, {"assignment", assignment}});
  }
  ordered doc = ordered::object();
  doc["schema"] = std::move(schema);
  doc["entities"] = std::move(entities);
  return doc.dump(2) + "\n";
}

}  // namespace refquest
