#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refquest {

using PropertyName = std::string;
using PropertyValue = std::string;

struct Property {
  PropertyName name;
  std::vector<PropertyValue> values;

  bool operator==(const Property&) const = default;
};

/// Ordered property inventory. Order is significant: every tie-break in the
/// library falls back to schema order, then value order.
class PropertySchema {
 public:
  PropertySchema() = default;
  explicit PropertySchema(std::vector<Property> properties);

  const std::vector<Property>& properties() const noexcept { return properties_; }
  std::size_t size() const noexcept { return properties_.size(); }
  const Property& operator[](std::size_t i) const { return properties_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws std::out_of_range for an unknown property.
  std::size_t require(std::string_view name) const;
  std::optional<std::size_t> value_index(std::size_t property, std::string_view value) const;
  bool contains_value(std::string_view property, std::string_view value) const;

  bool operator==(const PropertySchema& other) const { return properties_ == other.properties_; }

 private:
  std::vector<Property> properties_;
};

struct Entity {
  std::string id;
  std::string label;      // instruction-facing name, shared by instances of a type
  std::string type_name;
  std::map<PropertyName, PropertyValue> assignment;

  /// Throws std::out_of_range when the property is unassigned.
  const PropertyValue& value(std::string_view property) const;

  bool operator==(const Entity&) const = default;
};

struct World {
  PropertySchema schema;
  std::vector<Entity> entities;

  std::optional<std::size_t> find(std::string_view id) const;
  const Entity& entity(std::string_view id) const;

  bool operator==(const World&) const = default;
};

/// Empty result means the world is valid. Violations name the offending
/// entity ids and properties; they are data, not failures.
std::vector<std::string> validate_world(const World& world);

/// Parses a world-config document (JSON) and validates it.
/// Throws ParseError or ValidationError.
World load_world(std::string_view text);
World load_world_file(const std::string& path);

/// Inverse of load_world; the output reloads to an identical World.
std::string serialize_world(const World& world);

}  // namespace refquest
