#ifndef FROBRIG_SCHEMA_CHECK_HPP
#define FROBRIG_SCHEMA_CHECK_HPP

// Minimal structural validator for the JSON-schema subset used under
// schema/: type, enum, oneOf, $ref into #/$defs, required, properties,
// additionalProperties:false, items, prefixItems, minItems, maxItems.

#include <optional>
#include <string>

#include <json.hpp>

namespace frobrig::testutil {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
  if (t == "object") return value.is_object();
  if (t == "array") return value.is_array();
  if (t == "string") return value.is_string();
  if (t == "integer") return value.is_number_integer();
  if (t == "number") return value.is_number();
  if (t == "boolean") return value.is_boolean();
  if (t == "null") return value.is_null();
  return false;
}

inline std::optional<std::string> validate_at(const json& value, const json& schema,
                                              const json& root, const std::string& path) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) return path + ": unsupported $ref " + ref;
    return validate_at(value, root["$defs"][ref.substr(prefix.size())], root, path);
  }
  if (schema.contains("oneOf")) {
    int hits = 0;
    for (const auto& alt : schema["oneOf"])
      if (!validate_at(value, alt, root, path)) ++hits;
    if (hits != 1) return path + ": matched " + std::to_string(hits) + " oneOf alternatives";
    return std::nullopt;
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = t.is_array() ? [&] {
      for (const auto& alt : t)
        if (type_matches(value, alt.get<std::string>())) return true;
      return false;
    }()
                           : type_matches(value, t.get<std::string>());
    if (!ok) return path + ": type mismatch";
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"])
      if (value == alt) ok = true;
    if (!ok) return path + ": not in enum";
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return path + ": missing required key " + key.get<std::string>();
    const json props = schema.value("properties", json::object());
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props.contains(it.key())) {
        auto e = validate_at(it.value(), props[it.key()], root, path + "." + it.key());
        if (e) return e;
      } else if (schema.value("additionalProperties", json(true)) == json(false)) {
        return path + ": unexpected key " + it.key();
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
      return path + ": too few items";
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
      return path + ": too many items";
    for (std::size_t i = 0; i < value.size(); ++i) {
      const json* item_schema = nullptr;
      if (schema.contains("prefixItems") && i < schema["prefixItems"].size())
        item_schema = &schema["prefixItems"][i];
      else if (schema.contains("items"))
        item_schema = &schema["items"];
      if (item_schema) {
        auto e = validate_at(value[i], *item_schema, root, path + "[" + std::to_string(i) + "]");
        if (e) return e;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> validate(const json& value, const json& schema) {
  return validate_at(value, schema, schema, "$");
}

}  // namespace frobrig::testutil

#endif
