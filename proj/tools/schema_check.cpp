#include "schema_check.hpp"

#include <cmath>

namespace gaborheat_cli {

using nlohmann::json;

namespace {

bool has_type(const json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  if (type == "number") return doc.is_number();
  if (type == "integer") {
    if (doc.is_number_integer()) return true;
    if (doc.is_number_float()) {
      const double v = doc.get<double>();
      return std::isfinite(v) && v == std::floor(v);
    }
    return false;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate(const json& schema, const json& doc, const std::string& path) {
  std::vector<std::string> errs;
  auto add = [&](const std::string& m) { errs.push_back(path + ": " + m); };

  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& alt : schema["anyOf"])
      if (validate(alt, doc, path).empty()) {
        any = true;
        break;
      }
    if (!any) add("does not match any allowed form");
    return errs;
  }

  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(doc, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || has_type(doc, alt.get<std::string>());
    }
    if (!ok) {
      add("expected type " + t.dump());
      return errs;
    }
  }

  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found = found || v == doc;
    if (!found) add("value " + doc.dump() + " not in " + schema["enum"].dump());
  }

  if (doc.is_number()) {
    const double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>())
      add("value below minimum " + schema["minimum"].dump());
    if (schema.contains("maximum") && v > schema["maximum"].get<double>())
      add("value above maximum " + schema["maximum"].dump());
    if (schema.contains("exclusiveMinimum") && v <= schema["exclusiveMinimum"].get<double>())
      add("value must exceed " + schema["exclusiveMinimum"].dump());
  }

  if (doc.is_string() && schema.contains("minLength") &&
      doc.get<std::string>().size() < schema["minLength"].get<std::size_t>())
    add("string too short");

  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>()) add("too few items");
    if (schema.contains("maxItems") && doc.size() > schema["maxItems"].get<std::size_t>()) add("too many items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < doc.size(); ++i) {
        auto sub = validate(schema["items"], doc[i], path + "[" + std::to_string(i) + "]");
        errs.insert(errs.end(), sub.begin(), sub.end());
      }
  }

  if (doc.is_object()) {
    const json props = schema.value("properties", json::object());
    if (schema.contains("required"))
      for (const auto& r : schema["required"])
        if (!doc.contains(r.get<std::string>())) add("missing required key '" + r.get<std::string>() + "'");
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (const auto& [key, value] : doc.items()) {
      if (props.contains(key)) {
        auto sub = validate(props[key], value, path + "." + key);
        errs.insert(errs.end(), sub.begin(), sub.end());
      } else if (closed) {
        add("unknown key '" + key + "'");
      }
    }
  }
  return errs;
}

}  // namespace gaborheat_cli
