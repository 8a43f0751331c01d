#include "iedm/json_io.hpp"

namespace iedm {

using nlohmann::json;

json to_json(const validation::Violation& v) {
  return {{"subject", v.subject.str()},
          {"rule", std::string(validation::to_string(v.rule))},
          {"property", v.property ? json(v.property->str()) : json(nullptr)},
          {"expected", v.expected},
          {"found", v.found},
          {"message", v.message}};
}

json to_json(const validation::Report& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  json warnings = json::array();
  for (const auto& v : r.warnings) warnings.push_back(to_json(v));
  return {{"ok", r.ok()},
          {"checkedSubjects", r.checked_subjects},
          {"violations", violations},
          {"warnings", warnings}};
}

json to_json(const QuantityValue& q) {
  return {{"value", q.value},
          {"kind", q.kind.str()},
          {"unit", q.unit.str()},
          {"relativeError", q.relative_error ? json(*q.relative_error) : json(nullptr)}};
}

namespace {

Iri iri_member(const json& j, const char* key) {
  try {
    return Iri::parse(require_string(j, key));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TypeMismatch) throw;
    throw Error(ErrorCode::TypeMismatch, std::string(key) + ": " + e.what());
  }
}

double number_member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' must be a number");
  return it->get<double>();
}

}  // namespace

QuantityValue quantity_from_json(const json& j, const Iri& default_kind) {
  if (j.is_number()) return QuantityValue::make(j.get<double>(), default_kind);
  if (!j.is_object()) throw Error(ErrorCode::TypeMismatch, "quantity must be a number or an object");
  double value = number_member(j, "value");
  Iri kind = j.contains("kind") ? iri_member(j, "kind") : default_kind;
  std::optional<double> err;
  if (j.contains("relativeError") && !j["relativeError"].is_null())
    err = number_member(j, "relativeError");
  std::optional<Iri> unit;
  if (j.contains("unit") && !j["unit"].is_null()) unit = iri_member(j, "unit");
  return QuantityValue::make(value, kind, err, unit);
}

json to_json(const materials::OccupancyTriple& t) {
  return {{"radiation", t.radiation},
          {"collision", t.collision},
          {"interaction", t.interaction},
          {"report", materials::occupancy_report(t)}};
}

materials::OccupancyTriple occupancy_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::TypeMismatch, "occupancy must be an object");
  return {number_member(j, "radiation"), number_member(j, "collision"),
          number_member(j, "interaction")};
}

json to_json(const Error& e) {
  json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["line"] = s->line();
    j["column"] = s->column();
  }
  return j;
}

std::string require_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

std::string optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string())
    throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace iedm
