#pragma once

#include "json.hpp"

#include "iedm/error.hpp"
#include "iedm/materials.hpp"
#include "iedm/validation.hpp"
#include "iedm/values.hpp"

namespace iedm {

/// {"subject", "rule", "property"|null, "expected", "found", "message"}
nlohmann::json to_json(const validation::Violation& v);
/// {"ok", "checkedSubjects", "violations": [...], "warnings": [...]}
nlohmann::json to_json(const validation::Report& r);

/// {"value", "kind", "unit", "relativeError"|null}
nlohmann::json to_json(const QuantityValue& q);
/// Accepts a bare number (interpreted with `default_kind`) or an object with
/// "value" and optional "kind", "unit", "relativeError". Validates through
/// QuantityValue::make.
QuantityValue quantity_from_json(const nlohmann::json& j, const Iri& default_kind);

/// {"radiation", "collision", "interaction", "report"}
nlohmann::json to_json(const materials::OccupancyTriple& t);
materials::OccupancyTriple occupancy_from_json(const nlohmann::json& j);

/// {"error": code, "message", "line"?, "column"?}
nlohmann::json to_json(const Error& e);

/// Reads a required string member; TypeMismatch when absent or not a string.
std::string require_string(const nlohmann::json& j, const char* key);
/// Optional string member; empty when absent or null.
std::string optional_string(const nlohmann::json& j, const char* key);

}  // namespace iedm
