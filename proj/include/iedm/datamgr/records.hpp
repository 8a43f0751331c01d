#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iedm/iri.hpp"
#include "iedm/materials.hpp"
#include "iedm/values.hpp"

namespace iedm::datamgr {

/// Row of the sample registry.
struct SampleRecord {
  std::string id;  // "SET-" + 6 digits
  std::string name;
  // Free-text placement note; unrelated to the irradiation category classes.
  std::string category_note;
  QuantityValue requested_fluence;
  materials::OccupancyTriple occupancy;
  TimePosition last_update;
  std::string last_updated_by;
  std::string experiment_id;
  bool visible = false;  // mirrors the owning experiment in listings
  std::uint64_t version = 1;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct AdminInfo {
  std::string responsible;
  std::string operator_;
  std::string coordinator;
  std::string manager;

  friend bool operator==(const AdminInfo&, const AdminInfo&) = default;
};

struct DutIrradiationRecord {
  std::string id;  // "IRR-" + 6 digits
  std::string dut_id;  // sample id
  Iri radiation_field;
  TimePosition start;
  std::optional<TimePosition> end;
  std::optional<QuantityValue> cumulated;
  // Individual local name used on export; derived from the title when empty.
  std::string name;

  friend bool operator==(const DutIrradiationRecord&, const DutIrradiationRecord&) = default;
};

struct ExperimentRecord {
  std::string id;  // "EXP-" + 6 digits
  std::string title;
  Iri facility;
  Iri irradiation_category;
  std::string technical_requirements;
  AdminInfo admin;
  std::vector<DutIrradiationRecord> dut_irradiations;
  bool visible = false;
  std::uint64_t version = 1;

  bool is_owner(const std::string& user) const {
    return !user.empty() && (user == admin.responsible || user == admin.operator_);
  }
  const DutIrradiationRecord* irradiation(const std::string& rid) const;
  DutIrradiationRecord* irradiation(const std::string& rid);

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Facility staff allowed to manage experiments hosted at the facility.
struct FacilityRoles {
  std::vector<std::string> managers;
  std::vector<std::string> coordinators;

  bool has(const std::string& user) const;
  friend bool operator==(const FacilityRoles&, const FacilityRoles&) = default;
};

struct AuditEntry {
  TimePosition timestamp;
  std::string user;
  std::string record_id;
  std::uint64_t version = 0;
};

/// "SET-000001" style identifiers.
std::string format_id(std::string_view prefix, std::uint64_t n);

nlohmann::json to_json(const SampleRecord& r);
SampleRecord sample_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AdminInfo& a);
AdminInfo admin_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DutIrradiationRecord& r);
DutIrradiationRecord irradiation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentRecord& r);
ExperimentRecord experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FacilityRoles& r);
FacilityRoles facility_roles_from_json(const nlohmann::json& j);

}  // namespace iedm::datamgr
