#include "iedm/datamgr/records.hpp"

#include <algorithm>
#include <cstdio>

#include "iedm/json_io.hpp"

namespace iedm::datamgr {

using nlohmann::json;
using iedm::to_json;

const DutIrradiationRecord* ExperimentRecord::irradiation(const std::string& rid) const {
  for (const auto& r : dut_irradiations)
    if (r.id == rid) return &r;
  return nullptr;
}

DutIrradiationRecord* ExperimentRecord::irradiation(const std::string& rid) {
  for (auto& r : dut_irradiations)
    if (r.id == rid) return &r;
  return nullptr;
}

bool FacilityRoles::has(const std::string& user) const {
  if (user.empty()) return false;
  return std::find(managers.begin(), managers.end(), user) != managers.end() ||
         std::find(coordinators.begin(), coordinators.end(), user) != coordinators.end();
}

std::string format_id(std::string_view prefix, std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(n));
  return std::string(prefix) + "-" + buf;
}

namespace {

TimePosition time_member(const json& j, const char* key) {
  auto t = TimePosition::try_parse(require_string(j, key));
  if (!t) throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' is not an ISO-8601 instant");
  return *t;
}

std::uint64_t version_member(const json& j) {
  auto it = j.find("version");
  if (it == j.end() || !it->is_number_unsigned())
    throw Error(ErrorCode::TypeMismatch, "'version' must be a positive integer");
  return it->get<std::uint64_t>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' must be a list");
  for (const auto& s : *it) {
    if (!s.is_string()) throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

json to_json(const SampleRecord& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"categoryNote", r.category_note},
          {"requestedFluence", to_json(r.requested_fluence)},
          {"occupancy", to_json(r.occupancy)},
          {"lastUpdate", r.last_update.iso()},
          {"lastUpdatedBy", r.last_updated_by},
          {"experimentId", r.experiment_id},
          {"visible", r.visible},
          {"version", r.version}};
}

SampleRecord sample_from_json(const json& j) {
  SampleRecord r;
  r.id = require_string(j, "id");
  r.name = require_string(j, "name");
  r.category_note = optional_string(j, "categoryNote");
  r.requested_fluence = quantity_from_json(j.at("requestedFluence"), vocab::iedm("Fluence"));
  if (j.contains("occupancy")) r.occupancy = occupancy_from_json(j["occupancy"]);
  r.last_update = time_member(j, "lastUpdate");
  r.last_updated_by = optional_string(j, "lastUpdatedBy");
  r.experiment_id = require_string(j, "experimentId");
  r.visible = j.value("visible", false);
  r.version = version_member(j);
  return r;
}

json to_json(const AdminInfo& a) {
  return {{"responsible", a.responsible},
          {"operator", a.operator_},
          {"coordinator", a.coordinator},
          {"manager", a.manager}};
}

AdminInfo admin_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::TypeMismatch, "'admin' must be an object");
  return {optional_string(j, "responsible"), optional_string(j, "operator"),
          optional_string(j, "coordinator"), optional_string(j, "manager")};
}

json to_json(const DutIrradiationRecord& r) {
  return {{"id", r.id},
          {"dutId", r.dut_id},
          {"radiationField", r.radiation_field.str()},
          {"start", r.start.iso()},
          {"end", r.end ? json(r.end->iso()) : json(nullptr)},
          {"cumulated", r.cumulated ? to_json(*r.cumulated) : json(nullptr)},
          {"name", r.name}};
}

DutIrradiationRecord irradiation_from_json(const json& j) {
  DutIrradiationRecord r;
  r.id = require_string(j, "id");
  r.dut_id = require_string(j, "dutId");
  r.radiation_field = Iri::parse(require_string(j, "radiationField"));
  r.start = time_member(j, "start");
  if (j.contains("end") && !j["end"].is_null()) r.end = time_member(j, "end");
  if (j.contains("cumulated") && !j["cumulated"].is_null())
    r.cumulated = quantity_from_json(j["cumulated"], vocab::iedm("Fluence"));
  r.name = optional_string(j, "name");
  return r;
}

json to_json(const ExperimentRecord& r) {
  json irr = json::array();
  for (const auto& d : r.dut_irradiations) irr.push_back(to_json(d));
  return {{"id", r.id},
          {"title", r.title},
          {"facility", r.facility.str()},
          {"irradiationCategory", r.irradiation_category.str()},
          {"technicalRequirements", r.technical_requirements},
          {"admin", to_json(r.admin)},
          {"dutIrradiations", irr},
          {"visible", r.visible},
          {"version", r.version}};
}

ExperimentRecord experiment_from_json(const json& j) {
  ExperimentRecord r;
  r.id = require_string(j, "id");
  r.title = require_string(j, "title");
  r.facility = Iri::parse(require_string(j, "facility"));
  r.irradiation_category = Iri::parse(require_string(j, "irradiationCategory"));
  r.technical_requirements = optional_string(j, "technicalRequirements");
  r.admin = admin_from_json(j.at("admin"));
  if (j.contains("dutIrradiations"))
    for (const auto& d : j["dutIrradiations"]) r.dut_irradiations.push_back(irradiation_from_json(d));
  r.visible = j.value("visible", false);
  r.version = version_member(j);
  return r;
}

json to_json(const FacilityRoles& r) {
  return {{"managers", r.managers}, {"coordinators", r.coordinators}};
}

FacilityRoles facility_roles_from_json(const json& j) {
  return {string_list(j, "managers"), string_list(j, "coordinators")};
}

}  // namespace iedm::datamgr
