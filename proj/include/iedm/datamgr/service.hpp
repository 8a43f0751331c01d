#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "iedm/dataset.hpp"
#include "iedm/datamgr/records.hpp"
#include "iedm/datamgr/store.hpp"
#include "iedm/ontology.hpp"
#include "iedm/validation.hpp"

namespace iedm::datamgr {

using Clock = std::function<TimePosition()>;

struct NewExperiment {
  std::string title;
  Iri facility;
  Iri irradiation_category;
  std::string technical_requirements;
  AdminInfo admin;
};

struct NewSample {
  std::string name;
  std::string category_note;
  QuantityValue requested_fluence;
  std::string experiment_id;
  materials::OccupancyTriple occupancy;
};

struct SamplePatch {
  std::optional<std::string> name;
  std::optional<std::string> category_note;
  std::optional<QuantityValue> requested_fluence;
  std::optional<materials::OccupancyTriple> occupancy;
};

struct SampleQuery {
  std::string text;
  std::string experiment_id;
  std::size_t page = 1;  // 1-based
  std::size_t page_size = 50;
};

struct SamplePage {
  std::vector<SampleRecord> items;
  std::size_t total = 0;
  std::size_t page = 1;
  std::size_t page_size = 50;
};

struct ExportResult {
  Dataset dataset;
  std::string turtle;
  // Draft-mode report: under-counts of unfinished experiments are warnings.
  validation::Report report;
};

/// Radiation fields that irradiations may reference.
const std::map<Iri, RadiationFieldSpec>& radiation_field_catalog();

/// Ontology dataset for one experiment: experiment, category, admin info and
/// roles, facility, per-DUT irradiations with times, field and results.
Dataset experiment_dataset(const ExperimentRecord& exp,
                           const std::map<std::string, SampleRecord>& samples,
                           const Ontology& onto = Ontology::builtin());

/// Maps arbitrary text onto a valid Iri local name.
std::string sanitize_local(std::string_view text);

/// Sample registry and experiment lifecycle over a Store. Reads run
/// concurrently; writes are serialized by one writer lock, and sample updates
/// are additionally guarded by optimistic version checks.
class Service {
 public:
  explicit Service(std::filesystem::path root, Clock clock = &TimePosition::now,
                   const Ontology& onto = Ontology::builtin());

  ExperimentRecord create_experiment(const NewExperiment& e, const std::string& user);
  ExperimentRecord set_visibility(const std::string& experiment_id, bool visible,
                                  const std::string& user);
  void set_facility_roles(const Iri& facility, const FacilityRoles& roles);

  /// ValidationError (negative or non-fluence request), UnknownExperiment.
  SampleRecord create_sample(const NewSample& s, const std::string& user);
  /// NotFound, VersionConflict.
  SampleRecord update_sample(const std::string& id, const SamplePatch& patch,
                             const std::string& user, std::uint64_t expected_version);
  /// Inserts a record with its own id and version (seeding, migration).
  SampleRecord restore_sample(const SampleRecord& r, const std::string& user);

  /// NotFound (experiment, sample or radiation field).
  DutIrradiationRecord register_dut_irradiation(const std::string& experiment_id,
                                                const std::string& sample_id,
                                                const Iri& radiation_field,
                                                const TimePosition& start,
                                                const std::string& user,
                                                const std::string& name = {});
  /// NotFound, TemporalOrder (end before start), ValidationError.
  DutIrradiationRecord complete_dut_irradiation(const std::string& experiment_id,
                                                const std::string& irradiation_id,
                                                const TimePosition& end,
                                                const std::optional<QuantityValue>& cumulated,
                                                const std::string& user);

  ExportResult export_experiment(const std::string& experiment_id) const;

  /// ValidationError for page < 1 or page size outside [1, 500].
  SamplePage list_samples(const SampleQuery& q, const std::string& viewer) const;

  std::optional<SampleRecord> sample(const std::string& id) const;
  std::optional<ExperimentRecord> experiment(const std::string& id) const;
  std::vector<ExperimentRecord> experiments() const;
  std::vector<AuditEntry> audit() const;

  const Ontology& ontology() const noexcept { return onto_; }

 private:
  TimePosition tick(const TimePosition& floor) const;
  void save(ExperimentRecord& exp, const TimePosition& when, const std::string& user);

  mutable std::shared_mutex mutex_;
  Store store_;
  Clock clock_;
  const Ontology& onto_;
};

}  // namespace iedm::datamgr
