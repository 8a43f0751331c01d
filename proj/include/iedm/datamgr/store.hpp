#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iedm/datamgr/records.hpp"

namespace iedm::datamgr {

/// One JSON document per record under a data root:
///   samples/SET-000001.json, experiments/EXP-000001.json,
///   counters.json, facilities.json, audit.log (append-only TSV).
/// Documents are written to a temporary file and renamed into place.
/// Not synchronized; Service serializes writers.
class Store {
 public:
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  const SampleRecord* sample(const std::string& id) const;
  const std::map<std::string, SampleRecord>& samples() const noexcept { return samples_; }
  const ExperimentRecord* experiment(const std::string& id) const;
  const std::map<std::string, ExperimentRecord>& experiments() const noexcept {
    return experiments_;
  }
  FacilityRoles facility_roles(const Iri& facility) const;

  /// Increments and persists the named counter; returns the new value.
  std::uint64_t next_counter(const std::string& name);
  /// Raises the counter to at least `value` (used when restoring records).
  void raise_counter(const std::string& name, std::uint64_t value);

  void put_sample(const SampleRecord& r, const TimePosition& when, const std::string& user);
  void put_experiment(const ExperimentRecord& r, const TimePosition& when, const std::string& user);
  void put_facility_roles(const Iri& facility, const FacilityRoles& roles);

  std::vector<AuditEntry> audit() const;

 private:
  void append_audit(const TimePosition& when, const std::string& user, const std::string& id,
                    std::uint64_t version);
  void save_counters() const;
  void save_facilities() const;

  std::filesystem::path root_;
  std::map<std::string, SampleRecord> samples_;
  std::map<std::string, ExperimentRecord> experiments_;
  std::map<std::string, std::uint64_t> counters_;
  std::map<Iri, FacilityRoles> facilities_;
};

/// Writes `text` to `path` via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace iedm::datamgr
