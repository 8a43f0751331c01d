#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iedm/dataset.hpp"
#include "iedm/ontology.hpp"

namespace iedm::validation {

enum class Rule {
  CardinalityExact,
  CardinalityMin,
  FillerTypeMismatch,
  DanglingReference,
  TemporalOrder,
  ValueRange,
};

std::string_view to_string(Rule rule);

struct Violation {
  Iri subject;
  Rule rule = Rule::CardinalityExact;
  std::optional<Iri> property;
  std::string expected;
  std::string found;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Orders by (subject, rule, property), then expected/found for a total order.
bool operator<(const Violation& a, const Violation& b);

struct Options {
  // Under-counted cardinalities become warnings so partially entered
  // experiments can be saved. Exact over-counts stay violations.
  bool draft = false;
};

struct Report {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
  std::size_t checked_subjects = 0;

  bool ok() const noexcept { return violations.empty(); }
  friend bool operator==(const Report&, const Report&) = default;
};

struct IndividualResult {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
};

/// Checks one individual against the effective restrictions of its types
/// plus the temporal, value-range and role rules. Violations are sorted.
IndividualResult check_individual(const Individual& ind, const Dataset& ds, const Ontology& onto,
                                  const Options& options = {});

/// Non-draft convenience form returning only violations.
std::vector<Violation> validate_individual(const Individual& ind, const Dataset& ds,
                                           const Ontology& onto);

/// Per-individual checks plus dangling-reference detection. Individuals are
/// checked in parallel when OpenMP is available; the result is identical to
/// validate_dataset_serial.
Report validate_dataset(const Dataset& ds, const Ontology& onto, const Options& options = {});

/// Single-threaded reference implementation.
Report validate_dataset_serial(const Dataset& ds, const Ontology& onto,
                               const Options& options = {});

}  // namespace iedm::validation
