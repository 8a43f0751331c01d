#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iedm/iri.hpp"
#include "iedm/ontology.hpp"
#include "iedm/values.hpp"

namespace iedm {

struct ObjectAssertion {
  Iri property;
  Iri target;
  friend bool operator==(const ObjectAssertion&, const ObjectAssertion&) = default;
  friend auto operator<=>(const ObjectAssertion&, const ObjectAssertion&) = default;
};

using Value = std::variant<Iri, Literal>;

/// A-Box individual. Data assertions always use iedm:hasValue, so only the
/// literals are stored.
struct Individual {
  Iri iri;
  std::set<Iri> types;
  std::set<ObjectAssertion> object_assertions;
  std::set<Literal> values;

  std::vector<Iri> targets(const Iri& property) const;
  bool has_type(const Iri& cls) const { return types.count(cls) > 0; }

  friend bool operator==(const Individual&, const Individual&) = default;
};

/// Validates and appends one assertion; duplicates collapse.
/// Errors: UnknownProperty, LiteralOnObjectProperty, ObjectOnDataProperty.
void assert_statement(Individual& ind, const Iri& property, const Value& value,
                      const Ontology& onto);

/// Set of individuals keyed by Iri. Mutation follows a single-writer
/// discipline; copies are cheap snapshots for concurrent readers.
class Dataset {
 public:
  bool contains(const Iri& iri) const { return individuals_.count(iri) > 0; }
  const Individual* find(const Iri& iri) const;
  Individual* find(const Iri& iri);
  const Individual& at(const Iri& iri) const;  // NotFound
  Individual& at(const Iri& iri);

  const std::map<Iri, Individual>& individuals() const noexcept { return individuals_; }
  std::size_t size() const noexcept { return individuals_.size(); }
  bool empty() const noexcept { return individuals_.empty(); }

  /// Registers an individual typed `cls`. UnknownClass, AlreadyExists.
  Individual& mint(const Ontology& onto, const Iri& cls, const Iri& iri);
  /// Returns the existing individual, adding `cls` to its types, or mints it.
  Individual& ensure(const Ontology& onto, const Iri& cls, const Iri& iri);

  void assert_statement(const Iri& subject, const Iri& property, const Value& value,
                        const Ontology& onto);

  /// Inserts or replaces without checks (used by importers that collect
  /// warnings instead of failing).
  void put(Individual ind);
  bool erase(const Iri& iri);

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::map<Iri, Individual> individuals_;
};

/// Free-function form of Dataset::mint.
Individual& mint_individual(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& iri);

/// Particle composition of a radiation field plus optional beam momentum.
struct RadiationFieldSpec {
  std::vector<Iri> particles;
  std::optional<QuantityValue> beam_momentum;

  /// iedm:SingularField for one particle, iedm:MixedField for two or more.
  /// Empty particle lists throw ValidationError.
  Iri classify() const;
};

/// Mints the field individual (typed Singular/Mixed), its particles and the
/// momentum quantity with its unit.
Individual& add_radiation_field(Dataset& ds, const Ontology& onto, const Iri& iri,
                                const RadiationFieldSpec& spec);

/// Reads a field individual back into a spec. NotFound if absent.
RadiationFieldSpec radiation_field_spec(const Dataset& ds, const Iri& iri);

/// Mints a quantity individual of the QuantityValue's kind (iedm:AbsorbedDose
/// for om:AbsorbedDose) with hasValue, hasUnit and optional measurement error
/// individual. Returns the quantity individual.
Individual& add_quantity(Dataset& ds, const Ontology& onto, const Iri& iri,
                         const QuantityValue& q);

/// Mints (or reuses) an iedm:TimePosition individual named by the instant's
/// slug, carrying the dateTime literal.
Individual& add_time_position(Dataset& ds, const Ontology& onto, const TimePosition& t);

/// Class an individual of QuantityValue `kind` is typed with.
Iri quantity_class_for_kind(const Iri& kind);

}  // namespace iedm
