#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iedm/iri.hpp"

namespace iedm {

enum class RestrictionKind { Exactly, Min };

std::string_view to_string(RestrictionKind kind);

/// Qualified cardinality restriction `onProperty kind cardinality filler`.
/// The OWL `some` form is stored as (Min, 1).
struct Restriction {
  Iri on_property;
  RestrictionKind kind = RestrictionKind::Min;
  unsigned cardinality = 0;
  Iri filler;
  // Why this restriction is exact or existential; shown by the T-Box dump.
  std::string note;

  static Restriction exactly(Iri property, unsigned n, Iri filler, std::string note = {});
  static Restriction some(Iri property, Iri filler, std::string note = {});
  static Restriction min(Iri property, unsigned n, Iri filler, std::string note = {});

  std::string str() const;

  friend bool operator==(const Restriction& a, const Restriction& b) {
    return a.on_property == b.on_property && a.kind == b.kind &&
           a.cardinality == b.cardinality && a.filler == b.filler;
  }
  friend auto operator<=>(const Restriction& a, const Restriction& b) {
    if (auto c = a.on_property <=> b.on_property; c != 0) return c;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.cardinality <=> b.cardinality; c != 0) return c;
    return a.filler <=> b.filler;
  }
};

struct ClassDef {
  Iri iri;
  std::set<Iri> superclasses;
  std::vector<Restriction> restrictions;
  std::string label;
  std::string comment;
  // Set for expo/om/foaf/owl classes mirrored from upstream ontologies.
  bool mirror_anchor = false;
  // Optional form widget override read by formgen ("text", "datetime", ...).
  std::string widget_hint;
};

enum class PropertyKind { Object, Data };

struct PropertyDef {
  Iri iri;
  PropertyKind kind = PropertyKind::Object;
  std::string label;
  std::string comment;
};

/// T-Box: classes, subclass graph, restrictions and properties.
///
/// Classes outside the iedm namespace are frozen once the built-in ontology
/// is loaded; attempts to add superclasses or restrictions to them throw
/// FrozenClass and leave the ontology untouched.
class Ontology {
 public:
  /// The embedded IEDM T-Box. Returned by reference to a process-wide,
  /// immutable instance; copy it to extend.
  static const Ontology& builtin();

  bool has_class(const Iri& iri) const;
  bool has_property(const Iri& iri) const;
  const ClassDef& get_class(const Iri& iri) const;  // UnknownClass
  const PropertyDef& get_property(const Iri& iri) const;  // UnknownProperty
  const std::map<Iri, ClassDef>& classes() const noexcept { return classes_; }
  const std::map<Iri, PropertyDef>& properties() const noexcept { return properties_; }

  /// Maps read aliases (iedm:DUTirradiation, iedm:DUTirradiationExperiment)
  /// onto their canonical class; other Iris are returned unchanged.
  Iri canonical_class(const Iri& iri) const;

  /// Reflexive-transitive superclass reachability. UnknownClass if either
  /// Iri is not registered.
  bool is_subclass_of(const Iri& sub, const Iri& sup) const;

  /// All ancestors of a class, including itself.
  const std::set<Iri>& ancestors(const Iri& cls) const;
  /// Direct subclasses.
  std::set<Iri> subclasses(const Iri& cls) const;
  /// Leaf classes strictly below `cls`.
  std::set<Iri> leaf_descendants(const Iri& cls) const;

  /// Own + inherited restrictions, deduplicated, sorted by
  /// (property, kind, cardinality, filler).
  std::vector<Restriction> effective_restrictions(const Iri& cls) const;

  // Mutation. New classes/properties must live in the iedm namespace.
  void add_class(ClassDef def);
  void add_property(PropertyDef def);
  void add_superclass(const Iri& cls, const Iri& super);
  void add_restriction(const Iri& cls, Restriction r);

  /// Marks every non-iedm class as frozen. Called once after built-in load.
  void freeze_foreign();

 private:
  void check_mutable(const Iri& cls) const;
  void rebuild_closure();

  std::map<Iri, ClassDef> classes_;
  std::map<Iri, PropertyDef> properties_;
  std::map<Iri, Iri> aliases_;
  std::map<Iri, std::set<Iri>> ancestors_;
  bool foreign_frozen_ = false;

  friend Ontology make_builtin_ontology();
};

/// Builds a fresh copy of the embedded T-Box (unlike builtin(), not shared).
Ontology make_builtin_ontology();

/// Role classes subject to the role-sanity rule.
const std::vector<Iri>& role_classes();

}  // namespace iedm
