#include "iedm/ontology.hpp"

#include <algorithm>
#include <deque>

#include "iedm/error.hpp"

namespace iedm {

std::string_view to_string(RestrictionKind kind) {
  return kind == RestrictionKind::Exactly ? "exactly" : "min";
}

Restriction Restriction::exactly(Iri property, unsigned n, Iri filler, std::string note) {
  return {std::move(property), RestrictionKind::Exactly, n, std::move(filler), std::move(note)};
}

Restriction Restriction::some(Iri property, Iri filler, std::string note) {
  return {std::move(property), RestrictionKind::Min, 1, std::move(filler), std::move(note)};
}

Restriction Restriction::min(Iri property, unsigned n, Iri filler, std::string note) {
  return {std::move(property), RestrictionKind::Min, n, std::move(filler), std::move(note)};
}

std::string Restriction::str() const {
  return on_property.str() + " " + std::string(to_string(kind)) + " " +
         std::to_string(cardinality) + " " + filler.str();
}

bool Ontology::has_class(const Iri& iri) const { return classes_.count(canonical_class(iri)) > 0; }

bool Ontology::has_property(const Iri& iri) const { return properties_.count(iri) > 0; }

const ClassDef& Ontology::get_class(const Iri& iri) const {
  auto it = classes_.find(canonical_class(iri));
  if (it == classes_.end()) throw Error(ErrorCode::UnknownClass, "unknown class " + iri.str());
  return it->second;
}

const PropertyDef& Ontology::get_property(const Iri& iri) const {
  auto it = properties_.find(iri);
  if (it == properties_.end())
    throw Error(ErrorCode::UnknownProperty, "unknown property " + iri.str());
  return it->second;
}

Iri Ontology::canonical_class(const Iri& iri) const {
  auto it = aliases_.find(iri);
  return it == aliases_.end() ? iri : it->second;
}

const std::set<Iri>& Ontology::ancestors(const Iri& cls) const {
  auto it = ancestors_.find(canonical_class(cls));
  if (it == ancestors_.end()) throw Error(ErrorCode::UnknownClass, "unknown class " + cls.str());
  return it->second;
}

bool Ontology::is_subclass_of(const Iri& sub, const Iri& sup) const {
  const auto& anc = ancestors(sub);
  Iri target = canonical_class(sup);
  if (!classes_.count(target)) throw Error(ErrorCode::UnknownClass, "unknown class " + sup.str());
  return anc.count(target) > 0;
}

std::set<Iri> Ontology::subclasses(const Iri& cls) const {
  Iri c = get_class(cls).iri;
  std::set<Iri> out;
  for (const auto& [iri, def] : classes_)
    if (def.superclasses.count(c)) out.insert(iri);
  return out;
}

std::set<Iri> Ontology::leaf_descendants(const Iri& cls) const {
  Iri c = get_class(cls).iri;
  std::set<Iri> out;
  for (const auto& [iri, def] : classes_) {
    if (iri == c || !ancestors_.at(iri).count(c)) continue;
    bool leaf = std::none_of(classes_.begin(), classes_.end(), [&](const auto& kv) {
      return kv.second.superclasses.count(iri) > 0;
    });
    if (leaf) out.insert(iri);
  }
  return out;
}

std::vector<Restriction> Ontology::effective_restrictions(const Iri& cls) const {
  std::vector<Restriction> out;
  for (const auto& anc : ancestors(cls)) {
    for (const auto& r : classes_.at(anc).restrictions) {
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Ontology::check_mutable(const Iri& cls) const {
  if (foreign_frozen_ && cls.prefix() != "iedm")
    throw Error(ErrorCode::FrozenClass,
                cls.str() + " belongs to an imported namespace and cannot be modified");
}

void Ontology::add_class(ClassDef def) {
  check_mutable(def.iri);
  if (def.iri.is_foreign()) throw Error(ErrorCode::InvalidIri, "classes need a registered prefix");
  if (classes_.count(def.iri) || aliases_.count(def.iri))
    throw Error(ErrorCode::AlreadyExists, "class " + def.iri.str() + " already defined");
  for (const auto& s : def.superclasses)
    if (!classes_.count(s)) throw Error(ErrorCode::UnknownClass, "unknown superclass " + s.str());
  for (const auto& r : def.restrictions) {
    if (!properties_.count(r.on_property))
      throw Error(ErrorCode::UnknownProperty, "unknown property " + r.on_property.str());
    if (!classes_.count(r.filler) && r.filler != def.iri)
      throw Error(ErrorCode::UnknownClass, "unknown filler " + r.filler.str());
    if (r.kind == RestrictionKind::Exactly && r.cardinality < 1)
      throw Error(ErrorCode::ValidationError, "exact restrictions need cardinality >= 1");
  }
  Iri key = def.iri;
  classes_.emplace(key, std::move(def));
  rebuild_closure();
}

void Ontology::add_property(PropertyDef def) {
  if (foreign_frozen_ && def.iri.prefix() != "iedm")
    throw Error(ErrorCode::FrozenClass, def.iri.str() + " belongs to an imported namespace");
  if (def.kind == PropertyKind::Data && def.iri != vocab::has_value())
    throw Error(ErrorCode::ValidationError, "iedm:hasValue is the only data property");
  if (properties_.count(def.iri))
    throw Error(ErrorCode::AlreadyExists, "property " + def.iri.str() + " already defined");
  Iri key = def.iri;
  properties_.emplace(key, std::move(def));
}

void Ontology::add_superclass(const Iri& cls, const Iri& super) {
  Iri c = canonical_class(cls);
  Iri s = canonical_class(super);
  auto it = classes_.find(c);
  if (it == classes_.end()) throw Error(ErrorCode::UnknownClass, "unknown class " + cls.str());
  check_mutable(c);
  if (!classes_.count(s)) throw Error(ErrorCode::UnknownClass, "unknown class " + super.str());
  // Adding c -> s closes a cycle iff c is already an ancestor of s.
  if (ancestors_.at(s).count(c))
    throw Error(ErrorCode::CycleDetected,
                "making " + c.str() + " a subclass of " + s.str() + " creates a cycle");
  it->second.superclasses.insert(s);
  rebuild_closure();
}

void Ontology::add_restriction(const Iri& cls, Restriction r) {
  Iri c = canonical_class(cls);
  auto it = classes_.find(c);
  if (it == classes_.end()) throw Error(ErrorCode::UnknownClass, "unknown class " + cls.str());
  check_mutable(c);
  if (!properties_.count(r.on_property))
    throw Error(ErrorCode::UnknownProperty, "unknown property " + r.on_property.str());
  if (get_property(r.on_property).kind != PropertyKind::Object)
    throw Error(ErrorCode::ValidationError, "restrictions apply to object properties only");
  r.filler = canonical_class(r.filler);
  if (!classes_.count(r.filler)) throw Error(ErrorCode::UnknownClass, "unknown filler " + r.filler.str());
  if (r.kind == RestrictionKind::Exactly && r.cardinality < 1)
    throw Error(ErrorCode::ValidationError, "exact restrictions need cardinality >= 1");
  auto& rs = it->second.restrictions;
  if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(std::move(r));
}

void Ontology::freeze_foreign() { foreign_frozen_ = true; }

void Ontology::rebuild_closure() {
  ancestors_.clear();
  for (const auto& [iri, def] : classes_) {
    std::set<Iri> seen{iri};
    std::deque<Iri> queue{iri};
    while (!queue.empty()) {
      Iri cur = queue.front();
      queue.pop_front();
      auto it = classes_.find(cur);
      if (it == classes_.end()) continue;
      for (const auto& s : it->second.superclasses)
        if (seen.insert(s).second) queue.push_back(s);
    }
    ancestors_.emplace(iri, std::move(seen));
  }
}

const std::vector<Iri>& role_classes() {
  static const std::vector<Iri> roles = {
      vocab::iedm("Operator"), vocab::iedm("ResponsiblePerson"),
      vocab::iedm("IrradiationFacilityManager"), vocab::iedm("IrradiationFacilityCoordinator")};
  return roles;
}

const Ontology& Ontology::builtin() {
  static const Ontology onto = make_builtin_ontology();
  return onto;
}

}  // namespace iedm
