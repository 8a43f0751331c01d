#include "iedm/dataset.hpp"

#include <cmath>

#include "iedm/error.hpp"

namespace iedm {

std::vector<Iri> Individual::targets(const Iri& property) const {
  std::vector<Iri> out;
  for (const auto& a : object_assertions)
    if (a.property == property) out.push_back(a.target);
  return out;
}

void assert_statement(Individual& ind, const Iri& property, const Value& value,
                      const Ontology& onto) {
  if (property == vocab::rdf_type()) {
    const auto* cls = std::get_if<Iri>(&value);
    if (!cls) throw Error(ErrorCode::LiteralOnObjectProperty, "rdf:type needs a class Iri");
    ind.types.insert(onto.get_class(*cls).iri);
    return;
  }
  const auto& def = onto.get_property(property);
  if (def.kind == PropertyKind::Data) {
    const auto* lit = std::get_if<Literal>(&value);
    if (!lit)
      throw Error(ErrorCode::ObjectOnDataProperty,
                  property.str() + " is a data property; an Iri was given");
    ind.values.insert(*lit);
    return;
  }
  const auto* target = std::get_if<Iri>(&value);
  if (!target)
    throw Error(ErrorCode::LiteralOnObjectProperty,
                property.str() + " is an object property; a literal was given");
  ind.object_assertions.insert({property, *target});
}

const Individual* Dataset::find(const Iri& iri) const {
  auto it = individuals_.find(iri);
  return it == individuals_.end() ? nullptr : &it->second;
}

Individual* Dataset::find(const Iri& iri) {
  auto it = individuals_.find(iri);
  return it == individuals_.end() ? nullptr : &it->second;
}

const Individual& Dataset::at(const Iri& iri) const {
  if (const auto* ind = find(iri)) return *ind;
  throw Error(ErrorCode::NotFound, "no individual " + iri.str());
}

Individual& Dataset::at(const Iri& iri) {
  if (auto* ind = find(iri)) return *ind;
  throw Error(ErrorCode::NotFound, "no individual " + iri.str());
}

Individual& Dataset::mint(const Ontology& onto, const Iri& cls, const Iri& iri) {
  Iri canonical = onto.get_class(cls).iri;
  if (contains(iri)) throw Error(ErrorCode::AlreadyExists, "individual " + iri.str() + " exists");
  Individual ind;
  ind.iri = iri;
  ind.types.insert(canonical);
  return individuals_.emplace(iri, std::move(ind)).first->second;
}

Individual& Dataset::ensure(const Ontology& onto, const Iri& cls, const Iri& iri) {
  if (auto* ind = find(iri)) {
    ind->types.insert(onto.get_class(cls).iri);
    return *ind;
  }
  return mint(onto, cls, iri);
}

void Dataset::assert_statement(const Iri& subject, const Iri& property, const Value& value,
                               const Ontology& onto) {
  iedm::assert_statement(at(subject), property, value, onto);
}

void Dataset::put(Individual ind) {
  Iri key = ind.iri;
  individuals_[key] = std::move(ind);
}

bool Dataset::erase(const Iri& iri) { return individuals_.erase(iri) > 0; }

Individual& mint_individual(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& iri) {
  return ds.mint(onto, cls, iri);
}

Iri RadiationFieldSpec::classify() const {
  if (particles.empty())
    throw Error(ErrorCode::ValidationError, "a radiation field needs at least one particle");
  std::set<Iri> distinct(particles.begin(), particles.end());
  return distinct.size() == 1 ? vocab::iedm("SingularField") : vocab::iedm("MixedField");
}

Iri quantity_class_for_kind(const Iri& kind) {
  if (kind == vocab::om("AbsorbedDose")) return vocab::iedm("AbsorbedDose");
  return kind;
}

namespace {

Literal fraction_literal(double v) {
  std::string s = format_number(v);
  if (s.find('e') != std::string::npos) return Literal(s, Datatype::Double);
  return Literal(s, Datatype::Decimal);
}

std::string percent_slug(double fraction) {
  double pct = std::round(fraction * 100.0 * 1e9) / 1e9;
  return "_" + format_number(pct) + "_per_cent";
}

}  // namespace

Individual& add_quantity(Dataset& ds, const Ontology& onto, const Iri& iri,
                         const QuantityValue& q) {
  auto& qi = ds.ensure(onto, quantity_class_for_kind(q.kind), iri);
  qi.values.insert(Literal::number(q.value));
  ds.ensure(onto, vocab::om("Unit"), q.unit);
  assert_statement(ds.at(iri), vocab::iedm("hasUnit"), q.unit, onto);
  if (q.relative_error) {
    Iri err = vocab::iedm(percent_slug(*q.relative_error));
    auto& ei = ds.ensure(onto, vocab::expo("MeasurementError"), err);
    ei.values.insert(fraction_literal(*q.relative_error));
    assert_statement(ds.at(iri), vocab::iedm("hasMeasurementError"), err, onto);
  }
  return ds.at(iri);
}

Individual& add_time_position(Dataset& ds, const Ontology& onto, const TimePosition& t) {
  Iri iri = vocab::iedm(t.slug());
  auto& ti = ds.ensure(onto, vocab::iedm("TimePosition"), iri);
  ti.values.insert(Literal(t.iso(), Datatype::DateTime));
  return ti;
}

Individual& add_radiation_field(Dataset& ds, const Ontology& onto, const Iri& iri,
                                const RadiationFieldSpec& spec) {
  Iri cls = spec.classify();
  ds.ensure(onto, cls, iri);
  for (const auto& p : spec.particles) {
    ds.ensure(onto, vocab::iedm("Particle"), p);
    ds.assert_statement(iri, vocab::iedm("hasParticle"), p, onto);
  }
  if (spec.beam_momentum) {
    const auto& q = *spec.beam_momentum;
    Iri qiri = vocab::iedm("_" + format_number(q.value) + "_" + q.unit.local());
    add_quantity(ds, onto, qiri, q);
    ds.assert_statement(iri, vocab::iedm("hasBeamMomentum"), qiri, onto);
  }
  return ds.at(iri);
}

RadiationFieldSpec radiation_field_spec(const Dataset& ds, const Iri& iri) {
  const auto& field = ds.at(iri);
  RadiationFieldSpec spec;
  spec.particles = field.targets(vocab::iedm("hasParticle"));
  for (const auto& m : field.targets(vocab::iedm("hasBeamMomentum"))) {
    const auto* qi = ds.find(m);
    if (!qi) continue;
    QuantityValue q;
    q.kind = vocab::iedm("RelativisticMomentum");
    for (const auto& lit : qi->values)
      if (auto v = lit.as_number()) q.value = *v;
    auto units = qi->targets(vocab::iedm("hasUnit"));
    q.unit = units.empty() ? QuantityValue::default_unit(q.kind) : units.front();
    for (const auto& e : qi->targets(vocab::iedm("hasMeasurementError"))) {
      if (const auto* ei = ds.find(e))
        for (const auto& lit : ei->values)
          if (auto v = lit.as_number()) q.relative_error = *v;
    }
    spec.beam_momentum = q;
  }
  return spec;
}

}  // namespace iedm
