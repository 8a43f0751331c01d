#include <algorithm>
#include <cctype>
#include <set>

#include "iedm/datamgr/service.hpp"
#include "iedm/error.hpp"

namespace iedm::datamgr {

const std::map<Iri, RadiationFieldSpec>& radiation_field_catalog() {
  static const std::map<Iri, RadiationFieldSpec> catalog = [] {
    std::map<Iri, RadiationFieldSpec> c;
    c[vocab::iedm("Protons_24GeV")] = {
        {vocab::iedm("Proton")},
        QuantityValue::make(24, vocab::iedm("RelativisticMomentum"))};
    c[vocab::iedm("Pions_120GeV")] = {
        {vocab::iedm("ChargedPion")},
        QuantityValue::make(120, vocab::iedm("RelativisticMomentum"))};
    c[vocab::iedm("CHARM_MixedField")] = {
        {vocab::iedm("Proton"), vocab::iedm("Neutron"), vocab::iedm("ChargedPion"),
         vocab::iedm("Photon")},
        std::nullopt};
    return c;
  }();
  return catalog;
}

std::string sanitize_local(std::string_view text) {
  std::string out;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '_' || c == '-' || c == '.') ? c : '_';
  }
  while (!out.empty() && out.back() == '.') out.back() = '_';
  if (out.empty() || !(std::isalpha(static_cast<unsigned char>(out[0])) || out[0] == '_'))
    out.insert(out.begin(), '_');
  return out;
}

namespace {

std::string particle_word(const RadiationFieldSpec& field) {
  if (field.particles.size() != 1) return "particles";
  std::string w = field.particles.front().local();
  for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return w + "s";
}

// _3e17_protons_per_square_cm for fluences, _<value>_<unit> otherwise.
std::string quantity_local(const QuantityValue& q, const RadiationFieldSpec& field) {
  std::string value = "_" + format_number(q.value) + "_";
  if (q.unit == vocab::om("reciprocalSquareCentimetre"))
    return sanitize_local(value + particle_word(field) + "_per_square_cm");
  return sanitize_local(value + q.unit.local());
}

Iri unique(const Dataset& ds, std::set<Iri>& taken, const std::string& local,
           const std::string& suffix) {
  Iri iri = vocab::iedm(local);
  if (!ds.contains(iri) && !taken.count(iri)) {
    taken.insert(iri);
    return iri;
  }
  for (int n = 0;; ++n) {
    Iri alt = vocab::iedm(local + "_" + sanitize_local(suffix) + (n ? "_" + std::to_string(n) : ""));
    if (!ds.contains(alt) && !taken.count(alt)) {
      taken.insert(alt);
      return alt;
    }
  }
}

void add_person(Dataset& ds, const Ontology& onto, const Iri& iri, const Iri& role) {
  ds.ensure(onto, vocab::iedm("User"), iri);
  ds.ensure(onto, role, iri);
}

}  // namespace

Dataset experiment_dataset(const ExperimentRecord& exp,
                           const std::map<std::string, SampleRecord>& samples,
                           const Ontology& onto) {
  Dataset ds;
  std::set<Iri> taken;
  const std::string base = sanitize_local(exp.title.empty() ? exp.id : exp.title);
  const Iri e = vocab::iedm(base);
  ds.mint(onto, vocab::iedm("IrradiationExperiment"), e);

  Iri procedure = vocab::iedm(base + "Procedure");
  ds.mint(onto, exp.irradiation_category, procedure);
  ds.assert_statement(e, vocab::iedm("hasIrradiationCategory"), procedure, onto);
  if (!exp.technical_requirements.empty()) {
    Iri tr = vocab::iedm(base + "TechnicalRequirements");
    ds.mint(onto, vocab::iedm("TechnicalRequirements"), tr)
        .values.insert(Literal::string(exp.technical_requirements));
    if (onto.is_subclass_of(exp.irradiation_category, vocab::iedm("PassiveCustomIrradiation")))
      ds.assert_statement(procedure, vocab::iedm("hasTechnicalRequirements"), tr, onto);
  }

  Iri admin = vocab::iedm(base + "AdminInfo");
  ds.mint(onto, vocab::iedm("AdminInfoIrradiationExperiment"), admin);
  ds.assert_statement(e, vocab::expo("HasPart"), admin, onto);
  auto person = [](const std::string& email) { return vocab::iedm(sanitize_local(email)); };
  if (!exp.admin.responsible.empty()) {
    add_person(ds, onto, person(exp.admin.responsible), vocab::iedm("ResponsiblePerson"));
    ds.assert_statement(admin, vocab::iedm("hasRole"), person(exp.admin.responsible), onto);
  }
  if (!exp.admin.operator_.empty()) {
    add_person(ds, onto, person(exp.admin.operator_), vocab::iedm("Operator"));
    ds.assert_statement(admin, vocab::iedm("hasRole"), person(exp.admin.operator_), onto);
  }

  ds.ensure(onto, vocab::iedm("IrradiationFacility"), exp.facility);
  ds.assert_statement(e, vocab::iedm("performedAt"), exp.facility, onto);
  if (!exp.admin.coordinator.empty()) {
    add_person(ds, onto, person(exp.admin.coordinator), vocab::iedm("IrradiationFacilityCoordinator"));
    ds.assert_statement(exp.facility, vocab::iedm("hasRole"), person(exp.admin.coordinator), onto);
  }
  if (!exp.admin.manager.empty()) {
    add_person(ds, onto, person(exp.admin.manager), vocab::iedm("IrradiationFacilityManager"));
    ds.assert_statement(exp.facility, vocab::iedm("hasRole"), person(exp.admin.manager), onto);
  }
  for (const auto& [iri, ind] : ds.individuals()) taken.insert(iri);

  std::map<std::string, Iri> duts;
  for (std::size_t i = 0; i < exp.dut_irradiations.size(); ++i) {
    const auto& rec = exp.dut_irradiations[i];
    std::string local = !rec.name.empty() ? rec.name
                        : i == 0          ? base + "Irradiation"
                                          : base + "Irradiation" + std::to_string(i + 1);
    Iri irr = unique(ds, taken, sanitize_local(local), rec.id);
    ds.mint(onto, vocab::iedm("DUTIrradiation"), irr);
    ds.assert_statement(e, vocab::iedm("hasPart"), irr, onto);

    auto dut_it = duts.find(rec.dut_id);
    if (dut_it == duts.end()) {
      auto s = samples.find(rec.dut_id);
      std::string name = s == samples.end() ? rec.dut_id : s->second.name;
      dut_it = duts.emplace(rec.dut_id, unique(ds, taken, sanitize_local(name), rec.dut_id)).first;
      ds.mint(onto, vocab::iedm("DUT"), dut_it->second);
    }
    ds.assert_statement(irr, vocab::iedm("hasDUT"), dut_it->second, onto);

    ds.assert_statement(irr, vocab::iedm("hasStartTime"), add_time_position(ds, onto, rec.start).iri,
                        onto);
    if (rec.end)
      ds.assert_statement(irr, vocab::iedm("hasEndTime"), add_time_position(ds, onto, *rec.end).iri,
                          onto);

    const auto& catalog = radiation_field_catalog();
    auto field = catalog.find(rec.radiation_field);
    if (field == catalog.end())
      throw Error(ErrorCode::NotFound, "unknown radiation field " + rec.radiation_field.str());
    add_radiation_field(ds, onto, rec.radiation_field, field->second);
    ds.assert_statement(irr, vocab::iedm("hasRadiationField"), rec.radiation_field, onto);

    if (rec.cumulated) {
      Iri q = unique(ds, taken, quantity_local(*rec.cumulated, field->second), rec.id);
      add_quantity(ds, onto, q, *rec.cumulated);
      ds.assert_statement(irr, vocab::iedm("hasResult"), q, onto);
      ds.assert_statement(e, vocab::iedm("hasResult"), q, onto);
    }
    for (const auto& [iri, ind] : ds.individuals()) taken.insert(iri);
  }
  return ds;
}

}  // namespace iedm::datamgr
