// Embedded IEDM T-Box: the iedm classes plus the subset of EXPO, OM, FOAF and
// OWL classes they anchor to.

#include <initializer_list>

#include "iedm/ontology.hpp"

namespace iedm {
namespace {

struct ClassRow {
  const char* iri;
  std::initializer_list<const char*> supers;
  const char* label;
  const char* comment;
  const char* widget_hint = "";
};

struct PropertyRow {
  const char* iri;
  PropertyKind kind;
  const char* label;
  const char* comment;
};

const PropertyRow kProperties[] = {
    {"iedm:hasValue", PropertyKind::Data, "value",
     "The single IEDM data property; attaches typed literals to any individual."},
    {"expo:HasPart", PropertyKind::Object, "has part", "EXPO part-whole relation (mirror anchor)."},
    {"iedm:hasPart", PropertyKind::Object, "DUT irradiations",
     "Part-whole relation from an experiment to its DUT irradiations; specializes expo:HasPart."},
    {"iedm:hasIrradiationCategory", PropertyKind::Object, "irradiation category",
     "Procedure category of an irradiation experiment."},
    {"iedm:hasResult", PropertyKind::Object, "cumulated result",
     "Cumulated dosimetric quantity reached by an irradiation."},
    {"iedm:hasStartTime", PropertyKind::Object, "start time", "Start of the radiation exposure."},
    {"iedm:hasEndTime", PropertyKind::Object, "end time", "Completion of the radiation exposure."},
    {"iedm:hasRadiationField", PropertyKind::Object, "radiation field",
     "Field the DUT is exposed to."},
    {"iedm:hasDUT", PropertyKind::Object, "device under test", "The irradiated device."},
    {"iedm:performedAt", PropertyKind::Object, "facility", "Facility hosting the experiment."},
    {"iedm:hasRole", PropertyKind::Object, "role holder",
     "Person holding a role in an experiment or facility."},
    {"iedm:hasUnit", PropertyKind::Object, "unit", "Unit of measure of a quantity."},
    {"iedm:hasMeasurementError", PropertyKind::Object, "measurement error",
     "Relative error individual; mirrors the expo:MeasurementError usage."},
    {"iedm:hasParticle", PropertyKind::Object, "particle", "Particle composing a radiation field."},
    {"iedm:hasBeamMomentum", PropertyKind::Object, "beam momentum",
     "Relativistic momentum of the beam particles."},
    {"iedm:hasTechnicalRequirements", PropertyKind::Object, "technical requirements",
     "Requirements a custom passive irradiation has to implement."},
    {"iedm:hasDosimeter", PropertyKind::Object, "dosimeter",
     "Reference object measuring the delivered fluence or dose."},
};

const ClassRow kClasses[] = {
    // Mirror anchors.
    {"owl:Thing", {}, "Thing", "OWL top class."},
    {"expo:Object", {"owl:Thing"}, "Object", "EXPO physical object."},
    {"expo:AdminInfoExperiment", {"owl:Thing"}, "Administrative information",
     "EXPO administrative information of an experiment."},
    {"expo:ProcedureExecuteExperiment", {"owl:Thing"}, "Experiment procedure",
     "EXPO plan of actions executing an experiment."},
    {"expo:Agent", {"owl:Thing"}, "Agent", "EXPO agent."},
    {"expo:SentientAgent", {"expo:Agent"}, "Sentient agent",
     "EXPO agent with rights and possibly responsibilities."},
    {"expo:SubjectRole", {"owl:Thing"}, "Subject role", "EXPO role predicate."},
    {"expo:User", {"expo:SubjectRole"}, "User role", "EXPO user role."},
    {"expo:Quantity", {"owl:Thing"}, "Quantity (EXPO)", "EXPO quantity; OM quantities are preferred."},
    {"expo:MeasurementError", {"owl:Thing"}, "Measurement error",
     "Error attached to a measured quantity; value is a fraction."},
    {"om:Quantity", {"owl:Thing"}, "Quantity", "OM quantity."},
    {"om:Energy", {"om:Quantity"}, "Energy", "OM energy."},
    {"om:AbsorbedDose", {"om:Quantity"}, "Absorbed dose", "OM absorbed dose."},
    {"om:Activity", {"om:Quantity"}, "Activity", "OM activity."},
    {"om:Unit", {"owl:Thing"}, "Unit", "OM unit of measure."},
    {"foaf:Agent", {"owl:Thing"}, "Agent (FOAF)", "FOAF agent: person, group or organization."},
    {"foaf:Person", {"foaf:Agent"}, "Person", "FOAF person."},
    {"foaf:Group", {"foaf:Agent"}, "Group", "FOAF group."},
    {"foaf:Organization", {"foaf:Agent"}, "Organization", "FOAF organization."},

    // IEDM.
    {"iedm:IrradiationExperiment", {"owl:Thing"}, "Irradiation experiment",
     "Whole experiment where DUTs are exposed to a radiation field."},
    {"iedm:AdminInfoIrradiationExperiment", {"expo:AdminInfoExperiment"},
     "Administrative information", "Administrative information of an irradiation experiment."},
    {"iedm:PassiveStandardIrradiation", {"expo:ProcedureExecuteExperiment"},
     "Passive standard irradiation", "DUT simply placed into the radiation field."},
    {"iedm:PassiveCustomIrradiation", {"expo:ProcedureExecuteExperiment"},
     "Passive custom irradiation", "Irradiation with specific technical requirements."},
    {"iedm:ActiveIrradiation", {"expo:ProcedureExecuteExperiment"}, "Active irradiation",
     "Irradiation with active data acquisition and readout during exposure."},
    {"iedm:TechnicalRequirements", {"owl:Thing"}, "Technical requirements",
     "Free-text requirements of a custom irradiation.", "text"},
    {"iedm:DUTIrradiation", {"owl:Thing"}, "DUT irradiation",
     "Irradiation of exactly one DUT between a start and a completion time."},
    {"iedm:IrradiationExperimentObject", {"expo:Object"}, "Irradiation experiment object",
     "Object exposed to a radiation field or under test."},
    {"iedm:DUT", {"iedm:IrradiationExperimentObject"}, "Device under test", "Device under test."},
    {"iedm:RadiationField", {"owl:Thing"}, "Radiation field", "Field composed of particles."},
    {"iedm:SingularField", {"iedm:RadiationField"}, "Singular field",
     "Field with a single particle type."},
    {"iedm:MixedField", {"iedm:RadiationField"}, "Mixed field",
     "Field with two or more particle types."},
    {"iedm:Particle", {"expo:Object"}, "Particle", "Particle type composing a radiation field."},
    {"iedm:DosimetricQuantity", {"om:Quantity"}, "Dosimetric quantity",
     "Quantity describing delivered radiation."},
    {"iedm:CumulatedQuantity", {"iedm:DosimetricQuantity"}, "Cumulated quantity",
     "Target quantity a DUT accumulates during an irradiation."},
    {"iedm:Fluence", {"iedm:CumulatedQuantity"}, "Fluence",
     "Number of particles received per unit area."},
    {"iedm:AbsorbedDose", {"iedm:CumulatedQuantity", "om:AbsorbedDose"}, "Absorbed dose",
     "Radiation energy delivered per unit mass."},
    {"iedm:RelativisticMomentum", {"om:Quantity"}, "Relativistic momentum",
     "Momentum of beam particles."},
    {"iedm:InteractionLength", {"om:Quantity"}, "Interaction length",
     "Characteristic length of particle-matter interaction."},
    {"iedm:InteractionLengthOccupancy", {"om:Quantity"}, "Interaction length occupancy",
     "Fraction of an interaction length presented by a DUT layer stack."},
    {"iedm:Element", {"expo:Object"}, "Element", "Chemical element."},
    {"iedm:Compound", {"expo:Object"}, "Compound", "Mixture of elements."},
    {"iedm:Layer", {"expo:Object"}, "Layer",
     "Slab of one material along the beam axis of a DUT."},
    {"iedm:User", {"expo:SentientAgent", "foaf:Agent"}, "User", "Person, group or organization."},
    {"iedm:IrradiationFacilityUser", {"expo:User", "iedm:User"}, "Irradiation facility user",
     "User role within an irradiation facility."},
    {"iedm:Operator", {"iedm:IrradiationFacilityUser"}, "Operator",
     "Person performing the irradiation experiment."},
    {"iedm:ResponsiblePerson", {"iedm:IrradiationFacilityUser"}, "Responsible person",
     "Person in charge of an irradiation experiment."},
    {"iedm:IrradiationFacilityCoordinator", {"expo:User"}, "Facility coordinator",
     "Coordinator role of an irradiation facility."},
    {"iedm:IrradiationFacilityManager", {"expo:User"}, "Facility manager",
     "Manager role of an irradiation facility."},
    {"iedm:IrradiationFacility", {"expo:Object"}, "Irradiation facility",
     "Infrastructure hosting irradiation experiments."},
    {"iedm:TimePosition", {"owl:Thing"}, "Time position", "Instant in time.", "datetime"},
};

struct RestrictionRow {
  const char* cls;
  const char* property;
  RestrictionKind kind;
  unsigned n;
  const char* filler;
  const char* note;
};

const RestrictionRow kRestrictions[] = {
    {"iedm:IrradiationExperiment", "iedm:hasIrradiationCategory", RestrictionKind::Exactly, 1,
     "expo:ProcedureExecuteExperiment", "exact: every experiment belongs to one category"},
    {"iedm:IrradiationExperiment", "expo:HasPart", RestrictionKind::Exactly, 1,
     "iedm:AdminInfoIrradiationExperiment", "exact: one administrative record"},
    {"iedm:IrradiationExperiment", "iedm:hasPart", RestrictionKind::Min, 1, "iedm:DUTIrradiation",
     "existential: at least one DUT irradiation"},
    {"iedm:IrradiationExperiment", "iedm:hasResult", RestrictionKind::Min, 1,
     "iedm:CumulatedQuantity", "existential: some cumulated quantity"},
    {"iedm:IrradiationExperiment", "iedm:performedAt", RestrictionKind::Exactly, 1,
     "iedm:IrradiationFacility", "exact: hosted by one facility"},
    {"iedm:AdminInfoIrradiationExperiment", "iedm:hasRole", RestrictionKind::Min, 1,
     "iedm:ResponsiblePerson", "existential: a person in charge is required"},
    {"iedm:AdminInfoIrradiationExperiment", "iedm:hasRole", RestrictionKind::Min, 1,
     "iedm:Operator", "existential: an operator is required"},
    {"iedm:PassiveCustomIrradiation", "iedm:hasTechnicalRequirements", RestrictionKind::Min, 1,
     "iedm:TechnicalRequirements", "existential: requirements must be specified"},
    {"iedm:DUTIrradiation", "iedm:hasDUT", RestrictionKind::Exactly, 1, "iedm:DUT",
     "exact: one and only one DUT"},
    {"iedm:DUTIrradiation", "iedm:hasStartTime", RestrictionKind::Exactly, 1, "iedm:TimePosition",
     "exact: one start instant"},
    {"iedm:DUTIrradiation", "iedm:hasEndTime", RestrictionKind::Exactly, 1, "iedm:TimePosition",
     "exact: one completion instant"},
    {"iedm:DUTIrradiation", "iedm:hasRadiationField", RestrictionKind::Exactly, 1,
     "iedm:RadiationField", "exact: one field per DUT irradiation"},
    {"iedm:DUTIrradiation", "iedm:hasResult", RestrictionKind::Min, 1, "iedm:CumulatedQuantity",
     "existential: some cumulated quantity"},
    {"iedm:RadiationField", "iedm:hasParticle", RestrictionKind::Min, 1, "iedm:Particle",
     "existential: composed of particles"},
    {"iedm:SingularField", "iedm:hasParticle", RestrictionKind::Exactly, 1, "iedm:Particle",
     "exact: one particle type"},
    {"iedm:MixedField", "iedm:hasParticle", RestrictionKind::Min, 2, "iedm:Particle",
     "min 2: several particle types"},
    {"iedm:DosimetricQuantity", "iedm:hasUnit", RestrictionKind::Exactly, 1, "om:Unit",
     "exact: one unit"},
    {"iedm:RelativisticMomentum", "iedm:hasUnit", RestrictionKind::Exactly, 1, "om:Unit",
     "exact: one unit"},
};

}  // namespace

Ontology make_builtin_ontology() {
  Ontology onto;
  for (const auto& row : kProperties) {
    PropertyDef def;
    def.iri = Iri::parse(row.iri);
    def.kind = row.kind;
    def.label = row.label;
    def.comment = row.comment;
    onto.add_property(std::move(def));
  }
  for (const auto& row : kClasses) {
    ClassDef def;
    def.iri = Iri::parse(row.iri);
    for (const char* s : row.supers) def.superclasses.insert(Iri::parse(s));
    def.label = row.label;
    def.comment = row.comment;
    def.widget_hint = row.widget_hint;
    def.mirror_anchor = def.iri.prefix() != "iedm";
    onto.add_class(std::move(def));
  }
  for (const auto& row : kRestrictions) {
    onto.add_restriction(Iri::parse(row.cls),
                         Restriction{Iri::parse(row.property), row.kind, row.n,
                                     Iri::parse(row.filler), row.note});
  }
  onto.aliases_.emplace(vocab::iedm("DUTirradiation"), vocab::iedm("DUTIrradiation"));
  onto.aliases_.emplace(vocab::iedm("DUTirradiationExperiment"), vocab::iedm("DUTIrradiation"));
  onto.freeze_foreign();
  return onto;
}

}  // namespace iedm
