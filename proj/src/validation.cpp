#include "iedm/validation.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <tuple>

#ifdef IEDM_HAVE_OPENMP
#include <omp.h>
#endif

namespace iedm::validation {
namespace {

std::string join_types(const Individual& ind) {
  if (ind.types.empty()) return "untyped";
  std::string out;
  for (const auto& t : ind.types) {
    if (!out.empty()) out += ", ";
    out += t.str();
  }
  return out;
}

bool satisfies(const Individual& target, const Iri& filler, const Ontology& onto) {
  for (const auto& t : target.types)
    if (onto.has_class(t) && onto.is_subclass_of(t, filler)) return true;
  return false;
}

bool typed_below(const Individual& ind, const Iri& cls, const Ontology& onto) {
  for (const auto& t : ind.types)
    if (onto.has_class(t) && onto.is_subclass_of(t, cls)) return true;
  return false;
}

std::vector<TimePosition> instants(const Individual& ind, const Iri& property, const Dataset& ds) {
  std::vector<TimePosition> out;
  for (const auto& target : ind.targets(property)) {
    const auto* ti = ds.find(target);
    if (!ti) continue;
    for (const auto& lit : ti->values) {
      if (lit.datatype() != Datatype::DateTime) continue;
      if (auto t = TimePosition::try_parse(lit.lexical())) out.push_back(*t);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::CardinalityExact: return "CardinalityExact";
    case Rule::CardinalityMin: return "CardinalityMin";
    case Rule::FillerTypeMismatch: return "FillerTypeMismatch";
    case Rule::DanglingReference: return "DanglingReference";
    case Rule::TemporalOrder: return "TemporalOrder";
    case Rule::ValueRange: return "ValueRange";
  }
  return "Unknown";
}

bool operator<(const Violation& a, const Violation& b) {
  return std::tie(a.subject, a.rule, a.property, a.expected, a.found, a.message) <
         std::tie(b.subject, b.rule, b.property, b.expected, b.found, b.message);
}

IndividualResult check_individual(const Individual& ind, const Dataset& ds, const Ontology& onto,
                                  const Options& options) {
  IndividualResult result;
  auto emit = [&](bool soft, Violation v) {
    (soft ? result.warnings : result.violations).push_back(std::move(v));
  };

  std::vector<Restriction> restrictions;
  for (const auto& t : ind.types) {
    if (!onto.has_class(t)) continue;
    for (auto& r : onto.effective_restrictions(t))
      if (std::find(restrictions.begin(), restrictions.end(), r) == restrictions.end())
        restrictions.push_back(std::move(r));
  }
  std::sort(restrictions.begin(), restrictions.end());

  std::map<Iri, std::vector<const Restriction*>> by_property;
  for (const auto& r : restrictions) by_property[r.on_property].push_back(&r);

  // Targets must satisfy at least one filler restricting their property.
  for (const auto& a : ind.object_assertions) {
    auto it = by_property.find(a.property);
    if (it == by_property.end()) continue;
    const auto* target = ds.find(a.target);
    if (!target) continue;  // reported as DanglingReference at dataset level
    bool ok = std::any_of(it->second.begin(), it->second.end(),
                          [&](const Restriction* r) { return satisfies(*target, r->filler, onto); });
    if (ok) continue;
    std::string expected;
    for (const auto* r : it->second) {
      std::string f = r->filler.str();
      if (expected.find(f) != std::string::npos) continue;
      if (!expected.empty()) expected += " | ";
      expected += f;
    }
    emit(false, {ind.iri, Rule::FillerTypeMismatch, a.property, expected, join_types(*target),
                 a.target.str() + " on " + a.property.str() + " is not a " + expected});
  }

  for (const auto& r : restrictions) {
    std::size_t count = 0;
    for (const auto& target : ind.targets(r.on_property)) {
      const auto* ti = ds.find(target);
      if (ti && satisfies(*ti, r.filler, onto)) ++count;
    }
    std::string expected = std::to_string(r.cardinality);
    std::string found = std::to_string(count);
    if (r.kind == RestrictionKind::Exactly && count != r.cardinality) {
      bool soft = options.draft && count < r.cardinality;
      emit(soft, {ind.iri, Rule::CardinalityExact, r.on_property, expected, found,
                  r.str() + " required, found " + found});
    } else if (r.kind == RestrictionKind::Min && count < r.cardinality) {
      emit(options.draft, {ind.iri, Rule::CardinalityMin, r.on_property, expected, found,
                           r.str() + " required, found " + found});
    }
  }

  if (typed_below(ind, vocab::iedm("DUTIrradiation"), onto)) {
    auto starts = instants(ind, vocab::iedm("hasStartTime"), ds);
    auto ends = instants(ind, vocab::iedm("hasEndTime"), ds);
    if (!starts.empty() && !ends.empty()) {
      auto latest_start = *std::max_element(starts.begin(), starts.end());
      auto earliest_end = *std::min_element(ends.begin(), ends.end());
      if (earliest_end < latest_start)
        emit(false, {ind.iri, Rule::TemporalOrder, vocab::iedm("hasEndTime"),
                     ">= " + latest_start.iso(), earliest_end.iso(),
                     "irradiation ends before it starts"});
    }
  }

  bool non_negative = false;
  for (const char* cls : {"iedm:Fluence", "iedm:AbsorbedDose", "om:AbsorbedDose", "om:Activity"})
    non_negative = non_negative || typed_below(ind, Iri::parse(cls), onto);
  bool fraction = typed_below(ind, vocab::expo("MeasurementError"), onto);
  for (const auto& lit : ind.values) {
    auto v = lit.as_number();
    if (!v) continue;
    if (non_negative && !(*v >= 0.0))
      emit(false, {ind.iri, Rule::ValueRange, vocab::has_value(), ">= 0", lit.lexical(),
                   "cumulated quantities cannot be negative"});
    if (fraction && !(*v >= 0.0 && *v <= 1.0))
      emit(false, {ind.iri, Rule::ValueRange, vocab::has_value(), "in [0, 1]", lit.lexical(),
                   "relative errors are fractions"});
  }

  bool has_role = std::any_of(role_classes().begin(), role_classes().end(),
                              [&](const Iri& role) { return typed_below(ind, role, onto); });
  if (has_role && !typed_below(ind, vocab::iedm("User"), onto))
    emit(false, {ind.iri, Rule::FillerTypeMismatch, std::nullopt, vocab::iedm("User").str(),
                 join_types(ind), "role holders must also be typed iedm:User"});

  std::sort(result.violations.begin(), result.violations.end());
  std::sort(result.warnings.begin(), result.warnings.end());
  return result;
}

std::vector<Violation> validate_individual(const Individual& ind, const Dataset& ds,
                                           const Ontology& onto) {
  return check_individual(ind, ds, onto).violations;
}

namespace {

std::vector<Violation> dangling(const Individual& ind, const Dataset& ds) {
  std::vector<Violation> out;
  for (const auto& a : ind.object_assertions) {
    if (ds.contains(a.target)) continue;
    out.push_back({ind.iri, Rule::DanglingReference, a.property, "individual " + a.target.str(),
                   "missing", a.target.str() + " is referenced but not defined"});
  }
  return out;
}

Report assemble(std::vector<IndividualResult>& parts, std::size_t checked) {
  Report report;
  report.checked_subjects = checked;
  for (auto& p : parts) {
    report.violations.insert(report.violations.end(), std::make_move_iterator(p.violations.begin()),
                             std::make_move_iterator(p.violations.end()));
    report.warnings.insert(report.warnings.end(), std::make_move_iterator(p.warnings.begin()),
                           std::make_move_iterator(p.warnings.end()));
  }
  std::sort(report.violations.begin(), report.violations.end());
  std::sort(report.warnings.begin(), report.warnings.end());
  return report;
}

IndividualResult check_one(const Individual& ind, const Dataset& ds, const Ontology& onto,
                           const Options& options) {
  auto r = check_individual(ind, ds, onto, options);
  auto d = dangling(ind, ds);
  r.violations.insert(r.violations.end(), d.begin(), d.end());
  return r;
}

}  // namespace

Report validate_dataset_serial(const Dataset& ds, const Ontology& onto, const Options& options) {
  std::vector<IndividualResult> parts;
  parts.reserve(ds.size());
  for (const auto& [iri, ind] : ds.individuals()) parts.push_back(check_one(ind, ds, onto, options));
  return assemble(parts, ds.size());
}

Report validate_dataset(const Dataset& ds, const Ontology& onto, const Options& options) {
  std::vector<const Individual*> subjects;
  subjects.reserve(ds.size());
  for (const auto& [iri, ind] : ds.individuals()) subjects.push_back(&ind);
  std::vector<IndividualResult> parts(subjects.size());
  const auto n = static_cast<long>(subjects.size());
  std::vector<std::exception_ptr> errors(subjects.size());
#ifdef IEDM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (n > 256)
#endif
  for (long i = 0; i < n; ++i) {
    try {
      parts[i] = check_one(*subjects[i], ds, onto, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return assemble(parts, ds.size());
}

}  // namespace iedm::validation
