#include "iedm/datamgr/service.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "iedm/error.hpp"
#include "iedm/turtle.hpp"

namespace iedm::datamgr {

namespace {

constexpr std::size_t kMaxPageSize = 500;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_requested_fluence(const QuantityValue& q) {
  if (q.kind != vocab::iedm("Fluence"))
    throw Error(ErrorCode::ValidationError, "requested fluence must be of kind iedm:Fluence");
  if (!(q.value >= 0))
    throw Error(ErrorCode::ValidationError, "requested fluence must not be negative");
}

void check_cumulated(const QuantityValue& q) {
  if (quantity_class_for_kind(q.kind) != vocab::iedm("Fluence") &&
      quantity_class_for_kind(q.kind) != vocab::iedm("AbsorbedDose"))
    throw Error(ErrorCode::ValidationError, "cumulated quantity must be a fluence or absorbed dose");
  auto checked = QuantityValue::make(q.value, q.kind, q.relative_error, q.unit);
  (void)checked;
}

}  // namespace

Service::Service(std::filesystem::path root, Clock clock, const Ontology& onto)
    : store_(std::move(root)), clock_(std::move(clock)), onto_(onto) {}

TimePosition Service::tick(const TimePosition& floor) const {
  auto now = clock_();
  return now < floor ? floor : now;
}

void Service::save(ExperimentRecord& exp, const TimePosition& when, const std::string& user) {
  store_.put_experiment(exp, when, user);
}

ExperimentRecord Service::create_experiment(const NewExperiment& e, const std::string& user) {
  if (e.title.empty()) throw Error(ErrorCode::ValidationError, "experiment title is required");
  if (e.admin.responsible.empty() || e.admin.operator_.empty())
    throw Error(ErrorCode::ValidationError, "responsible person and operator are required");
  Iri category = onto_.canonical_class(e.irradiation_category);
  if (!onto_.has_class(category) ||
      !onto_.is_subclass_of(category, vocab::expo("ProcedureExecuteExperiment")) ||
      category == vocab::expo("ProcedureExecuteExperiment"))
    throw Error(ErrorCode::ValidationError,
                e.irradiation_category.str() + " is not an irradiation category");
  if (category == vocab::iedm("PassiveCustomIrradiation") && e.technical_requirements.empty())
    throw Error(ErrorCode::ValidationError,
                "custom passive irradiations need technical requirements");
  if (e.facility.empty()) throw Error(ErrorCode::ValidationError, "facility is required");

  std::unique_lock lock(mutex_);
  ExperimentRecord r;
  r.id = format_id("EXP", store_.next_counter("experiment"));
  r.title = e.title;
  r.facility = e.facility;
  r.irradiation_category = category;
  r.technical_requirements = e.technical_requirements;
  r.admin = e.admin;
  r.version = 1;
  save(r, clock_(), user);
  return r;
}

ExperimentRecord Service::set_visibility(const std::string& experiment_id, bool visible,
                                         const std::string& user) {
  std::unique_lock lock(mutex_);
  const auto* cur = store_.experiment(experiment_id);
  if (!cur) throw Error(ErrorCode::NotFound, "no experiment " + experiment_id);
  bool allowed = !user.empty() &&
                 (user == cur->admin.responsible || user == cur->admin.manager ||
                  user == cur->admin.coordinator || store_.facility_roles(cur->facility).has(user));
  if (!allowed)
    throw Error(ErrorCode::Forbidden, user + " may not change the visibility of " + experiment_id);
  if (cur->visible == visible) return *cur;
  ExperimentRecord r = *cur;
  r.visible = visible;
  ++r.version;
  save(r, clock_(), user);
  return r;
}

void Service::set_facility_roles(const Iri& facility, const FacilityRoles& roles) {
  std::unique_lock lock(mutex_);
  store_.put_facility_roles(facility, roles);
}

SampleRecord Service::create_sample(const NewSample& s, const std::string& user) {
  check_requested_fluence(s.requested_fluence);
  if (s.name.empty()) throw Error(ErrorCode::ValidationError, "sample name is required");
  std::unique_lock lock(mutex_);
  if (!store_.experiment(s.experiment_id))
    throw Error(ErrorCode::UnknownExperiment, "no experiment " + s.experiment_id);
  SampleRecord r;
  r.id = format_id("SET", store_.next_counter("sample"));
  r.name = s.name;
  r.category_note = s.category_note;
  r.requested_fluence = s.requested_fluence;
  r.occupancy = s.occupancy;
  r.last_update = clock_();
  r.last_updated_by = user;
  r.experiment_id = s.experiment_id;
  r.version = 1;
  store_.put_sample(r, r.last_update, user);
  return r;
}

SampleRecord Service::update_sample(const std::string& id, const SamplePatch& patch,
                                    const std::string& user, std::uint64_t expected_version) {
  if (patch.requested_fluence) check_requested_fluence(*patch.requested_fluence);
  if (patch.name && patch.name->empty())
    throw Error(ErrorCode::ValidationError, "sample name must not be empty");
  std::unique_lock lock(mutex_);
  const auto* cur = store_.sample(id);
  if (!cur) throw Error(ErrorCode::NotFound, "no sample " + id);
  if (cur->version != expected_version)
    throw Error(ErrorCode::VersionConflict, id + " is at version " + std::to_string(cur->version) +
                                                ", not " + std::to_string(expected_version));
  SampleRecord r = *cur;
  if (patch.name) r.name = *patch.name;
  if (patch.category_note) r.category_note = *patch.category_note;
  if (patch.requested_fluence) r.requested_fluence = *patch.requested_fluence;
  if (patch.occupancy) r.occupancy = *patch.occupancy;
  r.version = cur->version + 1;
  r.last_update = tick(cur->last_update);
  r.last_updated_by = user;
  store_.put_sample(r, r.last_update, user);
  return r;
}

SampleRecord Service::restore_sample(const SampleRecord& r, const std::string& user) {
  check_requested_fluence(r.requested_fluence);
  std::unique_lock lock(mutex_);
  if (store_.sample(r.id)) throw Error(ErrorCode::AlreadyExists, "sample " + r.id + " exists");
  if (!store_.experiment(r.experiment_id))
    throw Error(ErrorCode::UnknownExperiment, "no experiment " + r.experiment_id);
  if (r.id.size() != 10 || r.id.rfind("SET-", 0) != 0 ||
      !std::all_of(r.id.begin() + 4, r.id.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(ErrorCode::ValidationError, "sample ids look like SET-000001, got " + r.id);
  store_.raise_counter("sample", std::stoull(r.id.substr(4)));
  store_.put_sample(r, r.last_update, user);
  return r;
}

DutIrradiationRecord Service::register_dut_irradiation(const std::string& experiment_id,
                                                       const std::string& sample_id,
                                                       const Iri& radiation_field,
                                                       const TimePosition& start,
                                                       const std::string& user,
                                                       const std::string& name) {
  if (!radiation_field_catalog().count(radiation_field))
    throw Error(ErrorCode::NotFound, "unknown radiation field " + radiation_field.str());
  if (!name.empty() && !Iri::is_valid_local(name))
    throw Error(ErrorCode::InvalidIri, "'" + name + "' is not a valid individual name");
  std::unique_lock lock(mutex_);
  const auto* cur = store_.experiment(experiment_id);
  if (!cur) throw Error(ErrorCode::NotFound, "no experiment " + experiment_id);
  if (!store_.sample(sample_id)) throw Error(ErrorCode::NotFound, "no sample " + sample_id);
  ExperimentRecord r = *cur;
  DutIrradiationRecord rec;
  rec.id = format_id("IRR", store_.next_counter("irradiation"));
  rec.dut_id = sample_id;
  rec.radiation_field = radiation_field;
  rec.start = start;
  rec.name = name;
  r.dut_irradiations.push_back(rec);
  ++r.version;
  save(r, clock_(), user);
  return rec;
}

DutIrradiationRecord Service::complete_dut_irradiation(const std::string& experiment_id,
                                                       const std::string& irradiation_id,
                                                       const TimePosition& end,
                                                       const std::optional<QuantityValue>& cumulated,
                                                       const std::string& user) {
  if (cumulated) check_cumulated(*cumulated);
  std::unique_lock lock(mutex_);
  const auto* cur = store_.experiment(experiment_id);
  if (!cur) throw Error(ErrorCode::NotFound, "no experiment " + experiment_id);
  ExperimentRecord r = *cur;
  auto* rec = r.irradiation(irradiation_id);
  if (!rec) throw Error(ErrorCode::NotFound, "no irradiation " + irradiation_id + " in " + experiment_id);
  if (end < rec->start)
    throw Error(ErrorCode::TemporalOrder,
                "end " + end.iso() + " is before start " + rec->start.iso());
  rec->end = end;
  rec->cumulated = cumulated;
  DutIrradiationRecord out = *rec;
  ++r.version;
  save(r, clock_(), user);
  return out;
}

ExportResult Service::export_experiment(const std::string& experiment_id) const {
  std::shared_lock lock(mutex_);
  const auto* exp = store_.experiment(experiment_id);
  if (!exp) throw Error(ErrorCode::NotFound, "no experiment " + experiment_id);
  ExportResult out;
  out.dataset = experiment_dataset(*exp, store_.samples(), onto_);
  lock.unlock();
  out.turtle = rdf::serialize_turtle(rdf::graph_from_dataset(out.dataset, onto_));
  validation::Options draft;
  draft.draft = true;
  out.report = validation::validate_dataset(out.dataset, onto_, draft);
  return out;
}

SamplePage Service::list_samples(const SampleQuery& q, const std::string& viewer) const {
  if (q.page < 1) throw Error(ErrorCode::ValidationError, "page numbers start at 1");
  if (q.page_size < 1 || q.page_size > kMaxPageSize)
    throw Error(ErrorCode::ValidationError, "page size must be within [1, 500]");
  const std::string needle = lower(q.text);
  std::vector<SampleRecord> hits;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, s] : store_.samples()) {
      if (!q.experiment_id.empty() && s.experiment_id != q.experiment_id) continue;
      const auto* exp = store_.experiment(s.experiment_id);
      bool visible = exp && exp->visible;
      if (!visible && !(exp && exp->is_owner(viewer))) continue;
      if (!needle.empty() && lower(s.id).find(needle) == std::string::npos &&
          lower(s.name).find(needle) == std::string::npos)
        continue;
      hits.push_back(s);
      hits.back().visible = visible;
    }
  }
  std::sort(hits.begin(), hits.end(), [](const SampleRecord& a, const SampleRecord& b) {
    if (a.last_update != b.last_update) return a.last_update > b.last_update;
    return a.id < b.id;
  });
  SamplePage page;
  page.total = hits.size();
  page.page = q.page;
  page.page_size = q.page_size;
  const std::size_t first = (q.page - 1) * q.page_size;
  if (first < hits.size()) {
    auto last = std::min(hits.size(), first + q.page_size);
    page.items.assign(hits.begin() + static_cast<std::ptrdiff_t>(first),
                      hits.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return page;
}

std::optional<SampleRecord> Service::sample(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto* s = store_.sample(id);
  return s ? std::optional<SampleRecord>(*s) : std::nullopt;
}

std::optional<ExperimentRecord> Service::experiment(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto* e = store_.experiment(id);
  return e ? std::optional<ExperimentRecord>(*e) : std::nullopt;
}

std::vector<ExperimentRecord> Service::experiments() const {
  std::shared_lock lock(mutex_);
  std::vector<ExperimentRecord> out;
  for (const auto& [id, e] : store_.experiments()) out.push_back(e);
  return out;
}

std::vector<AuditEntry> Service::audit() const {
  std::shared_lock lock(mutex_);
  return store_.audit();
}

}  // namespace iedm::datamgr
