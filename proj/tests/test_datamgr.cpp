#include "doctest.h"

#include <atomic>
#include <thread>

#include "iedm/datamgr/service.hpp"
#include "iedm/error.hpp"
#include "iedm/turtle.hpp"
#include "support.hpp"

using namespace iedm;
using namespace iedm::datamgr;

namespace {
Iri I(const char* s) { return Iri::parse(s); }

// Deterministic clock advancing one minute per reading.
struct FakeClock {
  std::shared_ptr<std::atomic<long>> minutes = std::make_shared<std::atomic<long>>(0);
  TimePosition operator()() const {
    auto base = TimePosition::parse("2018-09-07T08:00:00Z").time();
    return TimePosition(base + std::chrono::minutes(minutes->fetch_add(1)));
  }
};

const std::string kResp = "blarina.glatse@cern.ch";
const std::string kOp = "operator1@cern.ch";

NewExperiment fcc_radmon() {
  NewExperiment e;
  e.title = "FCC-Radmon";
  e.facility = I("iedm:CERN_IRRAD");
  e.irradiation_category = I("iedm:PassiveStandardIrradiation");
  e.admin = {kResp, kOp, "", ""};
  return e;
}

NewSample pcb5(const std::string& exp) {
  NewSample s;
  s.name = "PCB5-run2017";
  s.category_note = "Room temperature, in irradiation area: 10x10 mm\xc2\xb2";
  s.requested_fluence = QuantityValue::make(3e17, I("iedm:Fluence"));
  s.experiment_id = exp;
  s.occupancy = {1.153, 0.623, 0.414};
  return s;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}
}  // namespace

TEST_CASE("datamgr: sample creation") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  CHECK(exp.id == "EXP-000001");
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  CHECK(s.id == "SET-000001");
  CHECK(s.name == "PCB5-run2017");
  CHECK(s.requested_fluence.value == 3e17);
  CHECK(s.version == 1);
  CHECK(s.last_updated_by == kResp);
  CHECK(svc.create_sample(pcb5(exp.id), kResp).id == "SET-000002");

  auto neg = pcb5(exp.id);
  neg.requested_fluence.value = -1;
  CHECK(code_of([&] { svc.create_sample(neg, kResp); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { svc.create_sample(pcb5("EXP-999999"), kResp); }) == ErrorCode::UnknownExperiment);
}

TEST_CASE("datamgr: experiment validation") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto e = fcc_radmon();
  e.admin.operator_.clear();
  CHECK(code_of([&] { svc.create_experiment(e, kResp); }) == ErrorCode::ValidationError);
  e = fcc_radmon();
  e.irradiation_category = I("iedm:DUT");
  CHECK(code_of([&] { svc.create_experiment(e, kResp); }) == ErrorCode::ValidationError);
  e = fcc_radmon();
  e.irradiation_category = I("iedm:PassiveCustomIrradiation");
  CHECK(code_of([&] { svc.create_experiment(e, kResp); }) == ErrorCode::ValidationError);
  e.technical_requirements = "Cold box at -20 C";
  CHECK(svc.create_experiment(e, kResp).irradiation_category == I("iedm:PassiveCustomIrradiation"));
}

TEST_CASE("datamgr: optimistic updates") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  SamplePatch p;
  p.name = "PCB5-run2017b";
  auto u = svc.update_sample(s.id, p, "georgi.gorine@cern.ch", 1);
  CHECK(u.version == 2);
  CHECK(u.last_updated_by == "georgi.gorine@cern.ch");
  CHECK(u.last_update > s.last_update);
  CHECK(u.name == "PCB5-run2017b");

  p.name = "stale";
  CHECK(code_of([&] { svc.update_sample(s.id, p, kResp, 1); }) == ErrorCode::VersionConflict);
  CHECK(svc.sample(s.id)->name == "PCB5-run2017b");
  CHECK(svc.sample(s.id)->version == 2);
  CHECK(code_of([&] { svc.update_sample("SET-424242", p, kResp, 1); }) == ErrorCode::NotFound);

  auto audit = svc.audit();
  std::vector<std::uint64_t> versions;
  for (const auto& a : audit)
    if (a.record_id == s.id) versions.push_back(a.version);
  CHECK(versions == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("datamgr: last update never decreases") {
  test::TempDir dir;
  long clock_minutes = 100;
  Service svc(dir.path(), [&] {
    return TimePosition(TimePosition::parse("2018-09-07T08:00:00Z").time() +
                        std::chrono::minutes(clock_minutes));
  });
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  clock_minutes = 10;  // clock steps backwards
  auto u = svc.update_sample(s.id, {}, kResp, 1);
  CHECK(u.last_update == s.last_update);
  CHECK(u.version == 2);
}

TEST_CASE("datamgr: concurrent updates serialize on versions") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  std::atomic<int> ok{0}, conflicts{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 25; ++i) {
        auto cur = svc.sample(s.id);
        SamplePatch p;
        p.category_note = "writer " + std::to_string(t);
        try {
          svc.update_sample(s.id, p, "w" + std::to_string(t) + "@cern.ch", cur->version);
          ++ok;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::VersionConflict) ++conflicts;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(ok + conflicts == 200);
  CHECK(svc.sample(s.id)->version == 1u + static_cast<unsigned>(ok.load()));
  std::uint64_t last = 0;
  TimePosition last_time;
  for (const auto& a : svc.audit()) {
    if (a.record_id != s.id) continue;
    CHECK(a.version == last + 1);
    CHECK(last_time <= a.timestamp);
    last = a.version;
    last_time = a.timestamp;
  }
}

TEST_CASE("datamgr: persistence across restarts") {
  test::TempDir dir;
  std::string exp_id, sample_id;
  {
    Service svc(dir.path(), FakeClock{});
    exp_id = svc.create_experiment(fcc_radmon(), kResp).id;
    sample_id = svc.create_sample(pcb5(exp_id), kResp).id;
  }
  Service again(dir.path(), FakeClock{});
  auto s = again.sample(sample_id);
  REQUIRE(s);
  CHECK(s->name == "PCB5-run2017");
  CHECK(s->occupancy.radiation == doctest::Approx(1.153));
  CHECK(again.create_sample(pcb5(exp_id), kResp).id == "SET-000002");
  CHECK(again.experiment(exp_id)->admin.responsible == kResp);
}

TEST_CASE("datamgr: visibility rules") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  svc.create_sample(pcb5(exp.id), kResp);
  const std::string other = "someone.else@cern.ch";
  CHECK(svc.list_samples({}, other).total == 0);
  CHECK(svc.list_samples({}, kResp).total == 1);
  CHECK(svc.list_samples({}, kOp).total == 1);

  CHECK(code_of([&] { svc.set_visibility(exp.id, true, other); }) == ErrorCode::Forbidden);
  CHECK(code_of([&] { svc.set_visibility("EXP-000099", true, kResp); }) == ErrorCode::NotFound);
  auto v = svc.set_visibility(exp.id, true, kResp);
  CHECK(v.visible);
  auto page = svc.list_samples({}, other);
  CHECK(page.total == 1);
  CHECK(page.items[0].visible);
  auto again = svc.set_visibility(exp.id, true, kResp);
  CHECK(again.version == v.version);

  svc.set_facility_roles(I("iedm:CERN_IRRAD"), {{"manager@cern.ch"}, {}});
  CHECK_FALSE(svc.set_visibility(exp.id, false, "manager@cern.ch").visible);
  CHECK(svc.list_samples({}, other).total == 0);
}

TEST_CASE("datamgr: listing search, order and pagination") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  svc.set_visibility(exp.id, true, kResp);
  struct Row {
    const char* id;
    const char* date;
    const char* name;
    double r, c, i;
    const char* by;
  };
  const Row rows[] = {
      {"SET-003405", "2018-09-07", "PCB5-run2017", 1.153, 0.623, 0.414, "blarina.glatse@cern.ch"},
      {"SET-003541", "2018-11-26", "PCB19-run2018", 0.96, 0.348, 0.227, "georgi.gorine@cern.ch"},
      {"SET-003542", "2018-11-05", "PCB19-run2018", 0.96, 0.348, 0.227, "georgi.gorine@cern.ch"},
      {"SET-003986", "2018-09-19", "PCB22-ALD2018", 1.106, 0.576, 0.389, "georgi.gorine@cern.ch"},
      {"SET-003983", "2018-11-07", "TESTINA SEC", 0.256, 0.19, 0.131, "irradiation.facilities@cern.ch"},
  };
  for (const auto& row : rows) {
    SampleRecord r;
    r.id = row.id;
    r.name = row.name;
    r.category_note = "Room temperature, in irradiation area: 10x10 mm\xc2\xb2";
    r.requested_fluence = QuantityValue::make(3e17, I("iedm:Fluence"));
    r.occupancy = {row.r, row.c, row.i};
    r.last_update = TimePosition::parse(std::string(row.date) + "T00:00:00Z");
    r.last_updated_by = row.by;
    r.experiment_id = exp.id;
    svc.restore_sample(r, row.by);
  }
  auto all = svc.list_samples({}, "anyone@cern.ch");
  REQUIRE(all.total == 5);
  std::vector<std::string> ids;
  for (const auto& s : all.items) ids.push_back(s.id);
  CHECK(ids == std::vector<std::string>{"SET-003541", "SET-003983", "SET-003542", "SET-003986",
                                        "SET-003405"});

  SampleQuery q;
  q.text = "pcb19";
  auto hits = svc.list_samples(q, "anyone@cern.ch");
  REQUIRE(hits.total == 2);
  CHECK(hits.items[0].id == "SET-003541");
  CHECK(hits.items[1].id == "SET-003542");
  q.text = "set-0039";
  CHECK(svc.list_samples(q, "anyone@cern.ch").total == 2);

  SampleQuery paged;
  paged.page_size = 2;
  paged.page = 3;
  auto p3 = svc.list_samples(paged, "x");
  CHECK(p3.items.size() == 1);
  CHECK(p3.items[0].id == "SET-003405");
  paged.page = 4;
  auto p4 = svc.list_samples(paged, "x");
  CHECK(p4.items.empty());
  CHECK(p4.total == 5);
  paged.page_size = 0;
  CHECK(code_of([&] { svc.list_samples(paged, "x"); }) == ErrorCode::ValidationError);
  paged.page_size = 501;
  CHECK(code_of([&] { svc.list_samples(paged, "x"); }) == ErrorCode::ValidationError);

  // The restored counter continues after the highest id.
  CHECK(svc.create_sample(pcb5(exp.id), kResp).id == "SET-003987");
}

TEST_CASE("datamgr: irradiation lifecycle and export") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  auto rec = svc.register_dut_irradiation(exp.id, s.id, I("iedm:Protons_24GeV"),
                                          TimePosition::parse("2018-03-30T12:00"), kOp);
  CHECK(rec.id == "IRR-000001");

  // Draft: no end, no result.
  auto draft = svc.export_experiment(exp.id);
  CHECK(draft.report.ok());
  CHECK_FALSE(draft.report.warnings.empty());

  CHECK(code_of([&] {
          svc.complete_dut_irradiation(exp.id, rec.id, TimePosition::parse("2018-01-01T00:00"),
                                       std::nullopt, kOp);
        }) == ErrorCode::TemporalOrder);
  CHECK(code_of([&] {
          svc.complete_dut_irradiation(exp.id, "IRR-000777", TimePosition::parse("2018-12-01T00:00"),
                                       std::nullopt, kOp);
        }) == ErrorCode::NotFound);

  auto done = svc.complete_dut_irradiation(exp.id, rec.id, TimePosition::parse("2018-11-12T18:00"),
                                           QuantityValue::make(3e17, I("iedm:Fluence"), 0.07), kOp);
  REQUIRE(done.end);
  CHECK(done.cumulated->relative_error == 0.07);

  auto out = svc.export_experiment(exp.id);
  for (const auto& v : out.report.violations) MESSAGE(v.message);
  for (const auto& v : out.report.warnings) MESSAGE(v.message);
  CHECK(out.report.ok());
  CHECK(out.report.warnings.empty());
  auto g = rdf::parse_turtle(out.turtle);
  CHECK(g.triples.count({I("iedm:FCC-RadmonIrradiation"), I("iedm:hasDUT"), I("iedm:PCB5-run2017")}) == 1);
  CHECK(g.triples.count({I("iedm:FCC-RadmonIrradiation"), I("iedm:hasStartTime"),
                         I("iedm:_2018_03_30_12h_00")}) == 1);
  CHECK(g.triples.count({I("iedm:FCC-RadmonIrradiation"), I("iedm:hasEndTime"),
                         I("iedm:_2018_11_12_18h_00")}) == 1);
  CHECK(g.triples.count({I("iedm:FCC-RadmonIrradiation"), I("iedm:hasResult"),
                         I("iedm:_3e17_protons_per_square_cm")}) == 1);
  CHECK(g.triples.count({I("iedm:_3e17_protons_per_square_cm"), I("iedm:hasMeasurementError"),
                         I("iedm:_7_per_cent")}) == 1);
  CHECK(g.triples.count({I("iedm:FCC-Radmon"), I("iedm:performedAt"), I("iedm:CERN_IRRAD")}) == 1);
  CHECK(svc.export_experiment(exp.id).turtle == out.turtle);

  auto re = rdf::dataset_from_graph(g, svc.ontology());
  CHECK(re.warnings.empty());
  CHECK(validation::validate_dataset(re.dataset, svc.ontology()).ok());

  CHECK(code_of([&] { svc.export_experiment("EXP-000404"); }) == ErrorCode::NotFound);
  CHECK(code_of([&] {
          svc.register_dut_irradiation(exp.id, "SET-000404", I("iedm:Protons_24GeV"),
                                       TimePosition::parse("2018-03-30T12:00"), kOp);
        }) == ErrorCode::NotFound);
  CHECK(code_of([&] {
          svc.register_dut_irradiation(exp.id, s.id, I("iedm:Muons_1TeV"),
                                       TimePosition::parse("2018-03-30T12:00"), kOp);
        }) == ErrorCode::NotFound);
}

TEST_CASE("datamgr: completing without a result leaves a draft warning") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto exp = svc.create_experiment(fcc_radmon(), kResp);
  auto s = svc.create_sample(pcb5(exp.id), kResp);
  auto rec = svc.register_dut_irradiation(exp.id, s.id, I("iedm:Protons_24GeV"),
                                          TimePosition::parse("2018-03-30T12:00"), kOp);
  svc.complete_dut_irradiation(exp.id, rec.id, TimePosition::parse("2018-11-12T18:00"), std::nullopt, kOp);
  auto out = svc.export_experiment(exp.id);
  CHECK(out.report.ok());
  bool has_result_warning = false;
  for (const auto& w : out.report.warnings)
    if (w.rule == validation::Rule::CardinalityMin && w.property == I("iedm:hasResult"))
      has_result_warning = true;
  CHECK(has_result_warning);
}

TEST_CASE("datamgr: multi-DUT mixed field experiment exports valid") {
  test::TempDir dir;
  Service svc(dir.path(), FakeClock{});
  auto e = fcc_radmon();
  e.title = "CHARM 2018 campaign";
  e.irradiation_category = I("iedm:ActiveIrradiation");
  e.admin.coordinator = "coordinator@cern.ch";
  e.admin.manager = "manager@cern.ch";
  auto exp = svc.create_experiment(e, kResp);
  for (int i = 0; i < 3; ++i) {
    auto ns = pcb5(exp.id);
    ns.name = i < 2 ? "PCB19-run2018" : "TESTINA SEC";
    auto s = svc.create_sample(ns, kResp);
    auto rec = svc.register_dut_irradiation(exp.id, s.id,
                                            i == 0 ? I("iedm:Protons_24GeV") : I("iedm:CHARM_MixedField"),
                                            TimePosition::parse("2018-06-01T08:00"), kOp);
    std::optional<QuantityValue> q;
    if (i == 2) q = QuantityValue::make(120, I("om:AbsorbedDose"), 0.1);
    else q = QuantityValue::make(3e17, I("iedm:Fluence"), 0.07);
    svc.complete_dut_irradiation(exp.id, rec.id, TimePosition::parse("2018-06-20T08:00"), q, kOp);
  }
  auto out = svc.export_experiment(exp.id);
  for (const auto& v : out.report.violations) MESSAGE(v.message);
  CHECK(out.report.ok());
  CHECK(out.report.warnings.empty());
  auto g = rdf::parse_turtle(out.turtle);
  CHECK(g.triples.count({I("iedm:CHARM_MixedField"), I("rdf:type"), I("iedm:MixedField")}) == 1);
  CHECK(g.triples.count({I("iedm:TESTINA_SEC"), I("rdf:type"), I("iedm:DUT")}) == 1);
  auto re = rdf::dataset_from_graph(g, svc.ontology());
  CHECK(validation::validate_dataset(re.dataset, svc.ontology()).ok());
}

TEST_CASE("datamgr: local name sanitizing") {
  CHECK(sanitize_local("PCB5-run2017") == "PCB5-run2017");
  CHECK(sanitize_local("TESTINA SEC") == "TESTINA_SEC");
  CHECK(sanitize_local("3D pixel") == "_3D_pixel");
  CHECK(sanitize_local("a.") == "a_");
  CHECK(sanitize_local("") == "_");
  CHECK(Iri::is_valid_local(sanitize_local("georgi.gorine@cern.ch")));
}
