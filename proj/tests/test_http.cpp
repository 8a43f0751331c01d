#include "doctest.h"

#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "iedm/datamgr/http.hpp"
#include "iedm/turtle.hpp"
#include "support.hpp"

using namespace iedm;
using namespace iedm::datamgr;
using nlohmann::json;

namespace {

struct Server {
  test::TempDir dir;
  Service service{dir.path()};
  HttpApi api{service};
  int port = -1;
  std::thread thread;

  Server() {
    port = api.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    thread = std::thread([this] { api.serve(); });
    api.wait_until_ready();
  }
  ~Server() {
    api.stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_default_headers({{"X-User", "blarina.glatse@cern.ch"}});
    return c;
  }
};

json body(const httplib::Result& r) {
  REQUIRE(r);
  return json::parse(r->body);
}

const char* kJson = "application/json";

}  // namespace

TEST_CASE("http: experiment and sample workflow") {
  Server srv;
  auto c = srv.client();
  auto health = c.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  auto exp = c.Post("/experiments",
                    json{{"title", "FCC-Radmon"},
                         {"facility", "iedm:CERN_IRRAD"},
                         {"irradiationCategory", "PassiveStandardIrradiation"},
                         {"admin", {{"responsible", "blarina.glatse@cern.ch"}, {"operator", "op@cern.ch"}}}}
                        .dump(),
                    kJson);
  REQUIRE(exp);
  CHECK(exp->status == 201);
  auto exp_id = body(exp)["id"].get<std::string>();
  CHECK(exp_id == "EXP-000001");

  auto created = c.Post("/samples",
                        json{{"name", "PCB5-run2017"},
                             {"categoryNote", "Room temperature"},
                             {"requestedFluence", 3e17},
                             {"experimentId", exp_id},
                             {"layers", "Si 0.03\nFR4 0.16\n"}}
                            .dump(),
                        kJson);
  REQUIRE(created);
  CHECK(created->status == 201);
  auto s = body(created);
  CHECK(s["id"] == "SET-000001");
  CHECK(s["version"] == 1);
  CHECK(s["occupancy"]["radiation"].get<double>() > 0);

  auto neg = c.Post("/samples",
                    json{{"name", "x"}, {"requestedFluence", -1}, {"experimentId", exp_id}}.dump(), kJson);
  CHECK(neg->status == 422);

  auto patched = c.Patch("/samples/SET-000001", json{{"version", 1}, {"name", "PCB5b"}}.dump(), kJson);
  REQUIRE(patched);
  CHECK(patched->status == 200);
  CHECK(body(patched)["version"] == 2);
  auto stale = c.Patch("/samples/SET-000001", json{{"version", 1}, {"name", "PCB5c"}}.dump(), kJson);
  CHECK(stale->status == 409);
  CHECK(body(stale)["error"] == "VersionConflict");
  auto no_version = c.Patch("/samples/SET-000001", json{{"name", "PCB5c"}}.dump(), kJson);
  CHECK(no_version->status == 400);
  CHECK(c.Patch("/samples/SET-000404", json{{"version", 1}}.dump(), kJson)->status == 404);

  auto listing = c.Get("/samples?query=pcb5&page=1&pageSize=10");
  REQUIRE(listing);
  CHECK(body(listing)["total"] == 1);
  httplib::Client stranger("127.0.0.1", srv.port);
  stranger.set_default_headers({{"X-User", "stranger@cern.ch"}});
  CHECK(body(stranger.Get("/samples"))["total"] == 0);
  CHECK(stranger.Patch(("/experiments/" + exp_id + "/visibility").c_str(),
                       json{{"visible", true}}.dump(), kJson)
            ->status == 403);
  CHECK(c.Patch(("/experiments/" + exp_id + "/visibility").c_str(), json{{"visible", true}}.dump(), kJson)
            ->status == 200);
  CHECK(body(stranger.Get("/samples"))["total"] == 1);
  CHECK(c.Get("/samples?pageSize=0")->status == 422);

  auto irr = c.Post(("/experiments/" + exp_id + "/irradiations").c_str(),
                    json{{"dutId", "SET-000001"}, {"radiationField", "iedm:Protons_24GeV"},
                         {"start", "2018-03-30T12:00:00Z"}}
                        .dump(),
                    kJson);
  REQUIRE(irr);
  CHECK(irr->status == 201);
  auto rid = body(irr)["id"].get<std::string>();
  auto bad = c.Post(("/experiments/" + exp_id + "/irradiations/" + rid + "/complete").c_str(),
                    json{{"end", "2018-01-01T00:00:00Z"}}.dump(), kJson);
  CHECK(bad->status == 422);
  CHECK(body(bad)["error"] == "TemporalOrder");
  auto done = c.Post(("/experiments/" + exp_id + "/irradiations/" + rid + "/complete").c_str(),
                     json{{"end", "2018-11-12T18:00:00Z"},
                          {"cumulated", {{"value", 3e17}, {"relativeError", 0.07}}}}
                         .dump(),
                     kJson);
  CHECK(done->status == 200);

  auto ttl = c.Get(("/experiments/" + exp_id + "/export.ttl").c_str());
  REQUIRE(ttl);
  CHECK(ttl->status == 200);
  CHECK(ttl->get_header_value("Content-Type") == "text/turtle");
  CHECK(ttl->get_header_value("X-Iedm-Violations") == "0");
  auto g = rdf::parse_turtle(ttl->body);
  CHECK(g.triples.count({vocab::iedm("FCC-RadmonIrradiation"), vocab::iedm("hasDUT"),
                         vocab::iedm("PCB5b")}) == 1);

  auto report = c.Post("/validate", ttl->body, "text/turtle");
  REQUIRE(report);
  CHECK(report->status == 200);
  CHECK(body(report)["ok"] == true);
  CHECK(body(report)["violations"].empty());
}

TEST_CASE("http: validate reports syntax errors with positions") {
  Server srv;
  auto c = srv.client();
  auto r = c.Post("/validate", "@prefix iedm: <http://example.org/iedm#> .\niedm:a iedm:hasPart .\n",
                  "text/turtle");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(body(r)["line"] == 2);
  auto golden = c.Post("/validate", test::read_fixture("fcc_radmon.ttl"), "text/turtle");
  CHECK(body(golden)["ok"] == true);
  CHECK(body(golden)["checkedSubjects"] == test::load_golden().dataset.individuals().size());
}

TEST_CASE("http: form schemas and occupancy") {
  Server srv;
  auto c = srv.client();
  auto s = c.Get("/formschema/iedm:IrradiationExperiment");
  REQUIRE(s);
  CHECK(s->status == 200);
  auto j = body(s);
  CHECK(j["classIri"] == "iedm:IrradiationExperiment");
  int selects = 0;
  for (const auto& f : j["fields"])
    if (f["widget"] == "select") {
      ++selects;
      CHECK(f["options"].size() == 3);
    }
  CHECK(selects == 1);
  CHECK(c.Get("/formschema/iedm:Nope")->status == 404);

  auto sub = c.Post("/formschema/iedm:Particle/submit", json{{"subject", "iedm:Proton"}}.dump(), kJson);
  REQUIRE(sub);
  CHECK(sub->status == 201);
  auto rejected = c.Post("/formschema/iedm:DUTIrradiation/submit",
                         json{{"subject", "iedm:Irr"}, {"values", json::object()}}.dump(), kJson);
  CHECK(rejected->status == 422);
  CHECK(body(rejected)["violations"].size() >= 4);

  auto occ = c.Post("/occupancy", "Si 9.368827823100043\n", "text/plain");
  REQUIRE(occ);
  CHECK(occ->status == 200);
  CHECK(body(occ)["report"].get<std::string>().rfind("100 / ", 0) == 0);
  httplib::Headers headers;
  auto get_with_body = c.Get("/occupancy?stack=Si%200.03", headers);
  CHECK(get_with_body->status == 200);
  CHECK(c.Post("/occupancy", "Vibranium 1\n", "text/plain")->status == 400);
}
