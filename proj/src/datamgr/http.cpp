#include "iedm/datamgr/http.hpp"

#include <charconv>

#include "httplib.h"
#include "json.hpp"

#include "iedm/formgen.hpp"
#include "iedm/json_io.hpp"
#include "iedm/turtle.hpp"

namespace iedm::datamgr {

using nlohmann::json;
using iedm::to_json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Forbidden: return 403;
    case ErrorCode::NotFound:
    case ErrorCode::UnknownExperiment:
    case ErrorCode::UnknownClass: return 404;
    case ErrorCode::VersionConflict:
    case ErrorCode::AlreadyExists: return 409;
    case ErrorCode::ValidationError:
    case ErrorCode::TemporalOrder: return 422;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::TypeMismatch, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::TypeMismatch, std::string("malformed JSON body: ") + e.what());
  }
}

std::string user_of(const httplib::Request& req) { return req.get_header_value("X-User"); }

std::size_t size_param(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  auto text = req.get_param_value(key);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw Error(ErrorCode::ValidationError, std::string(key) + " must be a positive integer");
  return v;
}

bool flag_param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return false;
  auto v = req.get_param_value(key);
  return v.empty() || v == "1" || v == "true" || v == "yes";
}

Iri iri_field(const json& j, const char* key) {
  auto text = require_string(j, key);
  try {
    return Iri::parse(text);
  } catch (const Error&) {
    // Bare local names are read in the iedm namespace.
    return vocab::iedm(text);
  }
}

TimePosition time_field(const json& j, const char* key) {
  auto t = TimePosition::try_parse(require_string(j, key));
  if (!t) throw Error(ErrorCode::TypeMismatch, std::string("'") + key + "' is not an ISO-8601 instant");
  return *t;
}

std::uint64_t version_field(const json& j) {
  auto it = j.find("version");
  if (it == j.end() || !it->is_number_unsigned())
    throw Error(ErrorCode::TypeMismatch, "'version' (the version being edited) is required");
  return it->get<std::uint64_t>();
}

}  // namespace

struct HttpApi::Impl {
  Service& service;
  const materials::MaterialTable& table;
  httplib::Server server;

  Impl(Service& s, const materials::MaterialTable& t) : service(s), table(t) { routes(); }

  std::optional<materials::OccupancyTriple> occupancy_of(const json& body) const {
    if (body.contains("layers")) {
      if (!body["layers"].is_string())
        throw Error(ErrorCode::TypeMismatch, "'layers' must be a layer stack document");
      return materials::occupancy_all(
          materials::parse_layer_stack(body["layers"].get<std::string>(), table), table);
    }
    if (body.contains("occupancy") && !body["occupancy"].is_null())
      return occupancy_from_json(body["occupancy"]);
    return std::nullopt;
  }

  template <typename F>
  auto guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        send_json(res, http_status(e.code()), to_json(e));
      } catch (const json::exception& e) {
        send_json(res, 400, {{"error", "TypeMismatch"}, {"message", e.what()}});
      } catch (const std::exception& e) {
        send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
      }
    };
  }

  void routes() {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    server.Get("/samples", guarded([this](const httplib::Request& req, httplib::Response& res) {
      SampleQuery q;
      q.text = req.get_param_value("query");
      q.experiment_id = req.get_param_value("experimentId");
      q.page = size_param(req, "page", 1);
      q.page_size = size_param(req, "pageSize", 50);
      auto page = service.list_samples(q, user_of(req));
      json items = json::array();
      for (const auto& s : page.items) items.push_back(to_json(s));
      send_json(res, 200,
                {{"total", page.total}, {"page", page.page}, {"pageSize", page.page_size},
                 {"items", items}});
    }));

    server.Get(R"(/samples/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = service.sample(req.matches[1]);
                 if (!s) throw Error(ErrorCode::NotFound, "no sample " + req.matches[1].str());
                 send_json(res, 200, to_json(*s));
               }));

    server.Post("/samples", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req);
      NewSample s;
      s.name = require_string(body, "name");
      s.category_note = optional_string(body, "categoryNote");
      if (!body.contains("requestedFluence"))
        throw Error(ErrorCode::TypeMismatch, "'requestedFluence' is required");
      s.requested_fluence = quantity_from_json(body["requestedFluence"], vocab::iedm("Fluence"));
      s.experiment_id = require_string(body, "experimentId");
      if (auto o = occupancy_of(body)) s.occupancy = *o;
      send_json(res, 201, to_json(service.create_sample(s, user_of(req))));
    }));

    server.Patch(R"(/samples/([^/]+))",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   auto body = parse_body(req);
                   auto version = version_field(body);
                   SamplePatch p;
                   if (body.contains("name")) p.name = require_string(body, "name");
                   if (body.contains("categoryNote"))
                     p.category_note = require_string(body, "categoryNote");
                   if (body.contains("requestedFluence"))
                     p.requested_fluence =
                         quantity_from_json(body["requestedFluence"], vocab::iedm("Fluence"));
                   p.occupancy = occupancy_of(body);
                   send_json(res, 200,
                             to_json(service.update_sample(req.matches[1], p, user_of(req), version)));
                 }));

    server.Get("/experiments", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto viewer = user_of(req);
      json items = json::array();
      for (const auto& e : service.experiments())
        if (e.visible || e.is_owner(viewer)) items.push_back(to_json(e));
      send_json(res, 200, {{"items", items}});
    }));

    server.Get(R"(/experiments/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto e = service.experiment(req.matches[1]);
                 if (!e) throw Error(ErrorCode::NotFound, "no experiment " + req.matches[1].str());
                 send_json(res, 200, to_json(*e));
               }));

    server.Post("/experiments", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req);
      NewExperiment e;
      e.title = require_string(body, "title");
      e.facility = iri_field(body, "facility");
      e.irradiation_category = iri_field(body, "irradiationCategory");
      e.technical_requirements = optional_string(body, "technicalRequirements");
      if (body.contains("admin")) e.admin = admin_from_json(body["admin"]);
      send_json(res, 201, to_json(service.create_experiment(e, user_of(req))));
    }));

    server.Patch(R"(/experiments/([^/]+)/visibility)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   auto body = parse_body(req);
                   if (!body.contains("visible") || !body["visible"].is_boolean())
                     throw Error(ErrorCode::TypeMismatch, "'visible' must be a boolean");
                   send_json(res, 200,
                             to_json(service.set_visibility(req.matches[1], body["visible"].get<bool>(),
                                                            user_of(req))));
                 }));

    server.Post(R"(/experiments/([^/]+)/irradiations)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto body = parse_body(req);
                  auto rec = service.register_dut_irradiation(
                      req.matches[1], require_string(body, "dutId"),
                      iri_field(body, "radiationField"), time_field(body, "start"), user_of(req),
                      optional_string(body, "name"));
                  send_json(res, 201, to_json(rec));
                }));

    server.Post(R"(/experiments/([^/]+)/irradiations/([^/]+)/complete)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto body = parse_body(req);
                  std::optional<QuantityValue> cumulated;
                  if (body.contains("cumulated") && !body["cumulated"].is_null())
                    cumulated = quantity_from_json(body["cumulated"], vocab::iedm("Fluence"));
                  auto rec = service.complete_dut_irradiation(
                      req.matches[1], req.matches[2], time_field(body, "end"), cumulated, user_of(req));
                  send_json(res, 200, to_json(rec));
                }));

    server.Get(R"(/experiments/([^/]+)/export\.ttl)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto out = service.export_experiment(req.matches[1]);
                 res.status = 200;
                 res.set_header("X-Iedm-Violations", std::to_string(out.report.violations.size()));
                 res.set_header("X-Iedm-Warnings", std::to_string(out.report.warnings.size()));
                 res.set_content(out.turtle, "text/turtle");
               }));

    server.Get(R"(/experiments/([^/]+)/export)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto out = service.export_experiment(req.matches[1]);
                 send_json(res, 200, {{"turtle", out.turtle}, {"report", to_json(out.report)}});
               }));

    server.Post("/validate", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto& onto = service.ontology();
      auto imported = rdf::dataset_from_graph(rdf::parse_turtle(req.body), onto);
      validation::Options options;
      options.draft = flag_param(req, "draft");
      auto report = validation::validate_dataset(imported.dataset, onto, options);
      json body = to_json(report);
      json warnings = json::array();
      for (const auto& w : imported.warnings)
        warnings.push_back({{"kind", std::string(rdf::to_string(w.kind))},
                            {"subject", w.subject.str()},
                            {"detail", w.detail}});
      body["importWarnings"] = warnings;
      send_json(res, 200, body);
    }));

    server.Get(R"(/formschema/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const auto& onto = service.ontology();
                 auto cls = parse_class(req.matches[1]);
                 send_json(res, 200, formgen::to_json(formgen::form_schema(cls, onto)));
               }));

    server.Post(R"(/formschema/([^/]+)/submit)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const auto& onto = service.ontology();
                  auto body = parse_body(req);
                  auto cls = parse_class(req.matches[1]);
                  Iri subject = iri_field(body, "subject");
                  Dataset ds;
                  auto sub = formgen::materialize_submission(
                      formgen::form_schema(cls, onto), body.value("values", json::object()), ds,
                      onto, subject);
                  json violations = json::array();
                  for (const auto& v : sub.violations) violations.push_back(to_json(v));
                  if (!sub.violations.empty()) {
                    send_json(res, 422, {{"error", "ValidationError"}, {"violations", violations}});
                    return;
                  }
                  send_json(res, 201,
                            {{"subject", subject.str()},
                             {"violations", violations},
                             {"turtle", rdf::serialize_turtle(rdf::graph_from_dataset(sub.minted, onto))}});
                }));

    auto occupancy = guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::string text = req.body.empty() ? req.get_param_value("stack") : req.body;
      auto stack = materials::parse_layer_stack(text, table, req.get_param_value("dut"));
      auto t = materials::occupancy_all(stack, table);
      json body = to_json(t);
      body["layers"] = stack.layers.size();
      send_json(res, 200, body);
    });
    server.Get("/occupancy", occupancy);
    server.Post("/occupancy", occupancy);
  }

  Iri parse_class(const std::string& text) const {
    Iri cls;
    try {
      cls = Iri::parse(text);
    } catch (const Error&) {
      cls = vocab::iedm(text);
    }
    return cls;
  }
};

HttpApi::HttpApi(Service& service, const materials::MaterialTable& table)
    : impl_(std::make_unique<Impl>(service, table)) {}

HttpApi::~HttpApi() { stop(); }

int HttpApi::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpApi::serve() { return impl_->server.listen_after_bind(); }

void HttpApi::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpApi::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace iedm::datamgr
