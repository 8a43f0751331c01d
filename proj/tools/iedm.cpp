#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "iedm/datamgr/http.hpp"
#include "iedm/datamgr/service.hpp"
#include "iedm/datamgr/store.hpp"
#include "iedm/formgen.hpp"
#include "iedm/json_io.hpp"
#include "iedm/materials.hpp"
#include "iedm/turtle.hpp"
#include "iedm/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace iedm;

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return datamgr::read_file(path);
}

Iri iri_arg(const std::string& text) {
  try {
    return Iri::parse(text);
  } catch (const Error&) {
    return vocab::iedm(text);
  }
}

void print_violations(std::ostream& os, const std::vector<validation::Violation>& vs,
                      const char* tag) {
  for (const auto& v : vs) {
    os << tag << ' ' << v.subject.str() << ' ' << validation::to_string(v.rule);
    if (v.property) os << ' ' << v.property->str();
    os << ": " << v.message << '\n';
  }
}

struct Common {
  std::string data_root = env_or("IEDM_DATA_ROOT", "iedm-data");
  std::string base_iri = env_or("IEDM_BASE_IRI", "http://example.org/iedm#");
  std::string user = env_or("IEDM_USER", "");
  bool json_out = false;

  Namespaces ns() const { return Namespaces(base_iri); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irradiation experiment data management toolkit"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--data-root", c.data_root, "Record store directory (env IEDM_DATA_ROOT)");
  app.add_option("--base-iri", c.base_iri, "Expansion of the iedm: prefix (env IEDM_BASE_IRI)");
  app.add_option("--user", c.user, "Acting user email (env IEDM_USER)");
  app.add_flag("--json", c.json_out, "Machine-readable output");

  // validate
  auto* validate = app.add_subcommand("validate", "Validate a Turtle A-Box against the built-in T-Box");
  std::string ttl_path;
  bool draft = false;
  validate->add_option("file", ttl_path, "Turtle file ('-' for stdin)")->required();
  validate->add_flag("--draft", draft, "Report under-counted cardinalities as warnings");

  // export
  auto* exp_cmd = app.add_subcommand("export", "Export an experiment as Turtle");
  std::string exp_id, out_path;
  exp_cmd->add_option("experiment", exp_id, "Experiment id (EXP-000001)")->required();
  exp_cmd->add_option("-o,--output", out_path, "Write Turtle here instead of stdout");

  // import
  auto* import = app.add_subcommand(
      "import", "Check a Turtle file and file a normalized copy under <data-root>/imports");
  import->add_option("file", ttl_path, "Turtle file")->required();

  // occupancy
  auto* occ = app.add_subcommand("occupancy", "Radiation/collision/interaction occupancy of a layer stack");
  std::string stack_path;
  occ->add_option("stack", stack_path, "Layer stack file: 'material thickness_cm' per line")->required();

  // formgen
  auto* formgen_cmd = app.add_subcommand("formgen", "Print the form schema of a class");
  std::string class_iri;
  formgen_cmd->add_option("class", class_iri, "Class Iri, e.g. iedm:DUTIrradiation")->required();

  // dump-tbox
  auto* dump = app.add_subcommand("dump-tbox", "Print the built-in T-Box as Turtle");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  int port = std::atoi(env_or("IEDM_PORT", "8080").c_str());
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "Listen port (env IEDM_PORT)");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--data-root", c.data_root, "Record store directory");

  // sample
  auto* sample = app.add_subcommand("sample", "Sample registry");
  sample->require_subcommand(1);
  auto* s_list = sample->add_subcommand("list", "Search samples");
  datamgr::SampleQuery query;
  s_list->add_option("--query", query.text, "Case-insensitive id/name substring");
  s_list->add_option("--experiment", query.experiment_id, "Restrict to one experiment");
  s_list->add_option("--page", query.page, "1-based page");
  s_list->add_option("--page-size", query.page_size, "Rows per page (1..500)");

  auto* s_new = sample->add_subcommand("new", "Register a sample");
  std::string s_name, s_note, s_exp, s_layers;
  double s_fluence = 0.0;
  s_new->add_option("--name", s_name)->required();
  s_new->add_option("--category-note", s_note);
  s_new->add_option("--fluence", s_fluence, "Requested fluence in particles/cm^2")->required();
  s_new->add_option("--experiment", s_exp)->required();
  s_new->add_option("--layers", s_layers, "Layer stack file to compute the occupancy from");

  auto* s_update = sample->add_subcommand("update", "Edit a sample (optimistic version check)");
  std::string s_id;
  std::uint64_t s_version = 0;
  std::optional<std::string> u_name, u_note, u_layers;
  std::optional<double> u_fluence;
  s_update->add_option("id", s_id)->required();
  s_update->add_option("--version", s_version, "Version being edited")->required();
  s_update->add_option("--name", u_name);
  s_update->add_option("--category-note", u_note);
  s_update->add_option("--fluence", u_fluence);
  s_update->add_option("--layers", u_layers);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Experiment records");
  experiment->require_subcommand(1);
  auto* e_new = experiment->add_subcommand("new", "Create an experiment");
  datamgr::NewExperiment ne;
  std::string e_facility = "CERN_IRRAD", e_category = "PassiveStandardIrradiation";
  e_new->add_option("--title", ne.title)->required();
  e_new->add_option("--facility", e_facility);
  e_new->add_option("--category", e_category);
  e_new->add_option("--technical-requirements", ne.technical_requirements);
  e_new->add_option("--responsible", ne.admin.responsible)->required();
  e_new->add_option("--operator", ne.admin.operator_)->required();
  e_new->add_option("--coordinator", ne.admin.coordinator);
  e_new->add_option("--manager", ne.admin.manager);
  auto* e_vis = experiment->add_subcommand("visibility", "Show or hide an experiment");
  bool visible = false;
  e_vis->add_option("id", exp_id)->required();
  e_vis->add_option("visible", visible, "true or false")->required();

  // irradiation
  auto* irr = app.add_subcommand("irradiation", "DUT irradiation lifecycle");
  irr->require_subcommand(1);
  auto* i_start = irr->add_subcommand("start", "Register a DUT irradiation");
  std::string i_sample, i_field = "Protons_24GeV", i_time, i_name, i_rid;
  i_start->add_option("experiment", exp_id)->required();
  i_start->add_option("--sample", i_sample)->required();
  i_start->add_option("--field", i_field);
  i_start->add_option("--start", i_time, "ISO-8601 instant")->required();
  i_start->add_option("--name", i_name, "Individual name on export");
  auto* i_complete = irr->add_subcommand("complete", "Complete a DUT irradiation");
  std::optional<double> i_fluence, i_dose, i_error;
  i_complete->add_option("experiment", exp_id)->required();
  i_complete->add_option("irradiation", i_rid)->required();
  i_complete->add_option("--end", i_time, "ISO-8601 instant")->required();
  i_complete->add_option("--fluence", i_fluence, "Cumulated fluence, particles/cm^2");
  i_complete->add_option("--dose", i_dose, "Cumulated absorbed dose, Gy");
  i_complete->add_option("--relative-error", i_error, "Relative measurement error, e.g. 0.07");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto& onto = Ontology::builtin();
    const auto ns = c.ns();
    auto user = [&] {
      if (c.user.empty()) throw Error(ErrorCode::ValidationError, "--user (or IEDM_USER) is required");
      return c.user;
    };
    auto occupancy_of = [](const std::string& path) {
      const auto& table = materials::MaterialTable::builtin();
      return materials::occupancy_all(materials::parse_layer_stack(slurp(path), table), table);
    };

    if (*validate) {
      auto imported = rdf::dataset_from_graph(rdf::parse_turtle(slurp(ttl_path), ns), onto);
      validation::Options opt;
      opt.draft = draft;
      auto report = validation::validate_dataset(imported.dataset, onto, opt);
      if (c.json_out) {
        std::cout << iedm::to_json(report).dump(2) << '\n';
      } else {
        for (const auto& w : imported.warnings)
          std::cerr << "import " << rdf::to_string(w.kind) << ' ' << w.subject.str() << ": "
                    << w.detail << '\n';
        print_violations(std::cout, report.violations, "violation");
        print_violations(std::cout, report.warnings, "warning");
        std::cout << report.checked_subjects << " individuals, " << report.violations.size()
                  << " violations, " << report.warnings.size() << " warnings\n";
      }
      return report.ok() ? 0 : 1;
    }
    if (*import) {
      auto imported = rdf::dataset_from_graph(rdf::parse_turtle(slurp(ttl_path), ns), onto);
      for (const auto& w : imported.warnings)
        std::cerr << "import " << rdf::to_string(w.kind) << ' ' << w.subject.str() << ": "
                  << w.detail << '\n';
      auto report = validation::validate_dataset(imported.dataset, onto, {});
      print_violations(std::cout, report.violations, "violation");
      if (!report.ok()) {
        std::cerr << "not imported: " << report.violations.size() << " violations\n";
        return 1;
      }
      fs::path dir = fs::path(c.data_root) / "imports";
      fs::create_directories(dir);
      fs::path target = dir / (fs::path(ttl_path).stem().string() + ".ttl");
      datamgr::write_file_atomic(
          target, rdf::serialize_turtle(rdf::graph_from_dataset(imported.dataset, onto, ns), ns));
      std::cout << "imported " << imported.dataset.size() << " individuals to " << target.string()
                << '\n';
      return 0;
    }
    if (*occ) {
      auto t = occupancy_of(stack_path);
      if (c.json_out) std::cout << iedm::to_json(t).dump(2) << '\n';
      else std::cout << materials::occupancy_report(t) << '\n';
      return 0;
    }
    if (*formgen_cmd) {
      std::cout << formgen::to_json(formgen::form_schema(iri_arg(class_iri), onto)).dump(2) << '\n';
      return 0;
    }
    if (*dump) {
      std::cout << rdf::serialize_turtle(rdf::graph_from_ontology(onto, ns), ns);
      return 0;
    }

    datamgr::Service service(c.data_root);
    if (*serve) {
      datamgr::HttpApi api(service);
      int bound = api.bind(host, port);
      if (bound < 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
      std::cerr << "serving " << c.data_root << " on http://" << host << ':' << bound << '\n';
      return api.serve() ? 0 : 1;
    }
    if (*exp_cmd) {
      auto out = service.export_experiment(exp_id);
      auto text = rdf::serialize_turtle(rdf::graph_from_dataset(out.dataset, onto, ns), ns);
      if (out_path.empty()) std::cout << text;
      else datamgr::write_file_atomic(out_path, text);
      print_violations(std::cerr, out.report.violations, "violation");
      print_violations(std::cerr, out.report.warnings, "warning");
      return out.report.ok() ? 0 : 1;
    }
    if (*s_list) {
      auto page = service.list_samples(query, c.user);
      if (c.json_out) {
        json items = json::array();
        for (const auto& s : page.items) items.push_back(datamgr::to_json(s));
        std::cout << json{{"total", page.total}, {"items", items}}.dump(2) << '\n';
        return 0;
      }
      for (const auto& s : page.items) {
        std::cout << s.last_update.iso().substr(0, 10) << '\t' << s.id << '\t' << s.name << '\t'
                  << s.category_note << '\t' << format_number(s.requested_fluence.value) << '\t'
                  << materials::occupancy_report(s.occupancy) << '\t' << s.last_updated_by << '\n';
      }
      std::cout << page.items.size() << " of " << page.total << " samples\n";
      return 0;
    }
    if (*s_new) {
      datamgr::NewSample ns_;
      ns_.name = s_name;
      ns_.category_note = s_note;
      ns_.requested_fluence = QuantityValue::make(s_fluence, vocab::iedm("Fluence"));
      ns_.experiment_id = s_exp;
      if (!s_layers.empty()) ns_.occupancy = occupancy_of(s_layers);
      std::cout << datamgr::to_json(service.create_sample(ns_, user())).dump(2) << '\n';
      return 0;
    }
    if (*s_update) {
      datamgr::SamplePatch p;
      p.name = u_name;
      p.category_note = u_note;
      if (u_fluence) p.requested_fluence = QuantityValue::make(*u_fluence, vocab::iedm("Fluence"));
      if (u_layers) p.occupancy = occupancy_of(*u_layers);
      std::cout << datamgr::to_json(service.update_sample(s_id, p, user(), s_version)).dump(2) << '\n';
      return 0;
    }
    if (*e_new) {
      ne.facility = iri_arg(e_facility);
      ne.irradiation_category = iri_arg(e_category);
      std::cout << datamgr::to_json(service.create_experiment(ne, user())).dump(2) << '\n';
      return 0;
    }
    if (*e_vis) {
      std::cout << datamgr::to_json(service.set_visibility(exp_id, visible, user())).dump(2) << '\n';
      return 0;
    }
    if (*i_start) {
      auto rec = service.register_dut_irradiation(exp_id, i_sample, iri_arg(i_field),
                                                  TimePosition::parse(i_time), user(), i_name);
      std::cout << datamgr::to_json(rec).dump(2) << '\n';
      return 0;
    }
    if (*i_complete) {
      std::optional<QuantityValue> q;
      if (i_fluence && i_dose) throw Error(ErrorCode::ValidationError, "give --fluence or --dose, not both");
      if (i_fluence) q = QuantityValue::make(*i_fluence, vocab::iedm("Fluence"), i_error);
      if (i_dose) q = QuantityValue::make(*i_dose, vocab::om("AbsorbedDose"), i_error);
      auto rec = service.complete_dut_irradiation(exp_id, i_rid, TimePosition::parse(i_time), q, user());
      std::cout << datamgr::to_json(rec).dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}
