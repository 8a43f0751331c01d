#include "support.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

namespace iedm::test {

namespace fs = std::filesystem;

std::string fixture_path(const std::string& name) { return std::string(IEDM_FIXTURES) + "/" + name; }

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rdf::ImportResult load_golden() {
  return rdf::dataset_from_graph(rdf::parse_turtle(read_fixture("fcc_radmon.ttl")),
                                 Ontology::builtin());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("iedm-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

bool satisfies(const Dataset& ds, const Ontology& onto, const Iri& target, const Iri& filler) {
  const auto* t = ds.find(target);
  if (!t) return false;
  for (const auto& type : t->types)
    if (onto.has_class(type) && onto.is_subclass_of(type, filler)) return true;
  return false;
}

bool below_user(const Ontology& onto, const Iri& cls) {
  return onto.is_subclass_of(cls, vocab::iedm("User"));
}

void build(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& subject, int depth);

Iri add_target(Dataset& ds, const Ontology& onto, const Iri& subject, const Restriction& r,
               int depth) {
  const std::string stem = subject.local() + "_" + r.on_property.local() + "_";
  Iri target;
  for (int n = 1;; ++n) {
    target = vocab::iedm(stem + std::to_string(n));
    if (!ds.contains(target)) break;
  }
  if (onto.is_subclass_of(r.filler, vocab::iedm("TimePosition"))) {
    ds.mint(onto, r.filler, target);
    bool end = r.on_property == vocab::iedm("hasEndTime");
    ds.at(target).values.insert(
        Literal(end ? "2018-11-12T18:00:00Z" : "2018-03-30T12:00:00Z", Datatype::DateTime));
  } else {
    build(ds, onto, r.filler, target, depth + 1);
  }
  ds.assert_statement(subject, r.on_property, target, onto);
  return target;
}

void build(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& subject, int depth) {
  if (depth > 8) throw std::runtime_error("witness recursion too deep at " + cls.str());
  ds.ensure(onto, cls, subject);
  for (const auto& role : role_classes())
    if (onto.is_subclass_of(cls, role) && !below_user(onto, cls))
      ds.at(subject).types.insert(vocab::iedm("User"));
  for (const auto& r : onto.effective_restrictions(cls)) {
    unsigned have = 0;
    for (const auto& t : ds.at(subject).targets(r.on_property))
      if (satisfies(ds, onto, t, r.filler)) ++have;
    for (; have < r.cardinality; ++have) add_target(ds, onto, subject, r, depth);
  }
}

}  // namespace

void build_witness(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& subject) {
  build(ds, onto, cls, subject, 0);
}

std::vector<Seed> all_restrictions(const Ontology& onto) {
  std::vector<Seed> out;
  for (const auto& [iri, def] : onto.classes())
    for (const auto& r : def.restrictions) out.push_back({iri, r});
  return out;
}

Dataset seeded_dataset(const Ontology& onto, const Seed& seed, bool mutate, Iri& subject) {
  Dataset ds;
  subject = vocab::iedm("Seed_" + seed.declaring_class.local());
  build_witness(ds, onto, seed.declaring_class, subject);
  if (!mutate) return ds;
  const auto& r = seed.restriction;
  if (r.kind == RestrictionKind::Exactly) {
    add_target(ds, onto, subject, r, 0);
  } else {
    std::vector<Iri> matching;
    for (const auto& t : ds.at(subject).targets(r.on_property))
      if (satisfies(ds, onto, t, r.filler)) matching.push_back(t);
    auto& obj = ds.at(subject).object_assertions;
    while (matching.size() >= r.cardinality && !matching.empty()) {
      obj.erase({r.on_property, matching.back()});
      matching.pop_back();
    }
  }
  return ds;
}

Dataset random_dataset(std::mt19937_64& rng, const Ontology& onto) {
  std::vector<Iri> classes, object_props;
  for (const auto& [iri, def] : onto.classes()) classes.push_back(iri);
  for (const auto& [iri, p] : onto.properties())
    if (p.kind == PropertyKind::Object) object_props.push_back(iri);
  auto pick = [&](const auto& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  auto uint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  static const std::vector<std::string> strings = {
      "plain", "with \"quotes\"", "tab\tand\nnewline", "back\\slash", "Ümlaut µ ²", "",
      "Room temperature, in irradiation area: 10x10 mm²", "'single'", "# not a comment"};

  Dataset ds;
  const int n = uint(1, 12);
  std::vector<Iri> iris;
  for (int i = 0; i < n; ++i) {
    Iri iri = coin(0.1) ? Iri::foreign("http://other.example.org/ns#thing" + std::to_string(i))
                        : vocab::iedm("ind_" + std::to_string(i) + (coin(0.3) ? "-x.y" : ""));
    iris.push_back(iri);
  }
  for (const auto& iri : iris) {
    Individual ind;
    ind.iri = iri;
    for (int t = uint(1, 3); t > 0; --t) ind.types.insert(pick(classes));
    for (int a = uint(0, 4); a > 0; --a) ind.object_assertions.insert({pick(object_props), pick(iris)});
    for (int v = uint(0, 2); v > 0; --v) {
      switch (uint(0, 4)) {
        case 0: ind.values.insert(Literal(std::to_string(uint(-1000, 1000)), Datatype::Decimal)); break;
        case 1: ind.values.insert(Literal::number(std::ldexp(uint(1, 1 << 20), uint(-40, 60)))); break;
        case 2: ind.values.insert(Literal::string(pick(strings))); break;
        case 3: ind.values.insert(Literal("2018-03-30T12:00:00Z", Datatype::DateTime)); break;
        default: ind.values.insert(Literal(coin(0.5) ? "true" : "false", Datatype::Boolean)); break;
      }
    }
    ds.put(std::move(ind));
  }
  return ds;
}

}  // namespace iedm::test
