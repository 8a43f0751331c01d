#include "doctest.h"

#include <random>

#include "iedm/error.hpp"
#include "iedm/turtle.hpp"
#include "support.hpp"

using namespace iedm;
using namespace iedm::rdf;

namespace {
const Ontology& onto() { return Ontology::builtin(); }
Iri I(const char* s) { return Iri::parse(s); }

bool has(const Graph& g, const char* s, const char* p, const Term& o) {
  return g.triples.count({I(s), I(p), o}) == 1;
}

std::pair<std::size_t, std::size_t> syntax_position(std::string_view text) {
  try {
    parse_turtle(text);
  } catch (const SyntaxError& e) {
    return {e.line(), e.column()};
  }
  FAIL("expected SyntaxError");
  return {0, 0};
}
}  // namespace

TEST_CASE("turtle: golden fixture parses to the expected triples") {
  auto g = parse_turtle(test::read_fixture("fcc_radmon.ttl"));
  CHECK(has(g, "iedm:FCC-RadmonIrradiation", "iedm:hasDUT", I("iedm:PCB5-run2017")));
  CHECK(has(g, "iedm:FCC-Radmon", "rdf:type", I("iedm:IrradiationExperiment")));
  CHECK(has(g, "iedm:_3e17_protons_per_square_cm", "iedm:hasValue", Literal("3e17", Datatype::Double)));
  CHECK(has(g, "iedm:_7_per_cent", "iedm:hasValue", Literal("0.07", Datatype::Decimal)));
  CHECK(has(g, "iedm:_24_GeV_per_c", "iedm:hasValue", Literal("24", Datatype::Decimal)));
  CHECK(has(g, "iedm:_2018_03_30_12h_00", "iedm:hasValue",
            Literal("2018-03-30T12:00:00Z", Datatype::DateTime)));
  CHECK(has(g, "iedm:FCC-RadmonAdminInfo", "iedm:hasRole", I("iedm:Operator1")));
  CHECK(has(g, "iedm:FCC-RadmonAdminInfo", "iedm:hasRole", I("iedm:FCC-RadmonResponsible")));
}

TEST_CASE("turtle: syntax subset") {
  auto g = parse_turtle(R"(PREFIX iedm: <http://example.org/iedm#>
prefix xsd: <http://www.w3.org/2001/XMLSchema#>
iedm:a a iedm:DUT , iedm:IrradiationExperimentObject ;
  iedm:hasValue """multi
line "quoted" text""" , 'single é' , "x"^^xsd:string , true , -1.5 , 2E3 ,
  "5"^^xsd:integer ; .
<http://example.org/iedm#b> iedm:hasPart iedm:a.
)");
  CHECK(has(g, "iedm:a", "rdf:type", I("iedm:IrradiationExperimentObject")));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal::string("multi\nline \"quoted\" text")));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal::string("single \xc3\xa9")));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal::string("x")));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal("true", Datatype::Boolean)));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal("-1.5", Datatype::Decimal)));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal("2E3", Datatype::Double)));
  CHECK(has(g, "iedm:a", "iedm:hasValue", Literal("5", Datatype::Decimal)));
  CHECK(has(g, "iedm:b", "iedm:hasPart", I("iedm:a")));
  CHECK(g.triples.size() == 10);
}

TEST_CASE("turtle: errors carry positions") {
  auto [line, col] = syntax_position("@prefix iedm: <http://example.org/iedm#> .\niedm:a iedm:hasPart .\n");
  CHECK(line == 2);
  CHECK(col == 21);
  CHECK(syntax_position("@prefix iedm: <http://example.org/iedm#> .\niedm:a a iedm:DUT").first == 2);
  CHECK(syntax_position("@prefix iedm: <http://example.org/iedm#> .\niedm:a iedm:hasValue \"x\"@en .")
            .first == 2);
  CHECK(syntax_position("@prefix iedm: <http://example.org/iedm#> .\n_:b a iedm:DUT .").first == 2);
  CHECK(syntax_position("@base <http://example.org/> .").first == 1);
  CHECK(syntax_position("<relative> a <http://example.org/iedm#DUT> .").first == 1);
  CHECK(syntax_position("@prefix iedm: <http://example.org/iedm#> .\niedm:a iedm:hasValue \"open")
            .first == 2);
  try {
    parse_turtle("\n  nope:a a nope:B .");
    FAIL("expected UnknownPrefix");
  } catch (const SyntaxError&) {
    FAIL("undeclared prefixes are not syntax errors");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPrefix);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("turtle: foreign namespaces and custom iedm base") {
  auto g = parse_turtle(R"(@prefix ex: <http://other.org/ns#> .
@prefix iedm: <https://iedm.cern.ch/ns#> .
ex:thing a iedm:DUT .
)");
  REQUIRE(g.triples.size() == 1);
  const auto& t = *g.triples.begin();
  CHECK(t.subject.is_foreign());
  CHECK(t.subject.str() == "<http://other.org/ns#thing>");
  CHECK(std::get<Iri>(t.object) == I("iedm:DUT"));
  CHECK(g.prefixes.at("iedm") == "https://iedm.cern.ch/ns#");
  auto text = serialize_turtle(g);
  CHECK(text.find("@prefix iedm: <https://iedm.cern.ch/ns#> .") != std::string::npos);
  CHECK(parse_turtle(text).triples == g.triples);
}

TEST_CASE("turtle: serialization is deterministic and round-trips the golden graph") {
  auto g = parse_turtle(test::read_fixture("fcc_radmon.ttl"));
  auto a = serialize_turtle(g);
  auto b = serialize_turtle(parse_turtle(a));
  CHECK(a == b);
  CHECK(parse_turtle(a).triples == g.triples);
  CHECK(a.find("\r") == std::string::npos);
  CHECK(a.rfind("@prefix", 0) == 0);
}

TEST_CASE("turtle: dataset mapping of the golden fixture") {
  auto r = test::load_golden();
  CHECK(r.warnings.empty());
  CHECK(r.dataset.contains(I("iedm:FCC-Radmon")));
  CHECK(r.dataset.at(I("iedm:PCB5-run2017")).has_type(I("iedm:DUT")));
  auto g = graph_from_dataset(r.dataset, onto());
  CHECK(g.triples == parse_turtle(test::read_fixture("fcc_radmon.ttl")).triples);
  auto again = dataset_from_graph(parse_turtle(serialize_turtle(g)), onto());
  CHECK(again.dataset == r.dataset);
}

TEST_CASE("turtle: import warnings keep or drop as documented") {
  auto r = dataset_from_graph(parse_turtle(R"(@prefix iedm: <http://example.org/iedm#> .
@prefix ex: <http://other.org/ns#> .
iedm:a a iedm:Gizmo ; ex:likes iedm:b ; ex:label "kept?" ; iedm:hasDUT "literal" .
iedm:b iedm:hasPart iedm:a .
iedm:c a iedm:DUTirradiation .
)"),
                              onto());
  auto kinds = [&] {
    std::multiset<ImportWarningKind> k;
    for (const auto& w : r.warnings) k.insert(w.kind);
    return k;
  }();
  CHECK(kinds.count(ImportWarningKind::UnknownClass) == 1);
  CHECK(kinds.count(ImportWarningKind::UnknownProperty) == 2);
  CHECK(kinds.count(ImportWarningKind::LiteralOnObjectProperty) == 1);
  CHECK(kinds.count(ImportWarningKind::UntypedIndividual) == 1);
  const auto& a = r.dataset.at(I("iedm:a"));
  CHECK(a.has_type(I("iedm:Gizmo")));
  CHECK(a.object_assertions.size() == 1);
  CHECK(a.values.empty());
  CHECK(r.dataset.at(I("iedm:c")).has_type(I("iedm:DUTIrradiation")));
}

TEST_CASE("turtle: randomized datasets round-trip") {
  std::mt19937_64 rng(20190315);
  for (int i = 0; i < 150; ++i) {
    auto ds = test::random_dataset(rng, onto());
    auto g = graph_from_dataset(ds, onto());
    auto text = serialize_turtle(g);
    auto parsed = parse_turtle(text);
    CHECK(parsed.triples == g.triples);
    CHECK(serialize_turtle(parsed) == text);
    auto back = dataset_from_graph(parsed, onto());
    CHECK(back.dataset == ds);
  }
}

TEST_CASE("turtle: T-Box dump parses back") {
  auto g = graph_from_ontology(onto());
  auto text = serialize_turtle(g);
  auto parsed = parse_turtle(text);
  CHECK(parsed.triples == g.triples);
  CHECK(parsed.triples.count({I("iedm:Operator"), I("rdfs:subClassOf"), I("iedm:IrradiationFacilityUser")}) == 1);
}

TEST_CASE("turtle: parser never crashes on garbage") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "@prefix iedm: <http://a#> . ; , a \"'\\ \n\t#_:[]()^^0123456789eE+-xyz";
  for (int round = 0; round < 300; ++round) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, round < 295 ? 400 : 1 << 20)(rng);
    std::string text(n, ' ');
    for (auto& ch : text) ch = alphabet[rng() % alphabet.size()];
    try {
      parse_turtle(text);
    } catch (const Error&) {
    }
  }
  // Byte-level noise including NUL and high bytes.
  for (int round = 0; round < 200; ++round) {
    std::string text(std::uniform_int_distribution<int>(0, 300)(rng), '\0');
    for (auto& ch : text) ch = static_cast<char>(rng());
    try {
      parse_turtle(text);
    } catch (const Error&) {
    }
  }
  CHECK(true);
}
