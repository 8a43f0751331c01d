#include "doctest.h"

#include "iedm/error.hpp"
#include "iedm/iri.hpp"
#include "iedm/values.hpp"

using namespace iedm;

TEST_CASE("iri: canonical form and registered prefixes") {
  auto a = Iri::make("iedm", "PCB5-run2017");
  CHECK(a.str() == "iedm:PCB5-run2017");
  CHECK(Iri::parse("iedm:PCB5-run2017") == a);
  CHECK(Iri::parse("om:gray") == vocab::om("gray"));
  CHECK_THROWS_AS(Iri::make("nope", "x"), Error);
  CHECK_THROWS_AS(Iri::make("iedm", "3e17"), Error);
  CHECK_THROWS_AS(Iri::make("iedm", "has space"), Error);
  CHECK_NOTHROW(Iri::make("iedm", "_3e17_protons_per_square_cm"));
  try {
    Iri::parse("bogus");
    FAIL("expected InvalidIri");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidIri);
  }
}

TEST_CASE("iri: namespaces expand and compact") {
  const auto& ns = Namespaces::defaults();
  CHECK(ns.expand(vocab::iedm("DUT")) == "http://example.org/iedm#DUT");
  CHECK(ns.expand(vocab::expo("HasPart")) == "http://www.hozo.jp/owl/EXPOApr19.xml/HasPart");
  CHECK(ns.compact("http://www.ontology-of-units-of-measure.org/resource/om-2/gray") ==
        vocab::om("gray"));
  auto foreign = ns.compact("http://elsewhere.org/a#b");
  CHECK(foreign.is_foreign());
  CHECK(foreign.str() == "<http://elsewhere.org/a#b>");
  Namespaces custom("https://iedm.cern.ch/ns#");
  CHECK(custom.expand(vocab::iedm("DUT")) == "https://iedm.cern.ch/ns#DUT");
  CHECK(custom.compact("https://iedm.cern.ch/ns#DUT") == vocab::iedm("DUT"));
}

TEST_CASE("values: literal lexical checks") {
  CHECK_NOTHROW(Literal("24", Datatype::Decimal));
  CHECK_NOTHROW(Literal("-0.07", Datatype::Decimal));
  CHECK_NOTHROW(Literal("3e17", Datatype::Double));
  CHECK_NOTHROW(Literal("2018-03-30T12:00:00Z", Datatype::DateTime));
  CHECK_NOTHROW(Literal("true", Datatype::Boolean));
  CHECK_THROWS_AS(Literal("3e17", Datatype::Decimal), Error);
  CHECK_THROWS_AS(Literal("abc", Datatype::Double), Error);
  CHECK_THROWS_AS(Literal("2018-13-30T12:00:00Z", Datatype::DateTime), Error);
  CHECK_THROWS_AS(Literal("yes", Datatype::Boolean), Error);
  CHECK(*Literal("3e17", Datatype::Double).as_number() == 3e17);
  CHECK_FALSE(Literal::string("x").as_number());
}

TEST_CASE("values: shortest number formatting") {
  CHECK(format_number(3e17) == "3e17");
  CHECK(format_number(0.07) == "0.07");
  CHECK(format_number(24) == "24");
  CHECK(format_number(1e-5) == "1e-5");
  CHECK(format_number(1.25e-7) == "1.25e-7");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 2.329, 1e300})
    CHECK(std::stod(format_number(v)) == v);
  CHECK(Literal::number(3e17).lexical() == "3e17");
  CHECK(Literal::number(3e17).datatype() == Datatype::Double);
}

TEST_CASE("values: time positions") {
  auto t = TimePosition::parse("2018-03-30T12:00");
  CHECK(t.iso() == "2018-03-30T12:00:00Z");
  CHECK(t.slug() == "_2018_03_30_12h_00");
  CHECK(TimePosition::parse("2018-11-12T18:00:00Z").slug() == "_2018_11_12_18h_00");
  CHECK(TimePosition::parse("2018-03-30T14:00:00+02:00") == t);
  CHECK(TimePosition::parse("2018-03-30T12:00:05.250Z").iso() == "2018-03-30T12:00:05.250Z");
  CHECK(TimePosition::parse("2018-03-30T12:00:00Z") < TimePosition::parse("2018-11-12T18:00:00Z"));
  CHECK_FALSE(TimePosition::try_parse("30/03/2018"));
  CHECK_FALSE(TimePosition::try_parse("2018-02-30T00:00"));
}

TEST_CASE("values: quantity construction") {
  auto q = QuantityValue::make(3e17, vocab::iedm("Fluence"), 0.07);
  CHECK(q.unit == vocab::om("reciprocalSquareCentimetre"));
  CHECK(*q.relative_error == doctest::Approx(0.07));
  CHECK(QuantityValue::make(10, vocab::om("AbsorbedDose")).unit == vocab::om("gray"));
  CHECK(QuantityValue::make(24, vocab::iedm("RelativisticMomentum")).unit == vocab::iedm("GeV_per_c"));
  CHECK_THROWS_AS(QuantityValue::make(-1, vocab::iedm("Fluence")), Error);
  CHECK_THROWS_AS(QuantityValue::make(1, vocab::iedm("Fluence"), 1.5), Error);
  CHECK_THROWS_AS(QuantityValue::make(1, vocab::iedm("DUT")), Error);
  try {
    QuantityValue::make(-1, vocab::iedm("Fluence"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
  }
}
