#include "iedm/turtle.hpp"

namespace iedm::rdf {

std::string_view to_string(ImportWarningKind kind) {
  switch (kind) {
    case ImportWarningKind::UnknownClass: return "UnknownClass";
    case ImportWarningKind::UnknownProperty: return "UnknownProperty";
    case ImportWarningKind::LiteralOnObjectProperty: return "LiteralOnObjectProperty";
    case ImportWarningKind::ObjectOnDataProperty: return "ObjectOnDataProperty";
    case ImportWarningKind::LiteralType: return "LiteralType";
    case ImportWarningKind::UntypedIndividual: return "UntypedIndividual";
  }
  return "Unknown";
}

ImportResult dataset_from_graph(const Graph& g, const Ontology& onto) {
  ImportResult result;
  auto warn = [&](ImportWarningKind kind, const Iri& subject, std::string detail) {
    result.warnings.push_back({kind, subject, std::move(detail)});
  };

  auto it = g.triples.begin();
  while (it != g.triples.end()) {
    Individual ind;
    ind.iri = it->subject;
    for (; it != g.triples.end() && it->subject == ind.iri; ++it) {
      const auto& t = *it;
      const auto* obj = std::get_if<Iri>(&t.object);
      if (t.predicate == vocab::rdf_type()) {
        if (!obj) {
          warn(ImportWarningKind::LiteralType, ind.iri, "literal rdf:type object dropped");
          continue;
        }
        Iri cls = onto.canonical_class(*obj);
        if (!onto.has_class(cls)) warn(ImportWarningKind::UnknownClass, ind.iri, cls.str());
        ind.types.insert(cls);
      } else if (t.predicate == vocab::has_value()) {
        if (obj) {
          warn(ImportWarningKind::ObjectOnDataProperty, ind.iri,
               "iedm:hasValue " + obj->str() + " dropped");
          continue;
        }
        ind.values.insert(std::get<Literal>(t.object));
      } else if (!onto.has_property(t.predicate)) {
        if (obj) {
          warn(ImportWarningKind::UnknownProperty, ind.iri, t.predicate.str());
          ind.object_assertions.insert({t.predicate, *obj});
        } else {
          warn(ImportWarningKind::UnknownProperty, ind.iri,
               t.predicate.str() + " (literal value dropped)");
        }
      } else if (!obj) {
        warn(ImportWarningKind::LiteralOnObjectProperty, ind.iri,
             t.predicate.str() + " literal dropped");
      } else {
        ind.object_assertions.insert({t.predicate, *obj});
      }
    }
    if (ind.types.empty()) warn(ImportWarningKind::UntypedIndividual, ind.iri, "no rdf:type");
    result.dataset.put(std::move(ind));
  }
  return result;
}

Graph graph_from_dataset(const Dataset& ds, const Ontology&, const Namespaces& ns) {
  Graph g;
  for (const auto& [iri, ind] : ds.individuals()) {
    for (const auto& t : ind.types) g.add({iri, vocab::rdf_type(), t}, ns);
    for (const auto& a : ind.object_assertions) g.add({iri, a.property, a.target}, ns);
    for (const auto& v : ind.values) g.add({iri, vocab::has_value(), v}, ns);
  }
  return g;
}

Graph graph_from_ontology(const Ontology& onto, const Namespaces& ns) {
  Graph g;
  const Iri rdfs_label = Iri::make("rdfs", "label");
  const Iri rdfs_comment = Iri::make("rdfs", "comment");
  const Iri subclass = Iri::make("rdfs", "subClassOf");
  for (const auto& [iri, p] : onto.properties()) {
    g.add({iri, vocab::rdf_type(),
           Iri::make("owl", p.kind == PropertyKind::Data ? "DatatypeProperty" : "ObjectProperty")},
          ns);
    g.add({iri, rdfs_label, Literal::string(p.label)}, ns);
    if (!p.comment.empty()) g.add({iri, rdfs_comment, Literal::string(p.comment)}, ns);
  }
  for (const auto& [iri, c] : onto.classes()) {
    g.add({iri, vocab::rdf_type(), Iri::make("owl", "Class")}, ns);
    g.add({iri, rdfs_label, Literal::string(c.label)}, ns);
    std::string comment = c.mirror_anchor ? "Mirror anchor. " + c.comment : c.comment;
    if (!comment.empty()) g.add({iri, rdfs_comment, Literal::string(comment)}, ns);
    for (const auto& s : c.superclasses) g.add({iri, subclass, s}, ns);
    unsigned n = 0;
    for (const auto& r : c.restrictions) {
      Iri node = Iri::make(iri.prefix(), iri.local() + "_restriction_" + std::to_string(++n));
      g.add({iri, subclass, node}, ns);
      g.add({node, vocab::rdf_type(), Iri::make("owl", "Restriction")}, ns);
      g.add({node, Iri::make("owl", "onProperty"), r.on_property}, ns);
      g.add({node, Iri::make("owl", "onClass"), r.filler}, ns);
      g.add({node,
             Iri::make("owl", r.kind == RestrictionKind::Exactly ? "qualifiedCardinality"
                                                                  : "minQualifiedCardinality"),
             Literal(std::to_string(r.cardinality), Datatype::Decimal)},
            ns);
      if (!r.note.empty()) g.add({node, rdfs_comment, Literal::string(r.note)}, ns);
    }
  }
  return g;
}

}  // namespace iedm::rdf
