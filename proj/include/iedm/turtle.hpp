#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iedm/dataset.hpp"
#include "iedm/iri.hpp"
#include "iedm/ontology.hpp"
#include "iedm/values.hpp"

namespace iedm::rdf {

using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend bool operator<(const Triple& a, const Triple& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.object < b.object;
  }
};

/// Prefix declarations plus a duplicate-free triple set.
struct Graph {
  std::map<std::string, std::string> prefixes;
  std::set<Triple> triples;

  /// Inserts a triple, declaring any registered prefix it uses from `ns`.
  void add(Triple t, const Namespaces& ns = Namespaces::defaults());
  void declare(const std::string& prefix, const std::string& expansion) {
    prefixes[prefix] = expansion;
  }
  bool empty() const noexcept { return triples.empty(); }
};

/// Parses the supported Turtle subset: @prefix / PREFIX, prefixed names,
/// IRIREFs, `a`, `;` and `,` lists, plain, long, typed and numeric/boolean
/// literals, `#` comments. Throws SyntaxError(line, column) or
/// Error(UnknownPrefix).
Graph parse_turtle(std::string_view text, const Namespaces& ns = Namespaces::defaults());

/// Deterministic serialization: prefixes sorted, subjects sorted, rdf:type
/// first, remaining predicates and objects sorted. LF line endings.
std::string serialize_turtle(const Graph& g, const Namespaces& ns = Namespaces::defaults());

enum class ImportWarningKind {
  UnknownClass,
  UnknownProperty,
  LiteralOnObjectProperty,
  ObjectOnDataProperty,
  LiteralType,
  UntypedIndividual,
};

std::string_view to_string(ImportWarningKind kind);

struct ImportWarning {
  ImportWarningKind kind;
  Iri subject;
  std::string detail;
  friend bool operator==(const ImportWarning&, const ImportWarning&) = default;
};

struct ImportResult {
  Dataset dataset;
  std::vector<ImportWarning> warnings;
};

/// rdf:type triples become types (class aliases canonicalized), object
/// triples object assertions, iedm:hasValue literals data assertions.
/// Unknown classes and object properties are kept and reported; triples that
/// cannot be represented (literals on anything but iedm:hasValue) are
/// reported and dropped.
ImportResult dataset_from_graph(const Graph& g, const Ontology& onto);

Graph graph_from_dataset(const Dataset& ds, const Ontology& onto,
                         const Namespaces& ns = Namespaces::defaults());

/// T-Box dump for inspection: classes, labels, superclasses and named
/// restriction nodes.
Graph graph_from_ontology(const Ontology& onto, const Namespaces& ns = Namespaces::defaults());

}  // namespace iedm::rdf
