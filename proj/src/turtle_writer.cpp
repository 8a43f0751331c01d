#include <algorithm>
#include <cstdio>

#include "iedm/turtle.hpp"

namespace iedm::rdf {
namespace {

std::string escape_string(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

class Writer {
 public:
  Writer(const Graph& g, const Namespaces& ns) : g_(g), ns_(ns), prefixes_(g.prefixes) {}

  std::string run() {
    // Collect the prefixes actually needed so the header is complete.
    for (const auto& t : g_.triples) {
      need(t.subject);
      need(t.predicate);
      if (const auto* iri = std::get_if<Iri>(&t.object)) need(*iri);
      else if (std::get<Literal>(t.object).datatype() != Datatype::String) need_prefix("xsd");
    }
    std::string out;
    for (const auto& [prefix, expansion] : prefixes_)
      out += "@prefix " + prefix + ": <" + expansion + "> .\n";

    auto it = g_.triples.begin();
    while (it != g_.triples.end()) {
      const Iri& subject = it->subject;
      std::vector<const Triple*> block;
      for (; it != g_.triples.end() && it->subject == subject; ++it) block.push_back(&*it);
      out += "\n" + render(subject) + "\n";
      write_block(out, block);
    }
    return out;
  }

 private:
  void need_prefix(const std::string& p) {
    if (!prefixes_.count(p)) {
      if (auto e = ns_.expansion(p)) prefixes_[p] = *e;
    }
  }
  void need(const Iri& iri) {
    if (!iri.is_foreign()) need_prefix(iri.prefix());
  }

  std::string render(const Iri& iri) const {
    if (iri.is_foreign()) return "<" + iri.local() + ">";
    auto it = prefixes_.find(iri.prefix());
    std::string expansion = it != prefixes_.end() ? it->second : ns_.expand(iri);
    if (it != prefixes_.end() && iri.local().back() != '.') return iri.str();
    return "<" + expansion + iri.local() + ">";
  }

  std::string render(const Term& t) const {
    if (const auto* iri = std::get_if<Iri>(&t)) return render(*iri);
    const auto& lit = std::get<Literal>(t);
    if (lit.datatype() == Datatype::String) return escape_string(lit.lexical());
    return escape_string(lit.lexical()) + "^^" + render(Iri::make("xsd", to_string(lit.datatype())));
  }

  void write_block(std::string& out, const std::vector<const Triple*>& block) const {
    // Group by predicate; rdf:type first, then predicates by Iri order.
    std::vector<std::pair<Iri, std::vector<std::string>>> groups;
    for (const auto* t : block) {
      if (groups.empty() || groups.back().first != t->predicate) groups.push_back({t->predicate, {}});
      groups.back().second.push_back(render(t->object));
    }
    std::stable_partition(groups.begin(), groups.end(),
                          [](const auto& g) { return g.first == vocab::rdf_type(); });
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& [pred, objects] = groups[i];
      std::sort(objects.begin(), objects.end());
      out += "    ";
      out += pred == vocab::rdf_type() ? std::string("a") : render(pred);
      out += ' ';
      for (std::size_t j = 0; j < objects.size(); ++j) {
        if (j) out += ", ";
        out += objects[j];
      }
      out += i + 1 == groups.size() ? " .\n" : " ;\n";
    }
  }

  const Graph& g_;
  const Namespaces& ns_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

void Graph::add(Triple t, const Namespaces& ns) {
  auto declare_for = [&](const Iri& iri) {
    if (!iri.is_foreign() && !prefixes.count(iri.prefix()))
      prefixes[iri.prefix()] = *ns.expansion(iri.prefix());
  };
  declare_for(t.subject);
  declare_for(t.predicate);
  if (const auto* iri = std::get_if<Iri>(&t.object)) declare_for(*iri);
  else if (std::get<Literal>(t.object).datatype() != Datatype::String)
    declare_for(Iri::make("xsd", "string"));
  triples.insert(std::move(t));
}

std::string serialize_turtle(const Graph& g, const Namespaces& ns) { return Writer(g, ns).run(); }

}  // namespace iedm::rdf
