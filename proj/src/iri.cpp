#include "iedm/iri.hpp"

#include <array>

#include "iedm/error.hpp"

namespace iedm {
namespace {

constexpr std::array<std::string_view, 8> kPrefixes = {"iedm", "expo", "om",   "foaf",
                                                       "rdf",  "rdfs", "owl",  "xsd"};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool Iri::is_registered_prefix(std::string_view prefix) {
  for (auto p : kPrefixes)
    if (p == prefix) return true;
  return false;
}

bool Iri::is_valid_local(std::string_view local) {
  if (local.empty()) return false;
  if (!is_alpha(local[0]) && local[0] != '_') return false;
  for (char c : local.substr(1)) {
    if (!is_alpha(c) && !is_digit(c) && c != '_' && c != '.' && c != '-') return false;
  }
  return true;
}

Iri Iri::make(std::string_view prefix, std::string_view local) {
  if (!is_registered_prefix(prefix))
    throw Error(ErrorCode::InvalidIri, "unregistered prefix '" + std::string(prefix) + "'");
  if (!is_valid_local(local))
    throw Error(ErrorCode::InvalidIri, "invalid local name '" + std::string(local) + "'");
  return Iri(std::string(prefix), std::string(local));
}

Iri Iri::foreign(std::string_view full_iri) {
  if (full_iri.empty()) throw Error(ErrorCode::InvalidIri, "empty IRI");
  for (char c : full_iri) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '>' || c == '"' ||
        c == '{' || c == '}' || c == '|' || c == '^' || c == '`' || c == '\\')
      throw Error(ErrorCode::InvalidIri, "invalid character in IRI <" + std::string(full_iri) + ">");
  }
  return Iri(std::string(), std::string(full_iri));
}

Iri Iri::parse(std::string_view canonical) {
  if (canonical.size() >= 2 && canonical.front() == '<' && canonical.back() == '>')
    return foreign(canonical.substr(1, canonical.size() - 2));
  auto colon = canonical.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::InvalidIri, "missing prefix in '" + std::string(canonical) + "'");
  return make(canonical.substr(0, colon), canonical.substr(colon + 1));
}

std::string Iri::str() const {
  if (is_foreign()) return "<" + local_ + ">";
  return prefix_ + ":" + local_;
}

Namespaces::Namespaces() : Namespaces(std::string(kDefaultIedmBase)) {}

Namespaces::Namespaces(std::string iedm_base) {
  table_ = {
      {"iedm", std::move(iedm_base)},
      {"expo", "http://www.hozo.jp/owl/EXPOApr19.xml/"},
      {"om", "http://www.ontology-of-units-of-measure.org/resource/om-2/"},
      {"foaf", "http://xmlns.com/foaf/0.1/"},
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
      {"owl", "http://www.w3.org/2002/07/owl#"},
      {"xsd", "http://www.w3.org/2001/XMLSchema#"},
  };
}

const Namespaces& Namespaces::defaults() {
  static const Namespaces ns;
  return ns;
}

std::optional<std::string> Namespaces::expansion(std::string_view prefix) const {
  auto it = table_.find(std::string(prefix));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::string Namespaces::expand(const Iri& iri) const {
  if (iri.is_foreign()) return iri.local();
  return table_.at(iri.prefix()) + iri.local();
}

Iri Namespaces::compact(std::string_view full_iri) const {
  // Longest matching namespace wins.
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : table_) {
    const auto& ns = entry.second;
    if (full_iri.size() > ns.size() && full_iri.substr(0, ns.size()) == ns &&
        Iri::is_valid_local(full_iri.substr(ns.size()))) {
      if (!best || ns.size() > best->second.size()) best = &entry;
    }
  }
  if (best) return Iri::make(best->first, full_iri.substr(best->second.size()));
  return Iri::foreign(full_iri);
}

namespace vocab {
Iri iedm(std::string_view local) { return Iri::make("iedm", local); }
Iri expo(std::string_view local) { return Iri::make("expo", local); }
Iri om(std::string_view local) { return Iri::make("om", local); }
Iri foaf(std::string_view local) { return Iri::make("foaf", local); }
const Iri& rdf_type() {
  static const Iri t = Iri::make("rdf", "type");
  return t;
}
const Iri& has_value() {
  static const Iri v = Iri::make("iedm", "hasValue");
  return v;
}
}  // namespace vocab

}  // namespace iedm
