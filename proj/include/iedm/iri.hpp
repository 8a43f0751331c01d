#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace iedm {

/// Namespace-qualified identifier, e.g. `iedm:FCC-Radmon`.
///
/// The prefix is one of the registered namespace tokens (iedm, expo, om, foaf,
/// rdf, rdfs, owl, xsd). Full IRIs that fall outside every registered namespace
/// are kept as *foreign* Iris: empty prefix, the complete IRI as local part,
/// rendered as `<...>`.
class Iri {
 public:
  Iri() = default;

  /// Throws Error(InvalidIri) when the prefix is not registered or the local
  /// name does not match `[A-Za-z_][A-Za-z0-9_.-]*`.
  static Iri make(std::string_view prefix, std::string_view local);

  /// Parses the canonical "prefix:local" form (or `<full>` for foreign Iris).
  static Iri parse(std::string_view canonical);

  static Iri foreign(std::string_view full_iri);

  static bool is_registered_prefix(std::string_view prefix);
  static bool is_valid_local(std::string_view local);

  const std::string& prefix() const noexcept { return prefix_; }
  const std::string& local() const noexcept { return local_; }
  bool is_foreign() const noexcept { return prefix_.empty(); }
  bool empty() const noexcept { return local_.empty(); }

  std::string str() const;

  friend bool operator==(const Iri&, const Iri&) = default;
  // (prefix, local) order coincides with the order of canonical strings
  // because no registered prefix is a proper prefix of another one followed
  // by a character below ':'.
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
    if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
    return a.local_ <=> b.local_;
  }

 private:
  Iri(std::string prefix, std::string local)
      : prefix_(std::move(prefix)), local_(std::move(local)) {}

  std::string prefix_;
  std::string local_;
};

/// Expansion table prefix -> namespace IRI. The iedm base is configurable.
class Namespaces {
 public:
  static constexpr std::string_view kDefaultIedmBase = "http://example.org/iedm#";

  Namespaces();
  explicit Namespaces(std::string iedm_base);

  static const Namespaces& defaults();

  const std::map<std::string, std::string>& table() const noexcept { return table_; }
  std::optional<std::string> expansion(std::string_view prefix) const;

  /// Full IRI for a prefixed Iri; foreign Iris are returned verbatim.
  std::string expand(const Iri& iri) const;

  /// Maps a full IRI back onto a registered namespace when one matches and
  /// the remainder is a valid local name; otherwise a foreign Iri.
  Iri compact(std::string_view full_iri) const;

 private:
  std::map<std::string, std::string> table_;
};

// Vocabulary shortcuts used across modules.
namespace vocab {
Iri iedm(std::string_view local);
Iri expo(std::string_view local);
Iri om(std::string_view local);
Iri foaf(std::string_view local);
const Iri& rdf_type();
const Iri& has_value();
}  // namespace vocab

}  // namespace iedm

template <>
struct std::hash<iedm::Iri> {
  std::size_t operator()(const iedm::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.prefix()) * 31 ^ std::hash<std::string>{}(iri.local());
  }
};
