#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "iedm/iri.hpp"

namespace iedm {

enum class Datatype { Decimal, Double, String, DateTime, Boolean };

std::string_view to_string(Datatype dt);
/// xsd local name ("decimal", "double", ...) -> Datatype.
std::optional<Datatype> datatype_from_xsd(std::string_view local);

/// Typed literal carried by iedm:hasValue. Lexical forms of non-string
/// datatypes are checked on construction.
class Literal {
 public:
  Literal() = default;
  Literal(std::string lexical, Datatype datatype);

  static Literal string(std::string s) { return {std::move(s), Datatype::String}; }
  static Literal number(double v);  // Double, shortest round-trip lexical form
  static bool is_valid_lexical(std::string_view lexical, Datatype datatype);

  const std::string& lexical() const noexcept { return lexical_; }
  Datatype datatype() const noexcept { return datatype_; }

  /// Numeric value for Decimal/Double literals.
  std::optional<double> as_number() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

 private:
  std::string lexical_;
  Datatype datatype_ = Datatype::String;
};

/// Shortest decimal text that round-trips `v`, exponent without '+' or leading
/// zeros ("3e17", "0.07", "24").
std::string format_number(double v);

/// A UTC instant with millisecond resolution.
class TimePosition {
 public:
  using clock_time = std::chrono::sys_time<std::chrono::milliseconds>;

  TimePosition() = default;
  explicit TimePosition(clock_time t) : time_(t) {}

  /// Accepts `YYYY-MM-DDTHH:MM[:SS[.fff]][Z|±hh:mm]`; a missing zone means UTC.
  static TimePosition parse(std::string_view text);
  static std::optional<TimePosition> try_parse(std::string_view text);
  static TimePosition now();

  clock_time time() const noexcept { return time_; }

  /// `2018-03-30T12:00:00Z` (milliseconds appended only when nonzero).
  std::string iso() const;
  /// Individual local name in the `_2018_03_30_12h_00` style.
  std::string slug() const;

  friend bool operator==(const TimePosition&, const TimePosition&) = default;
  friend auto operator<=>(const TimePosition&, const TimePosition&) = default;

 private:
  clock_time time_{};
};

/// Unit-tagged physical value with an optional relative measurement error.
struct QuantityValue {
  double value = 0.0;
  Iri kind;
  Iri unit;
  std::optional<double> relative_error;

  /// Validates kind membership, sign and error range; throws ValidationError.
  static QuantityValue make(double value, const Iri& kind,
                            std::optional<double> relative_error = std::nullopt,
                            std::optional<Iri> unit = std::nullopt);

  static bool is_supported_kind(const Iri& kind);
  static Iri default_unit(const Iri& kind);
  /// True for kinds whose values may not be negative.
  static bool is_non_negative_kind(const Iri& kind);

  friend bool operator==(const QuantityValue&, const QuantityValue&) = default;
};

}  // namespace iedm
