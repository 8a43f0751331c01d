#include "iedm/values.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "iedm/error.hpp"

namespace iedm {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [+-]?(\d+(\.\d*)?|\.\d+), returns the number of characters consumed or 0.
std::size_t scan_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i, ++frac_digits;
  }
  if (int_digits == 0 && frac_digits == 0) return 0;
  return i;
}

bool valid_decimal(std::string_view s) {
  auto n = scan_decimal(s);
  return n > 0 && n == s.size();
}

bool valid_double(std::string_view s) {
  if (s == "INF" || s == "-INF" || s == "+INF" || s == "NaN") return true;
  auto n = scan_decimal(s);
  if (n == 0) return false;
  if (n == s.size()) return true;
  if (s[n] != 'e' && s[n] != 'E') return false;
  std::size_t i = n + 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++digits;
  return digits > 0 && i == s.size();
}

int read_fixed(std::string_view s, std::size_t pos, std::size_t width, bool& ok) {
  if (pos + width > s.size()) {
    ok = false;
    return 0;
  }
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!is_digit(s[i])) {
      ok = false;
      return 0;
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

std::string_view to_string(Datatype dt) {
  switch (dt) {
    case Datatype::Decimal: return "decimal";
    case Datatype::Double: return "double";
    case Datatype::String: return "string";
    case Datatype::DateTime: return "dateTime";
    case Datatype::Boolean: return "boolean";
  }
  return "string";
}

std::optional<Datatype> datatype_from_xsd(std::string_view local) {
  if (local == "decimal") return Datatype::Decimal;
  if (local == "double") return Datatype::Double;
  if (local == "string") return Datatype::String;
  if (local == "dateTime") return Datatype::DateTime;
  if (local == "boolean") return Datatype::Boolean;
  return std::nullopt;
}

bool Literal::is_valid_lexical(std::string_view lexical, Datatype datatype) {
  switch (datatype) {
    case Datatype::Decimal: return valid_decimal(lexical);
    case Datatype::Double: return valid_double(lexical);
    case Datatype::String: return true;
    case Datatype::DateTime: return TimePosition::try_parse(lexical).has_value();
    case Datatype::Boolean:
      return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
  }
  return false;
}

Literal::Literal(std::string lexical, Datatype datatype)
    : lexical_(std::move(lexical)), datatype_(datatype) {
  if (!is_valid_lexical(lexical_, datatype_))
    throw Error(ErrorCode::InvalidLiteral, "'" + lexical_ + "' is not a valid xsd:" +
                                               std::string(to_string(datatype_)));
}

Literal Literal::number(double v) { return Literal(format_number(v), Datatype::Double); }

std::optional<double> Literal::as_number() const {
  if (datatype_ != Datatype::Decimal && datatype_ != Datatype::Double) return std::nullopt;
  if (lexical_ == "INF" || lexical_ == "+INF") return HUGE_VAL;
  if (lexical_ == "-INF") return -HUGE_VAL;
  if (lexical_ == "NaN") return std::nan("");
  std::string_view s = lexical_;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // from_chars rejects forms such as "5." and ".5" on some libraries.
    try {
      return std::stod(std::string(s));
    } catch (...) {
      return std::nullopt;
    }
  }
  return v;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  bool negative = false;
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
    negative = exponent[0] == '-';
    exponent.erase(0, 1);
  }
  auto nz = exponent.find_first_not_of('0');
  exponent = nz == std::string::npos ? "0" : exponent.substr(nz);
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

std::optional<TimePosition> TimePosition::try_parse(std::string_view s) {
  using namespace std::chrono;
  bool ok = true;
  // YYYY-MM-DDTHH:MM
  if (s.size() < 16 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't') ||
      s[13] != ':')
    return std::nullopt;
  int y = read_fixed(s, 0, 4, ok);
  int mo = read_fixed(s, 5, 2, ok);
  int d = read_fixed(s, 8, 2, ok);
  int hh = read_fixed(s, 11, 2, ok);
  int mi = read_fixed(s, 14, 2, ok);
  if (!ok) return std::nullopt;
  std::size_t pos = 16;
  int ss = 0;
  int ms = 0;
  if (pos < s.size() && s[pos] == ':') {
    ss = read_fixed(s, pos + 1, 2, ok);
    if (!ok) return std::nullopt;
    pos += 3;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::size_t start = pos;
      int scale = 100;
      while (pos < s.size() && is_digit(s[pos])) {
        ms += (s[pos] - '0') * scale;
        scale /= 10;
        ++pos;
      }
      if (pos == start) return std::nullopt;
    }
  }
  int offset_minutes = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' || s[pos] == 'z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      int sign = s[pos] == '-' ? -1 : 1;
      if (pos + 6 > s.size() || s[pos + 3] != ':') return std::nullopt;
      int oh = read_fixed(s, pos + 1, 2, ok);
      int om = read_fixed(s, pos + 4, 2, ok);
      if (!ok || oh > 14 || om > 59) return std::nullopt;
      offset_minutes = sign * (oh * 60 + om);
      pos += 6;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;
  if (hh > 23 || mi > 59 || ss > 59) return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  auto t = sys_days{ymd} + hours{hh} + minutes{mi} + seconds{ss} + milliseconds{ms} -
           minutes{offset_minutes};
  return TimePosition(time_point_cast<milliseconds>(t));
}

TimePosition TimePosition::parse(std::string_view text) {
  auto t = try_parse(text);
  if (!t)
    throw Error(ErrorCode::InvalidLiteral, "'" + std::string(text) + "' is not an ISO-8601 instant");
  return *t;
}

TimePosition TimePosition::now() {
  return TimePosition(
      std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now()));
}

namespace {
struct Fields {
  int y;
  unsigned mo, d;
  long hh, mi, ss, ms;
};

Fields split(TimePosition::clock_time t) {
  using namespace std::chrono;
  auto days = floor<std::chrono::days>(t);
  year_month_day ymd{days};
  auto rest = t - days;
  auto h = duration_cast<hours>(rest);
  rest -= h;
  auto m = duration_cast<minutes>(rest);
  rest -= m;
  auto s = duration_cast<seconds>(rest);
  rest -= s;
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day()), static_cast<long>(h.count()),
          static_cast<long>(m.count()), static_cast<long>(s.count()),
          static_cast<long>(rest.count())};
}
}  // namespace

std::string TimePosition::iso() const {
  auto f = split(time_);
  char buf[48];
  if (f.ms != 0)
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ldZ", f.y, f.mo, f.d, f.hh,
                  f.mi, f.ss, f.ms);
  else
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", f.y, f.mo, f.d, f.hh, f.mi,
                  f.ss);
  return buf;
}

std::string TimePosition::slug() const {
  auto f = split(time_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "_%04d_%02u_%02u_%02ldh_%02ld", f.y, f.mo, f.d, f.hh, f.mi);
  std::string out = buf;
  if (f.ss != 0 || f.ms != 0) {
    std::snprintf(buf, sizeof buf, "_%02lds", f.ss);
    out += buf;
    if (f.ms != 0) {
      std::snprintf(buf, sizeof buf, "_%03ldms", f.ms);
      out += buf;
    }
  }
  return out;
}

bool QuantityValue::is_supported_kind(const Iri& kind) {
  return kind == vocab::iedm("Fluence") || kind == vocab::om("AbsorbedDose") ||
         kind == vocab::om("Energy") || kind == vocab::om("Activity") ||
         kind == vocab::iedm("RelativisticMomentum");
}

bool QuantityValue::is_non_negative_kind(const Iri& kind) {
  return kind == vocab::iedm("Fluence") || kind == vocab::om("AbsorbedDose") ||
         kind == vocab::iedm("AbsorbedDose") || kind == vocab::om("Activity");
}

Iri QuantityValue::default_unit(const Iri& kind) {
  if (kind == vocab::iedm("Fluence")) return vocab::om("reciprocalSquareCentimetre");
  if (kind == vocab::om("AbsorbedDose")) return vocab::om("gray");
  if (kind == vocab::om("Energy")) return vocab::om("megaelectronvolt");
  if (kind == vocab::om("Activity")) return vocab::om("becquerel");
  if (kind == vocab::iedm("RelativisticMomentum")) return vocab::iedm("GeV_per_c");
  throw Error(ErrorCode::ValidationError, "unsupported quantity kind " + kind.str());
}

QuantityValue QuantityValue::make(double value, const Iri& kind,
                                  std::optional<double> relative_error,
                                  std::optional<Iri> unit) {
  if (!is_supported_kind(kind))
    throw Error(ErrorCode::ValidationError, "unsupported quantity kind " + kind.str());
  if (!std::isfinite(value))
    throw Error(ErrorCode::ValidationError, "quantity value must be finite");
  if (is_non_negative_kind(kind) && value < 0)
    throw Error(ErrorCode::ValidationError,
                kind.str() + " must be non-negative, got " + format_number(value));
  if (relative_error && !(*relative_error >= 0.0 && *relative_error <= 1.0))
    throw Error(ErrorCode::ValidationError, "relative error must lie in [0, 1]");
  QuantityValue q;
  q.value = value;
  q.kind = kind;
  q.unit = unit ? *unit : default_unit(kind);
  q.relative_error = relative_error;
  return q;
}

}  // namespace iedm
