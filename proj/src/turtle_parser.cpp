#include <cstdint>

#include "iedm/error.hpp"
#include "iedm/turtle.hpp"

namespace iedm::rdf {
namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_pn_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  Parser(std::string_view text, const Namespaces& ns) : text_(text), ns_(ns) {}

  Graph run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  // --- cursor -------------------------------------------------------------
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, col_, msg); }
  [[noreturn]] void fail_at(std::size_t line, std::size_t col, const std::string& msg) const {
    throw SyntaxError(line, col, msg);
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c || at_end()) fail(std::string("expected ") + what);
    get();
  }

  bool keyword_ahead(std::string_view kw, bool case_insensitive) const {
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i];
      char b = kw[i];
      if (case_insensitive) {
        if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 32);
        if (b >= 'a' && b <= 'z') b = static_cast<char>(b - 32);
      }
      if (a != b) return false;
    }
    char next = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : ' ';
    return !is_pn_char(next) && next != ':';
  }

  // --- statements ---------------------------------------------------------
  void statement() {
    if (peek() == '@') {
      if (keyword_ahead("@prefix", false)) {
        for (int i = 0; i < 7; ++i) get();
        prefix_directive(true);
        return;
      }
      if (keyword_ahead("@base", false)) fail("@base is not supported");
      fail("unknown directive");
    }
    if (keyword_ahead("PREFIX", true)) {
      for (int i = 0; i < 6; ++i) get();
      prefix_directive(false);
      return;
    }
    if (keyword_ahead("BASE", true)) fail("BASE is not supported");
    triples();
  }

  void prefix_directive(bool needs_dot) {
    skip_ws();
    std::string token;
    if (peek() != ':') {
      if (!is_alpha(peek())) fail("expected prefix name");
      while (!at_end() && is_pn_char(peek())) token += get();
      if (token.back() == '.') fail("prefix name may not end with '.'");
    }
    if (peek() != ':') fail("expected ':' after prefix name");
    get();
    skip_ws();
    std::string iri = iriref();
    if (needs_dot) expect('.', "'.' after @prefix");
    declared_[token] = iri;
    if (Iri::is_registered_prefix(token) && ns_.expansion(token) != iri) {
      auto [it, inserted] = overrides_.emplace(token, iri);
      if (!inserted && it->second != iri) fail("conflicting namespace for prefix '" + token + "'");
      it->second = iri;
    }
  }

  void triples() {
    auto [sline, scol] = std::pair{line_, col_};
    Term subject = term(false);
    const auto* s = std::get_if<Iri>(&subject);
    if (!s) fail_at(sline, scol, "literals cannot be subjects");
    Iri subj = *s;
    skip_ws();
    predicate_object_list(subj);
    expect('.', "'.' to terminate the statement");
  }

  void predicate_object_list(const Iri& subject) {
    for (;;) {
      skip_ws();
      Iri pred = verb();
      for (;;) {
        skip_ws();
        Term obj = term(true);
        graph_.triples.insert({subject, pred, std::move(obj)});
        skip_ws();
        if (peek() == ',' && !at_end()) {
          get();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() != ';' || at_end()) return;
      while (peek() == ';' && !at_end()) {
        get();
        skip_ws();
      }
      if (peek() == '.' || at_end()) return;
    }
  }

  Iri verb() {
    if (peek() == 'a' && !is_pn_char(peek(1)) && peek(1) != ':') {
      get();
      note_prefix(vocab::rdf_type());
      return vocab::rdf_type();
    }
    auto [line, col] = std::pair{line_, col_};
    Term t = term(false);
    const auto* p = std::get_if<Iri>(&t);
    if (!p) fail_at(line, col, "literals cannot be predicates");
    return *p;
  }

  // --- terms --------------------------------------------------------------
  Term term(bool literal_allowed) {
    if (at_end()) fail("unexpected end of input");
    std::size_t line = line_, col = col_;
    char c = peek();
    if (c == '<') return resolve(iriref());
    if (c == '_' && peek(1) == ':') fail("blank nodes are not supported");
    if (c == '[') fail("blank node property lists are not supported");
    if (c == '(') fail("collections are not supported");
    if (c == '"' || c == '\'') {
      if (!literal_allowed) fail("literal not allowed here");
      return string_literal(line, col);
    }
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) {
      if (!literal_allowed) fail("literal not allowed here");
      return numeric_literal(line, col);
    }
    if (keyword_ahead("true", false) || keyword_ahead("false", false)) {
      if (!literal_allowed) fail("literal not allowed here");
      std::string word = peek() == 't' ? "true" : "false";
      for (std::size_t i = 0; i < word.size(); ++i) get();
      return Literal(word, Datatype::Boolean);
    }
    if (is_alpha(c) || c == ':') return prefixed_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string iriref() {
    if (peek() != '<') fail("expected '<'");
    get();
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`' || c == '\\')
        fail("invalid character in IRI");
      out += c;
    }
    auto colon = out.find(':');
    if (colon == std::string::npos || colon == 0 || !is_alpha(out[0]))
      fail("relative IRIs are not supported");
    return out;
  }

  Iri prefixed_name() {
    std::size_t line = line_, col = col_;
    std::string prefix;
    while (!at_end() && peek() != ':' && is_pn_char(peek())) prefix += get();
    if (peek() != ':') fail_at(line, col, "expected prefixed name");
    get();
    std::string local;
    while (!at_end() && is_pn_char(peek())) local += get();
    // A trailing '.' terminates the statement rather than the name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --col_;
    }
    auto it = declared_.find(prefix);
    if (it == declared_.end())
      throw Error(ErrorCode::UnknownPrefix, "line " + std::to_string(line) + ", column " +
                                                std::to_string(col) + ": undeclared prefix '" +
                                                prefix + "'");
    return resolve(it->second + local);
  }

  Iri resolve(const std::string& full) {
    for (const auto& [token, expansion] : overrides_) {
      if (full.size() > expansion.size() && full.compare(0, expansion.size(), expansion) == 0) {
        std::string_view rest = std::string_view(full).substr(expansion.size());
        if (Iri::is_valid_local(rest)) {
          graph_.prefixes[token] = expansion;
          return Iri::make(token, rest);
        }
      }
    }
    Iri iri = ns_.compact(full);
    if (!iri.is_foreign()) {
      if (overrides_.count(iri.prefix())) {
        // The document re-bound this token elsewhere; keep the IRI verbatim.
        return Iri::foreign(full);
      }
      graph_.prefixes[iri.prefix()] = *ns_.expansion(iri.prefix());
    }
    return iri;
  }

  void note_prefix(const Iri& iri) {
    if (iri.is_foreign()) return;
    auto it = overrides_.find(iri.prefix());
    graph_.prefixes[iri.prefix()] = it != overrides_.end() ? it->second : *ns_.expansion(iri.prefix());
  }

  Literal string_literal(std::size_t line, std::size_t col) {
    char quote = get();
    bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      get();
      get();
    } else if (peek() == quote) {
      // Empty short string.
      get();
      return finish_literal(std::string(), line, col);
    }
    std::string out;
    for (;;) {
      if (at_end()) fail_at(line, col, "unterminated string literal");
      char c = peek();
      if (c == quote) {
        if (!long_form) {
          get();
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          get();
          get();
          get();
          // """a"""" : extra quotes belong to the content.
          while (peek() == quote && !at_end()) out += get();
          break;
        }
        out += get();
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in string literal");
      if (c == '\\') {
        get();
        escape(out);
        continue;
      }
      out += get();
    }
    return finish_literal(std::move(out), line, col);
  }

  void escape(std::string& out) {
    if (at_end()) fail("unterminated escape");
    char e = get();
    switch (e) {
      case 't': out += '\t'; return;
      case 'b': out += '\b'; return;
      case 'n': out += '\n'; return;
      case 'r': out += '\r'; return;
      case 'f': out += '\f'; return;
      case '"': out += '"'; return;
      case '\'': out += '\''; return;
      case '\\': out += '\\'; return;
      case 'u':
      case 'U': {
        int digits = e == 'u' ? 4 : 8;
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
          if (at_end()) fail("truncated unicode escape");
          char h = get();
          cp <<= 4;
          if (is_digit(h)) cp |= static_cast<std::uint32_t>(h - '0');
          else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
          else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
          else fail("invalid hex digit in unicode escape");
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point");
        append_utf8(out, cp);
        return;
      }
      default: fail(std::string("invalid escape '\\") + e + "'");
    }
  }

  Literal finish_literal(std::string lexical, std::size_t line, std::size_t col) {
    if (peek() == '@' && !at_end()) fail("language tags are not supported");
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      Iri dt;
      if (peek() == '<') dt = resolve(iriref());
      else if (is_alpha(peek()) || peek() == ':') dt = prefixed_name();
      else fail("expected datatype IRI after '^^'");
      if (dt.prefix() != "xsd") fail_at(line, col, "unsupported datatype " + dt.str());
      Datatype type;
      const std::string& l = dt.local();
      if (auto d = datatype_from_xsd(l)) type = *d;
      else if (l == "integer" || l == "int" || l == "long" || l == "short" ||
               l == "nonNegativeInteger" || l == "positiveInteger" || l == "unsignedInt")
        type = Datatype::Decimal;
      else if (l == "float") type = Datatype::Double;
      else fail_at(line, col, "unsupported datatype " + dt.str());
      if (!Literal::is_valid_lexical(lexical, type))
        fail_at(line, col, "'" + lexical + "' is not a valid " + dt.str());
      return Literal(std::move(lexical), type);
    }
    return Literal(std::move(lexical), Datatype::String);
  }

  Literal numeric_literal(std::size_t line, std::size_t col) {
    std::string out;
    if (peek() == '+' || peek() == '-') out += get();
    bool digits = false;
    while (is_digit(peek()) && !at_end()) out += get(), digits = true;
    bool is_double = false;
    if (peek() == '.' && is_digit(peek(1))) {
      out += get();
      while (is_digit(peek()) && !at_end()) out += get();
      digits = true;
    }
    if (!digits) fail_at(line, col, "malformed number");
    if (peek() == 'e' || peek() == 'E') {
      out += get();
      if (peek() == '+' || peek() == '-') out += get();
      if (!is_digit(peek())) fail_at(line, col, "malformed exponent");
      while (is_digit(peek()) && !at_end()) out += get();
      is_double = true;
    }
    if (is_pn_char(peek()) && peek() != '.' && !at_end()) fail("unexpected character after number");
    return Literal(out, is_double ? Datatype::Double : Datatype::Decimal);
  }

  std::string_view text_;
  const Namespaces& ns_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::map<std::string, std::string> declared_;
  std::map<std::string, std::string> overrides_;
  Graph graph_;
};

}  // namespace

Graph parse_turtle(std::string_view text, const Namespaces& ns) { return Parser(text, ns).run(); }

}  // namespace iedm::rdf
