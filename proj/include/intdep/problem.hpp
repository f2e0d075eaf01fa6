#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "intdep/errors.hpp"
#include "intdep/ring.hpp"

namespace intdep {

/// A parsed problem file.
///
///   # comment
///   ring Q[x,y,z] / (x^3 + y^3 + z^3);
///   I = (x + y + z, y*z);
///   J = (x + y, z);
///   option c = 4;
///   option assert-domain;
///   option oracle;
///   option sharp-range;
///
/// Fields are `Q` or `GF p`. Polynomials use integer coefficients, `+ - * ^`
/// and parentheses. Every relation and generator must be homogeneous.
struct ProblemSpec {
  struct NamedIdeal {
    std::string name;
    std::vector<Polynomial> generators;
  };

  Ring ring;
  std::vector<NamedIdeal> ideals;
  std::optional<std::uint32_t> c;
  bool assert_domain = false;
  bool oracle = false;
  bool sharp_range = false;

  const NamedIdeal* find(const std::string& name) const {
    for (const NamedIdeal& i : ideals) {
      if (i.name == name) return &i;
    }
    return nullptr;
  }

  GradedIdeal ideal(const std::string& name) const {
    const NamedIdeal* i = find(name);
    if (i == nullptr) throw std::invalid_argument("problem defines no ideal named " + name);
    return GradedIdeal(ring, i->generators);
  }
};

namespace detail {

struct Token {
  enum class Kind { ident, integer, symbol, end } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(ch)) {
      advance();
      continue;
    }
    const std::size_t l = line;
    const std::size_t c = col;
    if (std::isalpha(ch) || ch == '_') {
      std::string s;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                                 (text[i] == '-' && !s.empty() && i + 1 < text.size() &&
                                  std::isalpha(static_cast<unsigned char>(text[i + 1])) && out.size() > 0 &&
                                  out.back().text == "option"))) {
        s += text[i];
        advance();
      }
      out.push_back({Token::Kind::ident, s, l, c});
    } else if (std::isdigit(ch)) {
      std::string s;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        s += text[i];
        advance();
      }
      out.push_back({Token::Kind::integer, s, l, c});
    } else if (std::string("[](),;=+-*^/").find(static_cast<char>(ch)) != std::string::npos) {
      out.push_back({Token::Kind::symbol, std::string(1, static_cast<char>(ch)), l, c});
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", l, c);
    }
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  ProblemSpec parse() {
    ProblemSpec spec;
    while (peek().kind != Token::Kind::end) {
      const Token& t = peek();
      if (t.kind != Token::Kind::ident) fail("expected a statement", t);
      if (t.text == "ring") {
        if (spec.ring) fail("ring declared twice", t);
        next();
        spec.ring = parse_ring();
      } else if (t.text == "option") {
        next();
        parse_option(spec);
      } else {
        if (!spec.ring) fail("the ring must be declared before ideals", t);
        const Token name = next();
        if (spec.find(name.text)) fail("ideal " + name.text + " defined twice", name);
        expect("=");
        spec.ideals.push_back({name.text, parse_list(spec.ring)});
      }
      expect(";");
    }
    if (!spec.ring) fail("missing ring declaration", peek());
    return spec;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::Kind::symbol && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }
  void expect(const std::string& sym) {
    if (!accept(sym)) fail("expected '" + sym + "'", peek());
  }
  [[noreturn]] static void fail(const std::string& what, const Token& at) {
    throw ParseError(what + (at.kind == Token::Kind::end ? " at end of input" : " near '" + at.text + "'"), at.line,
                     at.column);
  }

  std::uint64_t integer() {
    const Token& t = peek();
    if (t.kind != Token::Kind::integer) fail("expected an integer", t);
    next();
    if (t.text.size() > 18) fail("integer too large", t);
    return std::stoull(t.text);
  }

  Ring parse_ring() {
    const Token& ft = peek();
    if (ft.kind != Token::Kind::ident) fail("expected a field (Q or GF p)", ft);
    next();
    Field field = Field::rationals();
    if (ft.text == "GF") {
      const Token& pt = peek();
      const std::uint64_t p = integer();
      try {
        field = Field::prime(static_cast<std::int64_t>(p));
      } catch (const std::exception& e) {
        fail(e.what(), pt);
      }
    } else if (ft.text != "Q") {
      fail("unknown field", ft);
    }
    expect("[");
    std::vector<std::string> vars;
    do {
      const Token& v = peek();
      if (v.kind != Token::Kind::ident) fail("expected a variable name", v);
      if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) fail("duplicate variable", v);
      vars.push_back(next().text);
    } while (accept(","));
    expect("]");
    std::vector<Polynomial> relations;
    if (accept("/")) {
      Ring free = RingSpec::make(field, vars);
      relations = parse_list(free);
    }
    return RingSpec::make(field, vars, relations);
  }

  void parse_option(ProblemSpec& spec) {
    const Token& t = peek();
    if (t.kind != Token::Kind::ident) fail("expected an option name", t);
    next();
    if (t.text == "c") {
      expect("=");
      const Token& v = peek();
      const std::uint64_t c = integer();
      if (c == 0 || c > 1000) fail("c out of range", v);
      spec.c = static_cast<std::uint32_t>(c);
    } else if (t.text == "assert-domain") {
      spec.assert_domain = true;
    } else if (t.text == "oracle") {
      spec.oracle = true;
    } else if (t.text == "sharp-range") {
      spec.sharp_range = true;
    } else {
      fail("unknown option", t);
    }
  }

  std::vector<Polynomial> parse_list(const Ring& ring) {
    expect("(");
    std::vector<Polynomial> out;
    if (accept(")")) return out;
    do {
      const Token start = peek();
      Polynomial p = expression(ring);
      if (!p.is_zero() && !p.homogeneous_degree()) fail("non-homogeneous polynomial", start);
      out.push_back(std::move(p));
    } while (accept(","));
    expect(")");
    return out;
  }

  Polynomial expression(const Ring& ring) {
    Polynomial acc = ring->zero();
    bool negate = accept("-");
    if (!negate) accept("+");
    while (true) {
      Polynomial t = term(ring);
      acc = negate ? acc - t : acc + t;
      if (accept("+")) {
        negate = false;
      } else if (accept("-")) {
        negate = true;
      } else {
        return acc;
      }
    }
  }

  Polynomial term(const Ring& ring) {
    Polynomial acc = power(ring);
    while (accept("*")) acc = acc * power(ring);
    return acc;
  }

  Polynomial power(const Ring& ring) {
    Polynomial base = atom(ring);
    if (accept("^")) {
      const Token& e = peek();
      const std::uint64_t n = integer();
      if (n > 10000) fail("exponent too large", e);
      base = base.pow(static_cast<unsigned>(n));
    }
    return base;
  }

  Polynomial atom(const Ring& ring) {
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) {
      next();
      return Polynomial::constant(ring->nvars(), ring->field(), mpq_class(mpz_class(t.text)));
    }
    if (t.kind == Token::Kind::ident) {
      auto idx = ring->index_of(t.text);
      if (!idx) fail("unknown variable", t);
      next();
      return ring->var(*idx);
    }
    if (accept("(")) {
      Polynomial p = expression(ring);
      expect(")");
      return p;
    }
    fail("expected a polynomial", t);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ProblemSpec parse_problem(const std::string& text) { return detail::Parser(text).parse(); }

/// Canonical text form; parse_problem(serialize_problem(p)) reproduces p.
inline std::string serialize_problem(const ProblemSpec& spec) {
  const auto& names = spec.ring->variables();
  auto list = [&](const std::vector<Polynomial>& ps) {
    std::string s = "(";
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string(names);
    return s + ")";
  };
  std::string out = "ring " + spec.ring->field().to_string() + "[";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  out += "]";
  if (!spec.ring->relations().empty()) out += " / " + list(spec.ring->relations());
  out += ";\n";
  for (const auto& ideal : spec.ideals) out += ideal.name + " = " + list(ideal.generators) + ";\n";
  if (spec.c) out += "option c = " + std::to_string(*spec.c) + ";\n";
  if (spec.assert_domain) out += "option assert-domain;\n";
  if (spec.oracle) out += "option oracle;\n";
  if (spec.sharp_range) out += "option sharp-range;\n";
  return out;
}

inline bool operator==(const ProblemSpec::NamedIdeal& a, const ProblemSpec::NamedIdeal& b) {
  return a.name == b.name && a.generators == b.generators;
}

inline bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  return a.ring->to_string() == b.ring->to_string() && a.ideals == b.ideals && a.c == b.c &&
         a.assert_domain == b.assert_domain && a.oracle == b.oracle && a.sharp_range == b.sharp_range;
}

}  // namespace intdep
