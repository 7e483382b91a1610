#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "nops/polynomial.hpp"
#include "nops/ratfunc.hpp"

namespace nops {

using VarList = std::vector<std::string>;

/// Syntax error with the 0-based character offset where it was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline std::size_t var_index(const VarList& vars, std::string_view name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  throw Error("unknown variable '" + std::string(name) + "'");
}

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := atom ('^' nat)?
// atom   := rational | var | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarList& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip();
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Polynomial p = term();
    if (negate) p = -p;
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = factor();
    while (accept('*')) p *= factor();
    return p;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected exponent", start);
      if (digits.size() > 5) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    const std::size_t n = vars_.size();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = read_digits();
      std::size_t save = pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        std::string den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", dstart);
        if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", dstart);
        lit += "/" + den;
      } else {
        pos_ = save;
      }
      return Polynomial(n, parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < n; ++i)
        if (vars_[i] == name) return Polynomial::variable(n, i);
      throw ParseError("unknown variable '" + std::string(name) + "'", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const VarList& vars) {
  return detail::PolyParser(text, vars).parse();
}

/// Splits on `sep` at parenthesis depth zero.
inline std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Strips one pair of enclosing parentheses if they wrap the whole text.
inline std::string strip_parens(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) return s;  // "(a)*(b)"
    }
    return trim(std::string_view(s).substr(1, s.size() - 2));
  }
  return s;
}

/// Parses "(g1; g2; ...)" or "g1; g2". An empty list means the zero ideal.
inline std::vector<Polynomial> parse_polynomial_list(std::string_view text, const VarList& vars) {
  std::vector<Polynomial> out;
  std::string body = strip_parens(text);
  if (body.empty()) return out;
  for (const auto& part : split_top_level(body, ';')) {
    std::string p = trim(part);
    if (p.empty()) continue;
    out.push_back(parse_polynomial(p, vars));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing.

inline std::string monomial_to_string(const Monomial& m, const VarList& vars, std::string_view prefix = "") {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += std::string(prefix) + (i < vars.size() ? vars[i] : "v" + std::to_string(i));
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

inline std::string to_string(const Polynomial& p, const VarList& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p) {
    Rational c = t.coef;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    std::string mono = monomial_to_string(t.mono, vars);
    if (mono.empty()) out += c.get_str();
    else if (c == 1) out += mono;
    else out += c.get_str() + "*" + mono;
  }
  return out;
}

inline std::string to_string(const RationalFunction& f, const VarList& vars) {
  RationalFunction w = f.widened(vars.size());
  if (w.is_polynomial()) return to_string(w.numerator().scaled(Rational(1) / w.denominator().leading().coef), vars);
  return "(" + to_string(w.numerator(), vars) + ")/(" + to_string(w.denominator(), vars) + ")";
}

inline std::string to_string(const std::vector<Polynomial>& gens, const VarList& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += "; ";
    out += to_string(gens[i], vars);
  }
  return out + ")";
}

}  // namespace nops
