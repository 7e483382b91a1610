#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nops/ideal.hpp"
#include "nops/random.hpp"

namespace nops {

/// Linear differential operator sum_alpha c_alpha(x) d^alpha on Q[x], where
/// d^alpha is plain iterated differentiation. An optional modulus realizes an
/// operator into a quotient P/M: outputs are reduced to normal form and the
/// coefficients are stored reduced as well, so an operator is zero as a map
/// exactly when it has no terms.
class DiffOp {
 public:
  using TermMap = std::map<Monomial, Polynomial, GrevlexLess>;

  DiffOp() = default;
  explicit DiffOp(std::size_t nvars) : n_(nvars) {}

  static DiffOp identity(std::size_t nvars) { return multiplication(Polynomial(nvars, Rational(1))); }
  static DiffOp multiplication(const Polynomial& f) {
    DiffOp op(f.nvars());
    op.add_term(Monomial(f.nvars()), f);
    return op;
  }
  static DiffOp partial(std::size_t nvars, std::size_t var, unsigned times = 1) {
    DiffOp op(nvars);
    op.add_term(Monomial::variable(nvars, var, times), Polynomial(nvars, Rational(1)));
    return op;
  }

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  const std::optional<IdealHandle>& modulus() const { return modulus_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& alpha, const Polynomial& coeff) {
    if (alpha.nvars() != n_ || coeff.nvars() != n_) throw Error("operator variable count mismatch");
    auto [it, inserted] = terms_.try_emplace(alpha, coeff);
    if (!inserted) it->second += coeff;
    if (modulus_) it->second = normal_form(it->second, *modulus_);
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Composes with the projection onto P/M.
  DiffOp with_modulus(const IdealHandle& m) const {
    if (m.nvars() != n_) throw Error("modulus variable count mismatch");
    DiffOp r(n_);
    r.modulus_ = m;
    for (const auto& [a, c] : terms_) r.add_term(a, c);
    return r;
  }

  DiffOp without_modulus() const {
    DiffOp r = *this;
    r.modulus_.reset();
    return r;
  }

  /// Left multiplication by a polynomial.
  DiffOp times(const Polynomial& w) const {
    DiffOp r(n_);
    r.modulus_ = modulus_;
    for (const auto& [a, c] : terms_) r.add_term(a, w * c);
    return r;
  }

  DiffOp scaled(const Rational& q) const { return times(Polynomial(n_, q)); }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    if (!r.modulus_) r.modulus_ = b.modulus_;
    for (const auto& [al, c] : b.terms_) r.add_term(al, c);
    return r;
  }

  /// Structural equality of the normalized term maps (moduli not compared).
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
  std::optional<IdealHandle> modulus_;
};

/// Order: the largest |alpha| with a nonzero (normalized) coefficient; 0 for
/// the zero operator.
inline unsigned order(const DiffOp& op) {
  unsigned e = 0;
  for (const auto& [a, c] : op.terms()) e = std::max(e, a.degree());
  return e;
}

/// delta(f) = sum c_alpha d^alpha f, reduced modulo the operator's modulus.
inline Polynomial apply(const DiffOp& op, const Polynomial& f) {
  if (f.nvars() != op.nvars()) throw Error("apply: variable mismatch between operator and polynomial");
  Polynomial out(f.nvars());
  for (const auto& [a, c] : op.terms()) {
    if (a.degree() > static_cast<unsigned>(std::max(f.degree(), 0))) continue;
    Polynomial d = f.derivative(a);
    if (!d.is_zero()) out += c * d;
  }
  if (op.modulus()) out = normal_form(out, *op.modulus());
  return out;
}

/// [delta, f](g) = delta(f g) - f delta(g), expanded by the Leibniz rule:
/// the coefficient of d^(alpha-gamma) gains c_alpha binom(alpha, gamma) d^gamma f.
inline DiffOp bracket(const DiffOp& op, const Polynomial& f) {
  const std::size_t n = op.nvars();
  DiffOp r(n);
  if (op.modulus()) r = r.with_modulus(*op.modulus());
  for (const auto& [alpha, c] : op.terms()) {
    for (const auto& gamma : monomials_up_to(n, alpha.degree())) {
      if (gamma.is_one() || !gamma.divides(alpha)) continue;
      Integer b = 1;
      for (std::size_t i = 0; i < n; ++i) b *= binomial(alpha[i], gamma[i]);
      Polynomial df = f.derivative(gamma);
      if (df.is_zero()) continue;
      r.add_term(alpha / gamma, (c * df).scaled(Rational(b)));
    }
  }
  return r;
}

/// Rescales so coefficients are coprime integer polynomials and the leading
/// coefficient of the highest-order term is positive. Kernels are unchanged.
inline DiffOp make_primitive(const DiffOp& op) {
  if (op.is_zero()) return op;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [a, c] : op.terms())
    for (const auto& t : c) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(op.terms().rbegin()->second.leading().coef) < 0) scale = -scale;
  return op.scaled(scale);
}

/// Rebuilds the operator of order <= d from its values on the monomials of
/// degree <= d: delta(x^beta) = sum_{gamma <= beta} c_gamma beta!/(beta-gamma)! x^(beta-gamma).
template <class ValueFn>
DiffOp from_monomial_values(std::size_t nvars, unsigned d, ValueFn&& value) {
  DiffOp r(nvars);
  for (const auto& beta : monomials_up_to(nvars, d)) {
    Polynomial rest = value(beta);
    // Subtract contributions of the lower gamma already known.
    for (const auto& [gamma, c] : r.terms()) {
      if (!gamma.divides(beta)) continue;
      Integer falling = 1;
      for (std::size_t i = 0; i < nvars; ++i)
        for (unsigned k = 0; k < gamma[i]; ++k) falling *= (beta[i] - k);
      rest -= (c * Polynomial(beta / gamma, Rational(1))).scaled(Rational(falling));
    }
    r.add_term(beta, rest.scaled(Rational(1) / Rational(beta.factorial_product())));
  }
  return r;
}

/// Finite family of operators sharing one target modulus.
struct OperatorSet {
  std::vector<DiffOp> ops;
  std::optional<IdealHandle> modulus;

  unsigned max_order() const {
    unsigned e = 0;
    for (const auto& op : ops) e = std::max(e, order(op));
    return e;
  }
  std::size_t size() const { return ops.size(); }
};

inline OperatorSet make_operator_set(std::vector<DiffOp> ops, const IdealHandle& modulus) {
  OperatorSet s;
  for (auto& op : ops) s.ops.push_back(op.with_modulus(modulus));
  s.modulus = modulus;
  return s;
}

// ---------------------------------------------------------------------------
// Text form: `dx` is d/dx; coefficients are written to the left, e.g.
// `y*dx*dy + 1`, `dx^2`. Sets are semicolon-separated.

inline DiffOp parse_operator(std::string_view text, const VarList& vars) {
  const std::size_t n = vars.size();
  VarList extended = vars;
  for (const auto& v : vars) {
    std::string d = "d" + v;
    if (std::find(vars.begin(), vars.end(), d) != vars.end())
      throw Error("variable name '" + d + "' clashes with derivative symbol");
    extended.push_back(d);
  }
  Polynomial p = parse_polynomial(text, extended);
  DiffOp op(n);
  std::map<Monomial, std::vector<Term<Rational>>> buckets;
  for (const auto& t : p) {
    Monomial x(n), alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, t.mono[i]);
      alpha.set(i, t.mono[n + i]);
    }
    buckets[alpha].push_back({x, t.coef});
  }
  for (auto& [alpha, terms] : buckets) op.add_term(alpha, Polynomial::from_terms(n, std::move(terms)));
  return op;
}

inline std::vector<DiffOp> parse_operator_list(std::string_view text, const VarList& vars) {
  std::vector<DiffOp> out;
  for (const auto& part : split_top_level(strip_parens(text), ';')) {
    std::string p = trim(part);
    if (!p.empty()) out.push_back(parse_operator(p, vars));
  }
  return out;
}

inline std::string to_string(const DiffOp& op, const VarList& vars) {
  if (op.is_zero()) return "0";
  std::string out;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    std::string d = monomial_to_string(alpha, vars, "d");
    std::string piece;
    if (d.empty()) {
      piece = to_string(c, vars);
    } else if (c.size() == 1) {
      const auto& t = c.leading();
      std::string mono = monomial_to_string(t.mono, vars);
      Rational q = t.coef;
      std::string sign = sgn(q) < 0 ? "-" : "";
      if (sgn(q) < 0) q = -q;
      std::string scalar = q == 1 ? "" : q.get_str();
      std::string coef = scalar;
      if (!mono.empty()) coef += (coef.empty() ? "" : "*") + mono;
      piece = sign + (coef.empty() ? d : coef + "*" + d);
    } else {
      piece = "(" + to_string(c, vars) + ")*" + d;
    }
    if (out.empty()) out = piece;
    else if (piece[0] == '-') out += " - " + piece.substr(1);
    else out += " + " + piece;
  }
  return out;
}

inline std::string to_string(const std::vector<DiffOp>& ops, const VarList& vars) {
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) out += (i ? "; " : "") + to_string(ops[i], vars);
  return out;
}

// ---------------------------------------------------------------------------

struct OrderLemmaResult {
  bool passed = true;
  std::size_t samples = 0;
  std::optional<Polynomial> witness;  // f in J^(e+t) with delta(f) outside I^t
};

/// Samples f in J^(e+t), e = order(delta), and checks delta(f) ∈ I^t (plus
/// the operator's modulus). Any counterexample is an arithmetic bug.
inline OrderLemmaResult check_order_lemma(const DiffOp& op, const IdealHandle& j, const IdealHandle& i, unsigned t,
                                          std::size_t samples, std::uint64_t seed = 1) {
  Rng rng(seed);
  const unsigned e = order(op);
  IdealHandle power = ideal_power(j, e + t);
  IdealHandle target = ideal_power(i, t);
  if (op.modulus()) target = ideal_sum(target, *op.modulus());
  OrderLemmaResult res;
  for (std::size_t k = 0; k < samples; ++k) {
    Polynomial f = random_element(rng, power);
    ++res.samples;
    if (!ideal_contains(target, apply(op, f))) {
      res.passed = false;
      res.witness = f;
      break;
    }
  }
  return res;
}

}  // namespace nops
