#pragma once

#include <utility>

#include "nops/polynomial.hpp"

namespace nops {

/// Quotient of two polynomials over Q, kept in lowest terms with a monic
/// denominator. Constants may carry zero variables; they are widened on
/// contact with a non-constant operand.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(0, Rational(1)) {}
  RationalFunction(int c) : RationalFunction(Rational(c)) {}  // NOLINT: coefficient literal
  RationalFunction(const Rational& c) : num_(0, c), den_(0, Rational(1)) {}  // NOLINT
  explicit RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.nvars(), Rational(1)) {}
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    unify(num_, den_);
    normalize();
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  std::size_t nvars() const { return std::max(num_.nvars(), den_.nvars()); }

  /// Widens a constant to `nvars` variables.
  RationalFunction widened(std::size_t nvars) const {
    RationalFunction r = *this;
    if (r.num_.nvars() < nvars) r.num_ = r.num_.extended(nvars);
    if (r.den_.nvars() < nvars) r.den_ = r.den_.extended(nvars);
    return r;
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(RationalFunction a, RationalFunction b) {
    unify(a, b);
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(RationalFunction a, RationalFunction b) {
    unify(a, b);
    if (a.is_zero() || b.is_zero()) return RationalFunction(Polynomial(a.nvars()));
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(RationalFunction a, RationalFunction b) {
    unify(a, b);
    if (b.is_zero()) throw Error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(RationalFunction a, RationalFunction b) {
    unify(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static void unify(Polynomial& a, Polynomial& b) {
    if (a.nvars() == b.nvars()) return;
    if (a.nvars() == 0) a = a.extended(b.nvars());
    else if (b.nvars() == 0) b = b.extended(a.nvars());
    else throw Error("rational function variable count mismatch");
  }
  static void unify(RationalFunction& a, RationalFunction& b) {
    const std::size_t n = std::max(a.nvars(), b.nvars());
    a = a.widened(n);
    b = b.widened(n);
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(den_.nvars(), Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      Polynomial g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    Rational lc = den_.leading().coef;
    if (lc != 1) {
      num_ = num_.scaled(Rational(1) / lc);
      den_ = den_.scaled(Rational(1) / lc);
    }
  }

  Polynomial num_, den_;
};

template <>
struct CoeffTraits<RationalFunction> {
  static bool is_zero(const RationalFunction& f) { return f.is_zero(); }
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

/// Polynomial over Q(u): coefficients are rational functions in the
/// independent variables, monomials range over the dependent ones.
using FracPolynomial = BasicPolynomial<RationalFunction>;

/// Splits p in Q[x, u] into a polynomial in the variables `dependent` with
/// coefficients in Q(u).
inline FracPolynomial to_fraction_field(const Polynomial& p, const std::vector<std::size_t>& dependent) {
  const std::size_t n = p.nvars();
  std::map<Monomial, Polynomial> buckets;
  for (const auto& t : p) {
    Monomial x(n), u = t.mono;
    for (std::size_t v : dependent) {
      x.set(v, t.mono[v]);
      u.set(v, 0);
    }
    auto [it, inserted] = buckets.try_emplace(x, Polynomial(n));
    it->second += Polynomial(u, t.coef);
  }
  std::vector<Term<RationalFunction>> terms;
  for (auto& [m, c] : buckets)
    if (!c.is_zero()) terms.push_back({m, RationalFunction(c)});
  return FracPolynomial::from_terms(n, std::move(terms));
}

/// Inverse of to_fraction_field for polynomial coefficients; throws when a
/// coefficient has a non-constant denominator.
inline Polynomial from_fraction_field(const FracPolynomial& p) {
  Polynomial r(p.nvars());
  for (const auto& t : p) {
    RationalFunction c = t.coef.widened(p.nvars());
    if (!c.is_polynomial()) throw Error("coefficient is not a polynomial");
    Rational d = c.denominator().leading().coef;
    r += c.numerator().mul_term(t.mono, Rational(1) / d);
  }
  return r;
}

}  // namespace nops
