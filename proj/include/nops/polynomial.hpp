#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nops/monomial.hpp"
#include "nops/rational.hpp"

namespace nops {

/// Coefficient-field hooks; specialized per coefficient type.
template <class K>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
};

template <class K>
bool coeff_zero(const K& c) {
  return CoeffTraits<K>::is_zero(c);
}

template <class K>
struct Term {
  Monomial mono;
  K coef;
};

/// Sparse multivariate polynomial over a coefficient field K. Terms are kept
/// sorted grevlex-descending with no zero coefficients, so equal polynomials
/// have equal term vectors.
template <class K>
class BasicPolynomial {
 public:
  using Coeff = K;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::size_t nvars) : n_(nvars) {}
  BasicPolynomial(std::size_t nvars, const K& c) : n_(nvars) {
    if (!coeff_zero(c)) terms_.push_back({Monomial(nvars), c});
  }
  BasicPolynomial(const Monomial& m, const K& c) : n_(m.nvars()) {
    if (!coeff_zero(c)) terms_.push_back({m, c});
  }

  static BasicPolynomial variable(std::size_t nvars, std::size_t index) {
    return BasicPolynomial(Monomial::variable(nvars, index), K(1));
  }

  /// Builds from unsorted terms, merging duplicates.
  static BasicPolynomial from_terms(std::size_t nvars, std::vector<Term<K>> terms) {
    BasicPolynomial p(nvars);
    std::sort(terms.begin(), terms.end(),
              [](const Term<K>& a, const Term<K>& b) { return GrevlexLess{}(b.mono, a.mono); });
    for (auto& t : terms) {
      if (t.mono.nvars() != nvars) throw Error("term length mismatch");
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
      } else {
        if (!p.terms_.empty() && coeff_zero(p.terms_.back().coef)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && coeff_zero(p.terms_.back().coef)) p.terms_.pop_back();
    return p;
  }

  std::size_t nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term<K>>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Leading term under grevlex.
  const Term<K>& leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return terms_.front();
  }

  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.mono.degree());
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.mono[var]);
    return d;
  }

  bool involves(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.mono[var] != 0) return true;
    return false;
  }

  K coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coef;
    return K(0);
  }

  K constant_term() const { return coefficient(Monomial(n_)); }

  BasicPolynomial operator-() const {
    BasicPolynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    return combine(a, b, false);
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) {
    return combine(a, b, true);
  }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_vars(a, b);
    if (a.is_zero() || b.is_zero()) return BasicPolynomial(a.n_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    std::map<Monomial, K> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, inserted] = acc.try_emplace(s.mono * t.mono, s.coef * t.coef);
        if (!inserted) it->second += s.coef * t.coef;
      }
    std::vector<Term<K>> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!coeff_zero(c)) terms.push_back({m, std::move(c)});
    BasicPolynomial r(a.n_);
    std::sort(terms.begin(), terms.end(),
              [](const Term<K>& x, const Term<K>& y) { return GrevlexLess{}(y.mono, x.mono); });
    r.terms_ = std::move(terms);
    return r;
  }

  friend BasicPolynomial operator*(const K& c, const BasicPolynomial& p) { return p.scaled(c); }
  friend BasicPolynomial operator*(const BasicPolynomial& p, const K& c) { return p.scaled(c); }

  BasicPolynomial& operator+=(const BasicPolynomial& o) { return *this = *this + o; }
  BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this = *this - o; }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

  BasicPolynomial scaled(const K& c) const {
    if (coeff_zero(c)) return BasicPolynomial(n_);
    BasicPolynomial r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  /// c * m * this; term order is preserved because grevlex is multiplicative.
  BasicPolynomial mul_term(const Monomial& m, const K& c) const {
    if (coeff_zero(c)) return BasicPolynomial(n_);
    BasicPolynomial r(n_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, K(t.coef * c)});
    return r;
  }

  BasicPolynomial pow(unsigned e) const {
    BasicPolynomial result(n_, K(1));
    BasicPolynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Plain iterated partial derivative d^alpha (no factorial normalization).
  BasicPolynomial derivative(const Monomial& alpha) const {
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      Integer factor = 1;
      bool vanish = false;
      Monomial m(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        unsigned e = t.mono[i], a = alpha[i];
        if (a > e) {
          vanish = true;
          break;
        }
        for (unsigned k = 0; k < a; ++k) factor *= (e - k);
        m.set(i, e - a);
      }
      if (vanish) continue;
      out.push_back({m, t.coef * K(Rational(factor))});
    }
    return from_terms(n_, std::move(out));
  }

  BasicPolynomial derivative(std::size_t var, unsigned times = 1) const {
    return derivative(Monomial::variable(n_, var, times));
  }

  /// Terms of total degree <= d.
  BasicPolynomial truncated(unsigned d) const {
    BasicPolynomial r(n_);
    for (const auto& t : terms_)
      if (t.mono.degree() <= d) r.terms_.push_back(t);
    return r;
  }

  /// Embeds into a ring with more variables (new variables appended).
  BasicPolynomial extended(std::size_t nvars) const {
    BasicPolynomial r(nvars);
    for (const auto& t : terms_) r.terms_.push_back({t.mono.extended(nvars), t.coef});
    // Appending zero exponents keeps the relative grevlex order.
    return r;
  }

  /// Inverse of extended(); the dropped variables must not occur.
  BasicPolynomial truncated_vars(std::size_t nvars) const {
    BasicPolynomial r(nvars);
    for (const auto& t : terms_) r.terms_.push_back({t.mono.truncated(nvars), t.coef});
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
    std::vector<Term<K2>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono, f(t.coef)});
    return BasicPolynomial<K2>::from_terms(n_, std::move(out));
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    return true;
  }

 private:
  static void check_vars(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.n_ != b.n_) throw Error("polynomial variable count mismatch");
  }

  static BasicPolynomial combine(const BasicPolynomial& a, const BasicPolynomial& b, bool subtract) {
    check_vars(a, b);
    BasicPolynomial r(a.n_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const MonomialOrder ord = MonomialOrder::grevlex();
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(a.terms_[i++]);
        continue;
      }
      if (i == a.terms_.size()) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
        continue;
      }
      auto c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
      } else {
        K s = subtract ? K(a.terms_[i].coef - b.terms_[j].coef) : K(a.terms_[i].coef + b.terms_[j].coef);
        if (!coeff_zero(s)) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t n_ = 0;
  std::vector<Term<K>> terms_;
};

using Polynomial = BasicPolynomial<Rational>;

template <class K>
bool is_zero(const BasicPolynomial<K>& p) {
  return p.is_zero();
}

/// Replaces variable i by images[i] when set; unset variables stay themselves.
template <class K>
BasicPolynomial<K> substitute(const BasicPolynomial<K>& f,
                              const std::vector<std::optional<BasicPolynomial<K>>>& images) {
  const std::size_t n = f.nvars();
  if (images.size() != n) throw Error("substitution arity mismatch");
  std::vector<std::vector<BasicPolynomial<K>>> powers(n);  // cached powers per variable
  auto power_of = [&](std::size_t var, unsigned e) -> const BasicPolynomial<K>& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(BasicPolynomial<K>(n, K(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * *images[var]);
    return cache[e];
  };
  BasicPolynomial<K> result(n);
  for (const auto& t : f) {
    Monomial kept(n);
    BasicPolynomial<K> value(n, t.coef);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.mono[i] == 0) continue;
      if (images[i]) value = value * power_of(i, t.mono[i]);
      else kept.set(i, t.mono[i]);
    }
    result += value.mul_term(kept, K(1));
  }
  return result;
}

/// Evaluates f at a point; every variable occurring in f must be assigned.
template <class K>
K evaluate(const BasicPolynomial<K>& f, const std::vector<std::optional<K>>& point) {
  if (point.size() != f.nvars()) throw Error("evaluation arity mismatch");
  K acc(0);
  for (const auto& t : f) {
    K v = t.coef;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!point[i]) throw Error("unassigned variable " + std::to_string(i) + " in evaluation");
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= *point[i];
    }
    acc += v;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers.

/// Scales p so its coefficients are coprime integers with positive leading
/// coefficient; returns the zero polynomial unchanged.
inline Polynomial primitive_integral(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : p) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(p.leading().coef) < 0) scale = -scale;
  return p.scaled(scale);
}

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / p.leading().coef);
}

/// Exact division a / b in Q[vars]; nullopt when b does not divide a.
inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  Polynomial q(a.nvars()), r = a;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lb.mono;
    Rational c = lr.coef / lb.coef;
    q += Polynomial(m, c);
    r -= b.mul_term(m, c);
  }
  return q;
}

namespace detail {

/// Coefficients of p as a polynomial in `var` (index = power).
inline std::vector<Polynomial> univariate_coeffs(const Polynomial& p, std::size_t var) {
  std::vector<std::vector<Term<Rational>>> buckets(std::max(p.degree_in(var), 0) + 1);
  for (const auto& t : p) {
    Monomial m = t.mono;
    unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back({m, t.coef});
  }
  std::vector<Polynomial> out;
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.nvars(), std::move(b)));
  return out;
}

inline Polynomial from_univariate(const std::vector<Polynomial>& coeffs, std::size_t var, std::size_t nvars) {
  Polynomial r(nvars);
  for (std::size_t e = 0; e < coeffs.size(); ++e)
    r += coeffs[e].mul_term(Monomial::variable(nvars, var, e), Rational(1));
  return r;
}

inline std::optional<std::size_t> main_variable(const Polynomial& a, const Polynomial& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.involves(v) || b.involves(v)) return v;
  return std::nullopt;
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.nvars());
  for (const auto& c : univariate_coeffs(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : nops::gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Pseudo-remainder of a by b with respect to var.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  auto bc = univariate_coeffs(b, var);
  const Polynomial& lb = bc.back();
  const std::size_t n = a.nvars();
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    auto ac = univariate_coeffs(a, var);
    Polynomial la = ac.back();
    a = lb * a - (la * b).mul_term(Monomial::variable(n, var, da - db), Rational(1));
  }
  return a;
}

}  // namespace detail

/// Greatest common divisor in Q[vars], normalized monic (grevlex).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(n, Rational(1));
  auto var = detail::main_variable(a, b);
  if (!var) return Polynomial(n, Rational(1));
  const std::size_t v = *var;
  if (!a.involves(v)) return gcd(a, detail::content_in(b, v));
  if (!b.involves(v)) return gcd(detail::content_in(a, v), b);
  Polynomial ca = detail::content_in(a, v), cb = detail::content_in(b, v);
  Polynomial pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.involves(v)) {
    Polynomial r = detail::pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = Polynomial(n);
      break;
    }
    pb = *divide_exact(r, detail::content_in(r, v));
  }
  Polynomial g = pb.is_zero() ? pa : Polynomial(n, Rational(1));
  if (!g.is_zero() && g.involves(v)) g = *divide_exact(g, detail::content_in(g, v));
  else g = Polynomial(n, Rational(1));
  return monic(gcd(ca, cb) * g);
}

}  // namespace nops
