#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <vector>

#include "nops/rational.hpp"

namespace nops {

/// Upper bound on ambient variables (fresh elimination variables included).
inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector with inline storage. The variable count is part of the
/// value; mixing monomials of different lengths is an error.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(check_nvars(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : n_(check_nvars(exps.size())) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }
  explicit Monomial(const std::vector<unsigned>& exps) : n_(check_nvars(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
  }

  std::size_t nvars() const { return n_; }
  unsigned degree() const { return deg_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned value) {
    if (i >= n_) throw Error("monomial index out of range");
    if (value > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent overflow");
    deg_ = deg_ - e_[i] + value;
    e_[i] = static_cast<std::uint16_t>(value);
  }

  /// Same exponents embedded into a larger (or equal) variable count.
  Monomial extended(std::size_t nvars) const {
    if (nvars < n_) throw Error("cannot shrink monomial");
    Monomial m(nvars);
    for (std::size_t i = 0; i < n_; ++i) m.e_[i] = e_[i];
    m.deg_ = deg_;
    return m;
  }

  /// Drops trailing variables, which must have exponent zero.
  Monomial truncated(std::size_t nvars) const {
    Monomial m(nvars);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < nvars) m.e_[i] = e_[i];
      else if (e_[i] != 0) throw Error("dropped variable occurs in monomial");
    }
    m.deg_ = deg_;
    return m;
  }

  std::vector<unsigned> exponents() const { return {e_.begin(), e_.begin() + n_}; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, unsigned(a.e_[i]) + b.e_[i]);
    return r;
  }

  /// Exact quotient; b must divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      if (b.e_[i] > a.e_[i]) throw Error("monomial division is not exact");
      r.set(i, unsigned(a.e_[i]) - b.e_[i]);
    }
    return r;
  }

  bool divides(const Monomial& other) const {
    check_same(*this, other);
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, std::max(a.e_[i], b.e_[i]));
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, std::min(a.e_[i], b.e_[i]));
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.e_[i] != 0 && b.e_[i] != 0) return false;
    return true;
  }

  /// Product of e_i! over the variables.
  Integer factorial_product() const {
    Integer r = 1;
    for (std::size_t i = 0; i < n_; ++i) r *= factorial(e_[i]);
    return r;
  }

  // Canonical (non-monomial-order) comparison, for use as a map key.
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] <=> b.e_[i];
    return std::strong_ordering::equal;
  }

  friend void check_same(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) throw Error("monomial length mismatch");
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (std::size_t i = 0; i < n_; ++i) h = h * 131 + e_[i];
    return h;
  }

 private:
  static std::uint8_t check_nvars(std::size_t n) {
    if (n > kMaxVars) throw Error("too many variables (limit " + std::to_string(kMaxVars) + ")");
    return static_cast<std::uint8_t>(n);
  }

  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
  std::uint32_t deg_ = 0;
};

/// Term orders. Block orders compare the variables in `block_mask` first
/// (grevlex), then the remaining variables (grevlex); they eliminate the
/// masked variables.
class MonomialOrder {
 public:
  enum class Kind { grevlex, lex, block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static MonomialOrder block(std::uint32_t eliminated_mask) {
    return MonomialOrder(Kind::block, eliminated_mask);
  }
  static MonomialOrder block(const std::vector<std::size_t>& eliminated) {
    std::uint32_t mask = 0;
    for (std::size_t v : eliminated) mask |= (1u << v);
    return block(mask);
  }

  Kind kind() const { return kind_; }
  std::uint32_t block_mask() const { return mask_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    check_same(a, b);
    switch (kind_) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.nvars(); ++i)
          if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
      case Kind::grevlex:
        return grevlex_on(a, b, ~0u);
      case Kind::block: {
        auto first = grevlex_on(a, b, mask_);
        if (first != std::strong_ordering::equal) return first;
        return grevlex_on(a, b, ~mask_);
      }
    }
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::uint32_t mask) : kind_(k), mask_(mask) {}

  static std::strong_ordering grevlex_on(const Monomial& a, const Monomial& b, std::uint32_t mask) {
    unsigned da = 0, db = 0;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (mask & (1u << i)) {
        da += a[i];
        db += b[i];
      }
    }
    if (da != db) return da <=> db;
    for (std::size_t i = a.nvars(); i-- > 0;) {
      if (!(mask & (1u << i))) continue;
      if (a[i] != b[i]) return b[i] <=> a[i];
    }
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::uint32_t mask_;
};

enum class Cmp { LT, EQ, GT };

inline Cmp monomial_compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  auto c = ord.compare(a, b);
  if (c < 0) return Cmp::LT;
  if (c > 0) return Cmp::GT;
  return Cmp::EQ;
}

/// Strict-weak-ordering adaptor: ascending under grevlex.
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return MonomialOrder::grevlex().compare(a, b) < 0;
  }
};

/// All monomials in `vars` (subset of 0..nvars-1) of total degree <= max_degree,
/// listed by degree ascending and, within a degree, grevlex descending.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars,
                                             unsigned max_degree) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    std::vector<Monomial> layer;
    std::function<void(std::size_t, unsigned, Monomial&)> rec = [&](std::size_t k, unsigned left,
                                                                     Monomial& m) {
      if (k + 1 == vars.size()) {
        m.set(vars[k], left);
        layer.push_back(m);
        m.set(vars[k], 0);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m.set(vars[k], e);
        rec(k + 1, left - e, m);
      }
      m.set(vars[k], 0);
    };
    Monomial m(nvars);
    if (vars.empty()) {
      if (d == 0) layer.push_back(m);
    } else {
      rec(0, d, m);
    }
    std::sort(layer.begin(), layer.end(),
              [](const Monomial& a, const Monomial& b) { return GrevlexLess{}(b, a); });
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<std::size_t> vars(nvars);
  for (std::size_t i = 0; i < nvars; ++i) vars[i] = i;
  return monomials_up_to(nvars, vars, max_degree);
}

}  // namespace nops

template <>
struct std::hash<nops::Monomial> {
  std::size_t operator()(const nops::Monomial& m) const noexcept { return m.hash(); }
};
