#pragma once

#include <map>
#include <vector>

#include "nops/linalg.hpp"
#include "nops/polynomial.hpp"

namespace nops {

/// Finite-dimensional subspace of P_{<=D} kept in reduced echelon form: every
/// basis element is monic, has a distinct leading (grevlex) monomial, and no
/// basis element contains another's leading monomial. The form is canonical,
/// so equal subspaces have identical bases.
class TruncatedSubspace {
 public:
  TruncatedSubspace(std::size_t nvars, unsigned degree_bound) : n_(nvars), d_(degree_bound) {}

  std::size_t nvars() const { return n_; }
  unsigned degree_bound() const { return d_; }
  std::size_t dimension() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Basis ordered by leading monomial ascending.
  std::vector<Polynomial> basis() const {
    std::vector<Polynomial> out;
    for (const auto& [lead, p] : rows_) out.push_back(p);
    return out;
  }

  /// Adds f to the span; returns false when f was already in it.
  bool insert(const Polynomial& f) {
    if (f.degree() > static_cast<int>(d_)) throw Error("subspace element exceeds the degree bound");
    Polynomial r = reduce(f);
    if (r.is_zero()) return false;
    r = monic(r);
    const Monomial lead = r.leading().mono;
    for (auto& [m, p] : rows_) {
      Rational c = p.coefficient(lead);
      if (!is_zero(c)) p -= r.scaled(c);
    }
    rows_.emplace(lead, std::move(r));
    return true;
  }

  /// Remainder of f against the basis (zero iff f is in the span).
  Polynomial reduce(const Polynomial& f) const {
    Polynomial r = f;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      Rational c = r.coefficient(it->first);
      if (!is_zero(c)) r -= it->second.scaled(c);
    }
    return r;
  }

  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }

  bool is_subspace_of(const TruncatedSubspace& other) const {
    for (const auto& [m, p] : rows_)
      if (!other.contains(p)) return false;
    return true;
  }

  friend bool operator==(const TruncatedSubspace& a, const TruncatedSubspace& b) {
    return a.basis() == b.basis();
  }

  static TruncatedSubspace full(std::size_t nvars, unsigned degree_bound) {
    TruncatedSubspace s(nvars, degree_bound);
    for (const auto& m : monomials_up_to(nvars, degree_bound)) s.insert(Polynomial(m, Rational(1)));
    return s;
  }

 private:
  std::size_t n_;
  unsigned d_;
  std::map<Monomial, Polynomial, GrevlexLess> rows_;
};

/// Common kernel of linear maps on P_{<=D}: {f : image(f) = 0}, where
/// `image(m)` gives, for a monomial m, a sparse vector keyed by Key.
template <class Key, class ImageFn>
TruncatedSubspace kernel_on_monomials(std::size_t nvars, unsigned degree_bound, ImageFn&& image) {
  const auto monos = monomials_up_to(nvars, degree_bound);
  IncrementalKernel<Rational, Key> elim;
  TruncatedSubspace out(nvars, degree_bound);
  for (std::size_t i = 0; i < monos.size(); ++i) {
    auto comb = elim.add(i, image(monos[i]));
    if (!comb) continue;
    std::vector<Term<Rational>> terms;
    for (const auto& [src, c] : *comb) terms.push_back({monos[src], c});
    out.insert(Polynomial::from_terms(nvars, std::move(terms)));
  }
  return out;
}

}  // namespace nops
