#pragma once

#include <random>

#include "nops/ideal.hpp"

namespace nops {

/// Seeded generator used by every sampled check; reports record the seed.
using Rng = std::mt19937_64;

/// Random polynomial: `terms` monomials of total degree <= max_degree with
/// integer coefficients in [-bound, bound].
inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, unsigned max_degree, int terms = 4, int bound = 5) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, nvars ? nvars - 1 : 0);
  std::vector<Term<Rational>> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m(nvars);
    unsigned target = nvars ? deg(rng) : 0;
    for (unsigned e = 0; e < target; ++e) {
      std::size_t v = var(rng);
      m.set(v, m[v] + 1);
    }
    out.push_back({m, Rational(coef(rng))});
  }
  return Polynomial::from_terms(nvars, std::move(out));
}

/// Random element of the ideal: sum of generators times random polynomials.
inline Polynomial random_element(Rng& rng, const IdealHandle& ideal, unsigned multiplier_degree = 2) {
  Polynomial f(ideal.nvars());
  for (const auto& g : ideal.generators()) f += random_polynomial(rng, ideal.nvars(), multiplier_degree, 3) * g;
  return f;
}

}  // namespace nops
