#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nops/diffop.hpp"
#include "nops/linalg.hpp"
#include "nops/ratfunc.hpp"
#include "nops/subspace.hpp"

namespace nops {

/// Q claimed p-primary, with p ∩ Q[independent] = 0.
struct PrimaryComponent {
  IdealHandle primary;
  IdealHandle prime;
  std::vector<std::size_t> independent;
};

enum class CertificateStatus { exact, verified_up_to_degree, refuted };

inline std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::exact: return "exact";
    case CertificateStatus::verified_up_to_degree: return "verified_up_to_degree";
    case CertificateStatus::refuted: return "refuted";
  }
  return "?";
}

/// Which side of the equality a refutation witness lies on.
enum class WitnessSide {
  none,
  in_ideal_not_killed,  // witness ∈ a but some δ_i(witness) ≢ 0
  killed_not_in_ideal,  // all δ_i(witness) ≡ 0 but witness ∉ a
};

struct NoetherianCertificate {
  OperatorSet ops;
  CertificateStatus status = CertificateStatus::verified_up_to_degree;
  unsigned degree_bound = 0;
  std::optional<Polynomial> witness;
  WitnessSide side = WitnessSide::none;
  std::string note;
};

inline std::vector<std::size_t> complement_vars(std::size_t nvars, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars; ++i)
    if (std::find(vars.begin(), vars.end(), i) == vars.end()) out.push_back(i);
  return out;
}

/// Leading data of Q·F[x] over F = Q(u), read off a block-order basis with x ≫ u.
struct FiberData {
  std::vector<Monomial> leads;           // x-parts of leading monomials
  std::vector<Polynomial> leading_coeffs;  // their coefficients in Q[u]
};

inline FiberData fiber_data(const IdealHandle& q, const std::vector<std::size_t>& dependent) {
  FiberData out;
  for (const auto& g : buchberger(q.generators(), MonomialOrder::block(dependent))) {
    FracPolynomial f = to_fraction_field(g, dependent);
    out.leads.push_back(f.leading().mono);
    out.leading_coeffs.push_back(f.leading().coef.widened(q.nvars()).numerator());
  }
  return out;
}

/// dim_F F[x]/Q·F[x]; throws if it is not finite or Q·F[x] is the unit ideal.
inline std::size_t fiber_colength(const IdealHandle& q, const std::vector<std::size_t>& dependent) {
  FiberData fd = fiber_data(q, dependent);
  for (const auto& m : fd.leads)
    if (m.is_one()) throw Error("ideal extends to the unit ideal over the fraction field");
  try {
    return standard_monomials_of(q.nvars(), dependent, fd.leads).size();
  } catch (const Error&) {
    throw Error("ideal is not zero-dimensional over the fraction field of the independent variables");
  }
}

/// The F-rational point of a prime p over F = Q(u): p·F[x] = (x_j - r_j(u)).
/// Coordinates are listed in the order of `dependent`.
inline std::vector<RationalFunction> rational_point(const IdealHandle& p, const std::vector<std::size_t>& dependent) {
  std::vector<FracPolynomial> gens;
  for (const auto& g : p.generators()) gens.push_back(to_fraction_field(g, dependent));
  auto gb = buchberger(gens);
  const std::size_t n = p.nvars();
  std::vector<std::optional<RationalFunction>> coords(n);
  for (const auto& g : gb) {
    const Monomial& lead = g.leading().mono;
    std::optional<std::size_t> var;
    for (auto v : dependent)
      if (lead == Monomial::variable(n, v)) var = v;
    if (!var || g.size() > 2 || (g.size() == 2 && !g.terms()[1].mono.is_one()))
      throw Error("prime has no rational point over the fraction field of the independent variables");
    coords[*var] = g.size() == 2 ? -g.terms()[1].coef : RationalFunction(0);
  }
  std::vector<RationalFunction> out;
  for (auto v : dependent) {
    if (!coords[v]) throw Error("prime has no rational point over the fraction field of the independent variables");
    out.push_back(*coords[v]);
  }
  return out;
}

namespace detail {

template <class K>
struct LocalDual {
  std::vector<Monomial> columns;
  std::vector<std::vector<K>> vectors;  // Taylor-coefficient functionals at the origin
};

/// Truncated Macaulay dual at the origin of the ideal generated by `shifted`
/// in the variables `dependent`, grown until it reaches `colength` functionals.
template <class K>
LocalDual<K> local_dual(const std::vector<BasicPolynomial<K>>& shifted, std::size_t nvars,
                        const std::vector<std::size_t>& dependent, std::size_t colength) {
  for (unsigned t = 0; t <= colength; ++t) {
    auto cols = monomials_up_to(nvars, dependent, t);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < cols.size(); ++i) index.emplace(cols[i], i);
    Matrix<K> m(0, cols.size());
    for (const auto& beta : monomials_up_to(nvars, dependent, t)) {
      for (const auto& g : shifted) {
        auto h = g.mul_term(beta, K(1)).truncated(t);
        if (h.is_zero()) continue;
        std::vector<K> row(cols.size(), K(0));
        for (const auto& term : h) row[index.at(term.mono)] = term.coef;
        m.append_row(row);
      }
    }
    auto ker = kernel(m);
    if (ker.size() == colength) return {std::move(cols), std::move(ker)};
    if (ker.size() > colength) throw Error("local dual exceeds the colength");
  }
  throw Error("ideal is not primary at the given point");
}

}  // namespace detail

/// Macaulay dual of a zero-dimensional ideal primary to the maximal ideal of
/// `point`: constant-coefficient operators, returned with the maximal ideal
/// as modulus so that reduce-after-apply is evaluation at the point.
inline std::vector<DiffOp> dual_space(const IdealHandle& q, const std::vector<Rational>& point) {
  const std::size_t n = q.nvars();
  if (point.size() != n) throw Error("dual_space: point has the wrong number of coordinates");
  std::vector<std::optional<Rational>> at(point.begin(), point.end());
  for (const auto& g : q.generators())
    if (!is_zero(evaluate(g, at))) throw Error("dual_space: point is not a root of the ideal");
  const std::size_t colength = standard_monomials(q).size();
  if (colength == 0) throw Error("dual_space: unit ideal");

  std::vector<std::optional<Polynomial>> shift(n);
  std::vector<Polynomial> maximal;
  for (std::size_t i = 0; i < n; ++i) {
    shift[i] = Polynomial::variable(n, i) + Polynomial(n, point[i]);
    maximal.push_back(Polynomial::variable(n, i) - Polynomial(n, point[i]));
  }
  std::vector<Polynomial> shifted;
  for (const auto& g : q.generators()) shifted.push_back(substitute(g, shift));
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;

  auto dual = detail::local_dual(shifted, n, all, colength);
  IdealHandle modulus(n, maximal);
  std::vector<DiffOp> out;
  for (const auto& v : dual.vectors) {
    DiffOp op(n);
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!is_zero(v[c]))
        op.add_term(dual.columns[c], Polynomial(n, v[c] / Rational(dual.columns[c].factorial_product())));
    out.push_back(make_primitive(op).with_modulus(modulus));
  }
  return out;
}

/// Noetherian operators of a p-primary ideal: the dual space at the
/// F-rational point of p over F = Q(u), with denominators in Q[u] cleared.
inline OperatorSet noetherian_ops_primary(const PrimaryComponent& comp) {
  const IdealHandle& q = comp.primary;
  const IdealHandle& p = comp.prime;
  const std::size_t n = q.nvars();
  if (p.nvars() != n) throw Error("primary component: variable count mismatch");
  for (auto v : comp.independent)
    if (v >= n) throw Error("primary component: independent variable out of range");
  if (auto w = subset_witness(q, p)) throw Error("primary component: generator of Q is not in p");
  const auto dependent = complement_vars(n, comp.independent);
  if (!eliminate(p, dependent).is_zero())
    throw Error("primary component: declared independent variables are not independent modulo p");

  const auto point = rational_point(p, dependent);
  const std::size_t colength = fiber_colength(q, dependent);

  std::vector<std::optional<FracPolynomial>> shift(n);
  for (std::size_t k = 0; k < dependent.size(); ++k) {
    std::size_t v = dependent[k];
    shift[v] = FracPolynomial::variable(n, v) + FracPolynomial(n, point[k]);
  }
  std::vector<FracPolynomial> shifted;
  for (const auto& g : q.generators()) {
    FracPolynomial s = substitute(to_fraction_field(g, dependent), shift);
    if (!s.is_zero() && !is_zero(s.coefficient(Monomial(n))))
      throw Error("primary component: Q does not vanish at the point of p");
    shifted.push_back(std::move(s));
  }

  auto dual = detail::local_dual(shifted, n, dependent, colength);
  std::vector<DiffOp> ops;
  for (const auto& v : dual.vectors) {
    std::vector<std::pair<Monomial, RationalFunction>> coeffs;
    Polynomial denom_lcm(n, Rational(1));
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (is_zero(v[c])) continue;
      RationalFunction f = (v[c] / RationalFunction(Rational(dual.columns[c].factorial_product()))).widened(n);
      const Polynomial& d = f.denominator();
      denom_lcm = *divide_exact(denom_lcm * d, gcd(denom_lcm, d));
      coeffs.emplace_back(dual.columns[c], f);
    }
    std::vector<std::pair<Monomial, Polynomial>> cleared;
    Polynomial common(n);
    for (const auto& [alpha, f] : coeffs) {
      Polynomial c = f.numerator() * *divide_exact(denom_lcm, f.denominator());
      common = common.is_zero() ? c : gcd(common, c);
      cleared.emplace_back(alpha, c);
    }
    DiffOp op(n);
    for (const auto& [alpha, c] : cleared) op.add_term(alpha, *divide_exact(c, common));
    ops.push_back(make_primitive(op));
  }
  return make_operator_set(std::move(ops), p);
}

/// Merges per-component operator sets into one set describing the
/// intersection, with common modulus rad. The operators of component i are
/// multiplied by e_i, a product of generators of the other minimal primes
/// chosen outside p_i, so they vanish identically on the other components.
inline OperatorSet combine_components(const std::vector<std::pair<PrimaryComponent, OperatorSet>>& comps,
                                      const RingSpec& ring, const IdealHandle& target) {
  if (comps.empty()) throw Error("combine_components: no components");
  IdealHandle meet = comps.front().first.primary;
  for (std::size_t i = 1; i < comps.size(); ++i) meet = ideal_intersect(meet, comps[i].first.primary);
  if (auto w = subset_witness(target, meet))
    throw Error("combine_components: intersection mismatch, discrepancy generator " + to_string(*w, ring.vars));
  if (auto w = subset_witness(meet, target))
    throw Error("combine_components: intersection mismatch, discrepancy generator " + to_string(*w, ring.vars));

  std::vector<IdealHandle> primes = ring.minimal_primes;
  if (primes.empty())
    for (const auto& [c, s] : comps) {
      bool seen = false;
      for (const auto& q : primes) seen = seen || ideal_equal(q, c.prime);
      if (!seen) primes.push_back(c.prime);
    }

  OperatorSet out;
  out.modulus = ring.radical;
  for (const auto& [comp, set] : comps) {
    const std::size_t n = comp.prime.nvars();
    Polynomial e(n, Rational(1));
    for (const auto& q : primes) {
      if (ideal_equal(q, comp.prime)) continue;
      std::optional<Polynomial> pick;
      for (const auto& g : q.generators())
        if (!ideal_contains(comp.prime, g)) {
          pick = g;
          break;
        }
      if (!pick) throw Error("combine_components: minimal primes are not pairwise incomparable");
      e = e * *pick;
    }
    for (const auto& op : set.ops) {
      DiffOp m = op.without_modulus().times(e).with_modulus(ring.radical);
      if (!m.is_zero()) out.ops.push_back(make_primitive(m));
    }
  }
  return out;
}

namespace detail {

/// Exact comparison of the operators' functionals with the dual of a·F[x] at
/// the F-rational point of the modulus. Returns nullopt when the setting does
/// not apply (the truncated check is then authoritative).
inline std::optional<bool> exact_dual_match(const IdealHandle& a, const OperatorSet& ops,
                                            std::optional<std::vector<std::size_t>> independent, std::string& note) {
  const IdealHandle& mod = *ops.modulus;
  const std::size_t n = a.nvars();
  std::vector<std::size_t> dependent;
  if (independent) {
    dependent = complement_vars(n, *independent);
  } else {
    std::vector<bool> used(n, false);
    IdealHandle lex = mod.with_order(MonomialOrder::lex());
    for (const auto& g : lex.ordered_basis())
      for (std::size_t i = 0; i < n; ++i) used[i] = used[i] || g.lead().mono[i] > 0;
    for (std::size_t i = 0; i < n; ++i)
      if (used[i]) dependent.push_back(i);
  }
  for (const auto& op : ops.ops)
    for (const auto& [alpha, c] : op.terms())
      for (std::size_t i = 0; i < n; ++i)
        if (alpha[i] > 0 && std::find(dependent.begin(), dependent.end(), i) == dependent.end()) return std::nullopt;
  if (!eliminate(mod, dependent).is_zero()) return std::nullopt;

  std::vector<RationalFunction> point;
  std::size_t colength = 0;
  FiberData fd;
  try {
    point = rational_point(mod, dependent);
    colength = fiber_colength(a, dependent);
    fd = fiber_data(a, dependent);
  } catch (const Error&) {
    return std::nullopt;
  }
  Polynomial h(n, Rational(1));
  for (const auto& c : fd.leading_coeffs)
    if (!c.is_constant()) h = h * c;
  if (!h.is_constant() && !ideal_equal(saturate(a, h), a)) return std::nullopt;

  std::vector<std::optional<RationalFunction>> at(n);
  for (std::size_t k = 0; k < dependent.size(); ++k) at[dependent[k]] = point[k];
  auto cols = monomials_up_to(n, dependent, ops.max_order());
  Matrix<RationalFunction> m(0, cols.size());
  for (const auto& op : ops.ops) {
    std::vector<RationalFunction> row(cols.size(), RationalFunction(0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto it = op.terms().find(cols[c]);
      if (it == op.terms().end()) continue;
      row[c] = evaluate(to_fraction_field(it->second, dependent), at) *
               RationalFunction(Rational(cols[c].factorial_product()));
    }
    m.append_row(row);
  }
  std::size_t r = rank(m);
  if (r == colength) return true;
  note = "functionals span dimension " + std::to_string(r) + " against colength " + std::to_string(colength);
  return false;
}

}  // namespace detail

/// Checks a = {f : δ_i(f) ≡ 0 mod modulus for all i}. The containment of a
/// in the common kernel is decided exactly; the reverse containment exactly
/// when the operators are evaluation-type functionals at a rational point of
/// the modulus over Q(u), and otherwise on P_{<=D}.
inline NoetherianCertificate verify_noetherian_ops(const IdealHandle& a, const OperatorSet& input, unsigned degree_bound,
                                                   std::optional<std::vector<std::size_t>> independent = std::nullopt) {
  if (!input.modulus) throw Error("verify: operator set has no modulus");
  const std::size_t n = a.nvars();
  NoetherianCertificate cert;
  cert.degree_bound = degree_bound;
  cert.ops.modulus = input.modulus;
  for (const auto& op : input.ops) cert.ops.ops.push_back(op.with_modulus(*input.modulus));
  const auto& ops = cert.ops.ops;

  for (const auto& op : ops) {
    for (const auto& g : a.generators()) {
      for (const auto& beta : monomials_up_to(n, order(op))) {
        Polynomial h = g.mul_term(beta, Rational(1));
        if (!apply(op, h).is_zero()) {
          cert.status = CertificateStatus::refuted;
          cert.witness = h;
          cert.side = WitnessSide::in_ideal_not_killed;
          return cert;
        }
      }
    }
  }

  if (auto exact = detail::exact_dual_match(a, cert.ops, independent, cert.note); exact && *exact) {
    cert.status = CertificateStatus::exact;
    return cert;
  }

  using Key = std::pair<std::size_t, Monomial>;
  auto kernel = kernel_on_monomials<Key>(n, degree_bound, [&](const Monomial& m) {
    SparseVector<Rational, Key> img;
    Polynomial f(m, Rational(1));
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (const auto& t : apply(ops[i], f)) img.emplace(Key{i, t.mono}, t.coef);
    return img;
  });
  for (const auto& f : kernel.basis()) {
    if (!ideal_contains(a, f)) {
      cert.status = CertificateStatus::refuted;
      cert.witness = f;
      cert.side = WitnessSide::killed_not_in_ideal;
      return cert;
    }
  }
  cert.status = CertificateStatus::verified_up_to_degree;
  return cert;
}

}  // namespace nops
