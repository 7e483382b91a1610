#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nops/noetherian.hpp"

namespace nops {

/// Runs body(0..count-1) on up to `jobs` threads. Each index is handled once;
/// callers write results into preallocated slots, so merge order is fixed.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline void check_modulus(const OperatorSet& ops, const RingSpec& ring) {
  if (!ops.modulus) throw Error("operator set has no modulus");
  if (!ideal_equal(*ops.modulus, ring.radical)) throw Error("operator modulus differs from the ring's radical");
}

/// {f ∈ P_{<=D} : δ_i(f) ∈ target for all i}; `target` must contain the
/// operators' modulus.
inline TruncatedSubspace colon_of_target(const IdealHandle& target, const OperatorSet& ops, unsigned degree_bound) {
  const std::size_t n = target.nvars();
  using Key = std::pair<std::size_t, Monomial>;
  return kernel_on_monomials<Key>(n, degree_bound, [&](const Monomial& m) {
    SparseVector<Rational, Key> img;
    Polynomial f(m, Rational(1));
    for (std::size_t i = 0; i < ops.ops.size(); ++i)
      for (const auto& t : normal_form(apply(ops.ops[i], f), target)) img.emplace(Key{i, t.mono}, t.coef);
    return img;
  });
}

/// The differential colon I^m :_{R_red} {δ_1, ..., δ_k}, truncated to P_{<=D}.
inline TruncatedSubspace diff_colon(const IdealHandle& image, unsigned m, const OperatorSet& ops, const RingSpec& ring,
                                    unsigned degree_bound) {
  check_modulus(ops, ring);
  if (degree_bound < 1) throw Error("diff_colon: degree bound must be at least 1");
  return colon_of_target(ideal_sum(ideal_power(image, m), ring.radical), ops, degree_bound);
}

/// First basis element of S outside J + N, if any.
inline std::optional<Polynomial> subspace_in_ideal(const TruncatedSubspace& s, const IdealHandle& j,
                                                   const RingSpec& ring) {
  IdealHandle target = ideal_sum(j, ring.defining);
  for (const auto& f : s.basis())
    if (!ideal_contains(target, f)) return f;
  return std::nullopt;
}

struct ConstantRow {
  std::string j_id;
  unsigned n = 0;
  std::optional<unsigned> c_min;  // empty: not found up to c_max
  std::optional<Polynomial> witness;  // refutes c_min - 1 (or c_max when not found)
};

struct ConstantReport {
  std::vector<ConstantRow> rows;
  unsigned degree_bound = 0, n_max = 0, c_max = 0;
  std::string verdict;

  bool exhausted() const {
    for (const auto& r : rows)
      if (!r.c_min) return true;
    return false;
  }
  /// Max of the per-row constants; empty when some row was exhausted.
  std::optional<unsigned> aggregate() const {
    unsigned c = 0;
    for (const auto& r : rows) {
      if (!r.c_min) return std::nullopt;
      c = std::max(c, *r.c_min);
    }
    return c;
  }
  void set_verdict() {
    if (auto c = aggregate())
      verdict = "c = " + std::to_string(*c) + " suffices for every row (certified for degree <= " +
                std::to_string(degree_bound) + ")";
    else
      verdict = "search exhausted at c_max = " + std::to_string(c_max);
  }
};

inline std::string c_min_text(const ConstantRow& r, unsigned c_max) {
  return r.c_min ? std::to_string(*r.c_min) : "NOT_FOUND(<=" + std::to_string(c_max) + ")";
}

/// Ideal of P fed to the colon for the pair (n, c); it must contain rad.
using TargetFn = std::function<IdealHandle(unsigned n, unsigned c)>;

/// Least c <= c_max with colon(target(n, c)) ⊆ J^n + N on P_{<=D}.
inline ConstantRow search_constant(const std::string& id, const IdealHandle& j, const OperatorSet& ops,
                                   const RingSpec& ring, unsigned n, unsigned c_max, unsigned degree_bound,
                                   const TargetFn& target) {
  ConstantRow row{id, n, std::nullopt, std::nullopt};
  IdealHandle jn = ideal_power(j, n);
  for (unsigned c = 0; c <= c_max; ++c) {
    auto w = subspace_in_ideal(colon_of_target(target(n, c), ops, degree_bound), jn, ring);
    if (!w) {
      row.c_min = c;
      return row;
    }
    row.witness = w;
  }
  return row;
}

/// Runs the (J, n) grid for one target schedule; rows follow input order.
inline ConstantReport constant_grid(const std::vector<std::pair<std::string, IdealHandle>>& family,
                                    const OperatorSet& ops, const RingSpec& ring, unsigned n_max, unsigned c_max,
                                    unsigned degree_bound, unsigned jobs,
                                    const std::function<TargetFn(const IdealHandle& image)>& schedule) {
  check_modulus(ops, ring);
  ConstantReport rep;
  rep.degree_bound = degree_bound;
  rep.n_max = n_max;
  rep.c_max = c_max;
  std::vector<TargetFn> targets;
  for (const auto& [id, j] : family) targets.push_back(schedule(ring.image_in_reduced(j)));
  rep.rows.resize(family.size() * n_max);
  parallel_for(rep.rows.size(), jobs, [&](std::size_t cell) {
    std::size_t k = cell / n_max;
    unsigned n = static_cast<unsigned>(cell % n_max) + 1;
    rep.rows[cell] = search_constant(family[k].first, family[k].second, ops, ring, n, c_max, degree_bound, targets[k]);
  });
  rep.set_verdict();
  return rep;
}

inline TargetFn power_schedule(const IdealHandle& image, const RingSpec& ring) {
  return [image, rad = ring.radical](unsigned n, unsigned c) { return ideal_sum(ideal_power(image, n + c), rad); };
}

/// Empirical constant of the differential Artin-Rees containment
/// I^{n+c} : {δ_i} ⊆ J^n, for n = 1..n_max.
inline ConstantReport find_min_c(const IdealHandle& j, const OperatorSet& ops, const RingSpec& ring, unsigned n_max,
                                 unsigned c_max, unsigned degree_bound, const std::string& id = "J", unsigned jobs = 1) {
  return constant_grid({{id, j}}, ops, ring, n_max, c_max, degree_bound, jobs,
                       [&](const IdealHandle& image) { return power_schedule(image, ring); });
}

/// Recheck of a row's witness, independent of the search path: every δ_i(f)
/// lies in the target for c_min - 1 and f ∉ J^n + N.
inline bool witness_is_exact(const ConstantRow& row, const IdealHandle& j, const OperatorSet& ops,
                             const RingSpec& ring, unsigned c_max, const TargetFn& target) {
  if (!row.witness) return !row.c_min || *row.c_min == 0;
  unsigned c = row.c_min ? *row.c_min - 1 : c_max;
  IdealHandle t = target(row.n, c);
  for (const auto& op : ops.ops)
    if (!ideal_contains(t, apply(op, *row.witness))) return false;
  return !ideal_contains(ideal_sum(ideal_power(j, row.n), ring.defining), *row.witness);
}

struct ReverseCheck {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<Polynomial> witness;
};

/// J^{n+e} ⊆ I^n : {δ_i} with e the maximal order, on the products x^β g of
/// generators g of J^{n+e} of degree <= D (each generator itself is always checked).
inline ReverseCheck check_reverse(const IdealHandle& j, const OperatorSet& ops, const RingSpec& ring, unsigned n,
                                  unsigned degree_bound) {
  check_modulus(ops, ring);
  ReverseCheck out;
  const unsigned e = ops.max_order();
  IdealHandle target = ideal_sum(ideal_power(ring.image_in_reduced(j), n), ring.radical);
  IdealHandle power = ideal_power(j, n + e);
  for (const auto& g : power.generators()) {
    int room = static_cast<int>(degree_bound) - g.degree();
    for (const auto& beta : monomials_up_to(j.nvars(), static_cast<unsigned>(std::max(room, 0)))) {
      Polynomial h = g.mul_term(beta, Rational(1));
      ++out.checked;
      for (const auto& op : ops.ops)
        if (!ideal_contains(target, apply(op, h))) {
          out.passed = false;
          out.witness = h;
          return out;
        }
    }
  }
  return out;
}

struct SeparatingOperatorResult {
  bool found = false;
  DiffOp delta;
  unsigned order = 0;
  unsigned coeff_degree = 0;
  std::optional<RationalFunction> d_value;  // numerator / denominator as normal forms mod p
  Polynomial d_numerator, d_denominator;
  std::vector<Polynomial> psi;
  bool linearity_passed = false;
  std::size_t pairs_tested = 0;
  std::optional<std::pair<Polynomial, Polynomial>> linearity_witness;
  bool d_consistent = false;
  std::optional<Polynomial> inconsistent_generator;
  std::uint64_t seed = 0;
};

/// Minimal-order operator P -> R_red vanishing on a but not on b, found by
/// solving for its coefficients. `psi` gives the images in R/p of b's
/// generators under the claimed embedding b/a -> R/p.
inline SeparatingOperatorResult separating_operator(const IdealHandle& a, const IdealHandle& b, const RingSpec& ring,
                                                    const IdealHandle& p, const std::vector<Polynomial>& psi,
                                                    unsigned t_max, unsigned coeff_deg, std::uint64_t seed = 1,
                                                    std::size_t pairs = 50) {
  const std::size_t n = ring.nvars();
  IdealHandle a_full = ideal_sum(a, ring.defining), b_full = ideal_sum(b, ring.defining);
  if (auto w = subset_witness(a_full, b_full))
    throw Error("separating operator: a is not contained in b (" + to_string(*w, ring.vars) + ")");
  if (ideal_subset(b_full, a_full)) throw Error("separating operator: a equals b");
  if (!ring.minimal_primes.empty() && !ring.is_minimal_prime(p))
    throw Error("separating operator: p is not a declared minimal prime");
  if (psi.size() != b.generators().size())
    throw Error("separating operator: psi must give one image per generator of b");

  SeparatingOperatorResult res;
  res.psi = psi;
  res.seed = seed;
  const auto& conds_gens = a_full.generators();

  for (unsigned t = 0; t <= t_max && !res.found; ++t) {
    const auto alphas = monomials_up_to(n, t);
    const auto betas = monomials_up_to(n, t);
    for (unsigned cd = 0; cd <= coeff_deg && !res.found; ++cd) {
      const auto mus = monomials_up_to(n, cd);
      std::vector<std::pair<Monomial, Monomial>> unknowns;
      for (const auto& al : alphas)
        for (const auto& mu : mus) unknowns.emplace_back(al, mu);
      using Key = std::pair<std::size_t, Monomial>;
      IncrementalKernel<Rational, Key> elim;
      for (std::size_t u = 0; u < unknowns.size() && !res.found; ++u) {
        const auto& [al, mu] = unknowns[u];
        SparseVector<Rational, Key> img;
        std::size_t cond = 0;
        for (const auto& g : conds_gens)
          for (const auto& be : betas) {
            Polynomial v = normal_form(g.mul_term(be, Rational(1)).derivative(al).mul_term(mu, Rational(1)),
                                       ring.radical);
            for (const auto& term : v) img.emplace(Key{cond, term.mono}, term.coef);
            ++cond;
          }
        auto comb = elim.add(u, std::move(img));
        if (!comb) continue;
        DiffOp op(n);
        for (const auto& [src, c] : *comb)
          op.add_term(unknowns[src].first, Polynomial(unknowns[src].second, c));
        op = op.with_modulus(ring.radical);
        if (op.is_zero()) continue;
        bool separates = false;
        for (const auto& h : b.generators()) separates = separates || !ideal_contains(p, apply(op, h));
        if (!separates) continue;
        res.found = true;
        res.delta = make_primitive(op);
        res.order = order(res.delta);
        res.coeff_degree = cd;
      }
    }
  }
  if (!res.found) return res;

  Rng rng(seed);
  res.linearity_passed = true;
  for (std::size_t k = 0; k < pairs; ++k) {
    Polynomial f = random_polynomial(rng, n, 3), g = random_element(rng, b_full);
    ++res.pairs_tested;
    if (!ideal_contains(p, apply(res.delta, f * g) - f * apply(res.delta, g))) {
      res.linearity_passed = false;
      res.linearity_witness = std::make_pair(f, g);
      break;
    }
  }

  std::optional<std::size_t> base;
  for (std::size_t i = 0; i < psi.size() && !base; ++i)
    if (!ideal_contains(p, psi[i])) base = i;
  if (!base) {
    res.d_consistent = false;
    return res;
  }
  const auto& gens = b.generators();
  res.d_numerator = normal_form(apply(res.delta, gens[*base]), p);
  res.d_denominator = normal_form(psi[*base], p);
  res.d_value = RationalFunction(res.d_numerator, res.d_denominator);
  res.d_consistent = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Polynomial lhs = apply(res.delta, gens[i]) * res.d_denominator;
    Polynomial rhs = psi[i] * res.d_numerator;
    if (!ideal_contains(p, lhs - rhs)) {
      res.d_consistent = false;
      res.inconsistent_generator = gens[i];
      break;
    }
  }
  return res;
}

struct FiltrationReport {
  bool passed = true;
  std::size_t length = 0;  // number of steps k
  std::vector<std::string> failures;
  std::string assumption = "associated primes of each quotient are user-asserted, not checked";
};

/// Structural checks of N = a_0 ⊊ a_1 ⊊ ... ⊊ a_k = (1) with primes p_1..p_k:
/// strictness, p_i a_i ⊆ a_{i-1}, p_i minimal, and a_{k-1} a minimal prime.
inline FiltrationReport verify_filtration(const std::vector<IdealHandle>& chain, const std::vector<IdealHandle>& primes,
                                          const RingSpec& ring) {
  FiltrationReport rep;
  if (chain.size() < 2) throw Error("filtration: chain needs at least two terms");
  if (primes.size() + 1 != chain.size()) throw Error("filtration: need one prime per step");
  rep.length = primes.size();
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.failures.push_back(std::move(msg));
  };
  std::vector<IdealHandle> full;
  for (const auto& c : chain) full.push_back(ideal_sum(c, ring.defining));
  if (!ideal_equal(full.front(), ring.defining)) fail("first term differs from the defining ideal");
  if (!full.back().is_unit()) fail("last term is not the unit ideal");
  for (std::size_t i = 1; i < full.size(); ++i) {
    std::string step = "step " + std::to_string(i);
    if (auto w = subset_witness(full[i - 1], full[i]))
      fail(step + ": not ascending, " + to_string(*w, ring.vars) + " is missing");
    else if (ideal_subset(full[i], full[i - 1]))
      fail(step + ": not strict");
    auto stray = [&]() -> std::optional<Polynomial> {
      for (const auto& pg : primes[i - 1].generators())
        for (const auto& ag : full[i].generators())
          if (!ideal_contains(full[i - 1], pg * ag)) return pg * ag;
      return std::nullopt;
    }();
    if (stray) fail(step + ": prime does not annihilate the quotient, product " + to_string(*stray, ring.vars));
    if (!ring.is_minimal_prime(primes[i - 1])) fail(step + ": prime is not a declared minimal prime");
  }
  if (!ring.is_minimal_prime(full[full.size() - 2])) fail("last proper term is not a declared minimal prime");
  return rep;
}

}  // namespace nops
