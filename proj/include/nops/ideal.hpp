#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "nops/groebner.hpp"
#include "nops/parse.hpp"

namespace nops {

/// Ideal of Q[v_0, ..., v_{n-1}] given by generators, with a lazily computed
/// reduced Groebner basis. Copies share the cache; the basis is computed at
/// most once even under concurrent access.
class IdealHandle {
 public:
  IdealHandle() : IdealHandle(0, {}) {}
  IdealHandle(std::size_t nvars, std::vector<Polynomial> gens, MonomialOrder ord = MonomialOrder::grevlex())
      : state_(std::make_shared<State>(nvars, ord)) {
    for (auto& g : gens) {
      if (g.nvars() != nvars) throw Error("generator variable count mismatch");
      if (!g.is_zero()) state_->gens.push_back(std::move(g));
    }
  }

  static IdealHandle unit(std::size_t nvars) { return IdealHandle(nvars, {Polynomial(nvars, Rational(1))}); }
  static IdealHandle zero(std::size_t nvars) { return IdealHandle(nvars, {}); }

  std::size_t nvars() const { return state_->nvars; }
  const MonomialOrder& order() const { return state_->order; }
  const std::vector<Polynomial>& generators() const { return state_->gens; }

  const std::vector<OrderedPoly<Rational>>& ordered_basis() const {
    std::call_once(state_->once, [this] { state_->gb = buchberger_ordered(state_->gens, state_->order); });
    return state_->gb;
  }

  std::vector<Polynomial> groebner_basis() const {
    std::vector<Polynomial> out;
    for (const auto& g : ordered_basis()) out.push_back(g.to_polynomial());
    return out;
  }

  /// Same generators under a different order (fresh cache).
  IdealHandle with_order(const MonomialOrder& ord) const { return IdealHandle(nvars(), generators(), ord); }

  bool is_zero() const { return ordered_basis().empty(); }
  bool is_unit() const {
    const auto& gb = ordered_basis();
    return gb.size() == 1 && gb[0].lead().mono.is_one();
  }

 private:
  struct State {
    State(std::size_t n, MonomialOrder o) : nvars(n), order(o) {}
    std::size_t nvars;
    MonomialOrder order;
    std::vector<Polynomial> gens;
    std::once_flag once;
    std::vector<OrderedPoly<Rational>> gb;
  };
  std::shared_ptr<State> state_;
};

inline Polynomial normal_form(const Polynomial& f, const IdealHandle& ideal) {
  if (f.nvars() != ideal.nvars()) throw Error("normal form: variable count mismatch");
  return normal_form(f, ideal.ordered_basis(), ideal.order());
}

inline bool ideal_contains(const IdealHandle& ideal, const Polynomial& f) { return normal_form(f, ideal).is_zero(); }

/// First generator of `a` not in `b`, if any.
inline std::optional<Polynomial> subset_witness(const IdealHandle& a, const IdealHandle& b) {
  for (const auto& g : a.generators())
    if (!ideal_contains(b, g)) return g;
  return std::nullopt;
}

inline bool ideal_subset(const IdealHandle& a, const IdealHandle& b) { return !subset_witness(a, b); }

inline bool ideal_equal(const IdealHandle& a, const IdealHandle& b) {
  if (a.order() == b.order()) {
    // Reduced Groebner bases are unique.
    return a.groebner_basis() == b.groebner_basis();
  }
  return ideal_subset(a, b) && ideal_subset(b, a);
}

inline IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return IdealHandle(a.nvars(), std::move(gens), a.order());
}

inline IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b) {
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return IdealHandle(a.nvars(), std::move(gens), a.order());
}

/// All products of n generators (multisets); I^0 = (1).
inline IdealHandle ideal_power(const IdealHandle& ideal, unsigned n) {
  const std::size_t nv = ideal.nvars();
  if (n == 0) return IdealHandle::unit(nv);
  const auto& g = ideal.generators();
  std::vector<Polynomial> gens;
  std::vector<Polynomial> seen;
  std::function<void(std::size_t, unsigned, const Polynomial&)> rec = [&](std::size_t start, unsigned left,
                                                                          const Polynomial& acc) {
    if (left == 0) {
      if (std::find(gens.begin(), gens.end(), acc) == gens.end()) gens.push_back(acc);
      return;
    }
    for (std::size_t i = start; i < g.size(); ++i) rec(i, left - 1, acc * g[i]);
  };
  rec(0, n, Polynomial(nv, Rational(1)));
  return IdealHandle(nv, std::move(gens), ideal.order());
}

/// I ∩ Q[vars \ drop], computed with a block order eliminating `drop`.
inline IdealHandle eliminate(const IdealHandle& ideal, const std::vector<std::size_t>& drop) {
  const std::size_t n = ideal.nvars();
  if (drop.empty()) return ideal;
  std::uint32_t mask = 0;
  for (auto v : drop) {
    if (v >= n) throw Error("eliminate: variable index out of range");
    mask |= (1u << v);
  }
  auto gb = buchberger(ideal.generators(), MonomialOrder::block(mask));
  std::vector<Polynomial> kept;
  for (auto& p : gb) {
    bool free = true;
    for (auto v : drop) free = free && !p.involves(v);
    if (free) kept.push_back(std::move(p));
  }
  return IdealHandle(n, std::move(kept), ideal.order());
}

/// I : g^∞ via I + (1 - t g) in one extra variable t, then eliminating t.
inline IdealHandle saturate(const IdealHandle& ideal, const Polynomial& g) {
  if (g.is_zero()) throw Error("saturate: saturating element is zero");
  const std::size_t n = ideal.nvars();
  if (ideal.generators().empty()) return ideal;
  if (g.is_constant()) return ideal;
  std::vector<Polynomial> gens;
  for (const auto& f : ideal.generators()) gens.push_back(f.extended(n + 1));
  Polynomial t = Polynomial::variable(n + 1, n);
  gens.push_back(Polynomial(n + 1, Rational(1)) - t * g.extended(n + 1));
  auto elim = eliminate(IdealHandle(n + 1, std::move(gens)), {n});
  std::vector<Polynomial> out;
  for (const auto& p : elim.generators()) out.push_back(p.truncated_vars(n));
  return IdealHandle(n, std::move(out), ideal.order());
}

/// I ∩ J via t I + (1 - t) J, eliminating t.
inline IdealHandle ideal_intersect(const IdealHandle& a, const IdealHandle& b) {
  const std::size_t n = a.nvars();
  if (a.generators().empty() || b.generators().empty()) return IdealHandle::zero(n);
  Polynomial t = Polynomial::variable(n + 1, n);
  Polynomial one_minus_t = Polynomial(n + 1, Rational(1)) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(t * f.extended(n + 1));
  for (const auto& f : b.generators()) gens.push_back(one_minus_t * f.extended(n + 1));
  auto elim = eliminate(IdealHandle(n + 1, std::move(gens)), {n});
  std::vector<Polynomial> out;
  for (const auto& p : elim.generators()) out.push_back(p.truncated_vars(n));
  return IdealHandle(n, std::move(out), a.order());
}

/// Standard monomials of a zero-dimensional ideal restricted to the variables
/// `vars`, given leading monomials (already projected onto `vars`).
inline std::vector<Monomial> standard_monomials_of(std::size_t nvars, const std::vector<std::size_t>& vars,
                                                   const std::vector<Monomial>& leads) {
  unsigned bound = 0;
  for (auto v : vars) {
    std::optional<unsigned> pure;
    for (const auto& m : leads) {
      bool only_v = m[v] > 0 && m.degree() == m[v];
      if (only_v && (!pure || m[v] < *pure)) pure = m[v];
    }
    if (!pure) throw Error("ideal is not zero-dimensional (no pure power of a variable among leading terms)");
    bound += *pure - 1;
  }
  std::vector<Monomial> out;
  for (const auto& m : monomials_up_to(nvars, vars, bound)) {
    bool divisible = false;
    for (const auto& l : leads)
      if (l.divides(m)) {
        divisible = true;
        break;
      }
    if (!divisible) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), GrevlexLess{});
  return out;
}

/// Monomials outside the leading-term ideal, ascending; Q must be
/// zero-dimensional.
inline std::vector<Monomial> standard_monomials(const IdealHandle& q) {
  std::vector<Monomial> leads;
  for (const auto& g : q.ordered_basis()) leads.push_back(g.lead().mono);
  std::vector<std::size_t> vars(q.nvars());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  if (q.is_unit()) return {};
  return standard_monomials_of(q.nvars(), vars, leads);
}

inline IdealHandle parse_ideal(std::string_view text, const VarList& vars) {
  return IdealHandle(vars.size(), parse_polynomial_list(text, vars));
}

inline std::string to_string(const IdealHandle& ideal, const VarList& vars) {
  return to_string(ideal.generators(), vars);
}

/// Quotient ring R = P/N together with its reduction R_red = P/rad and the
/// user-asserted minimal primes.
struct RingSpec {
  VarList vars;
  IdealHandle defining;
  IdealHandle radical;
  std::vector<IdealHandle> minimal_primes;

  std::size_t nvars() const { return vars.size(); }

  /// N ⊆ rad; rad = ∩ minimal primes when they are given.
  void validate() const {
    if (defining.nvars() != nvars() || radical.nvars() != nvars()) throw Error("ring: variable count mismatch");
    if (auto w = subset_witness(defining, radical))
      throw Error("ring: defining generator " + to_string(*w, vars) + " is not in the radical");
    if (!minimal_primes.empty()) {
      IdealHandle meet = minimal_primes.front();
      for (std::size_t i = 1; i < minimal_primes.size(); ++i) meet = ideal_intersect(meet, minimal_primes[i]);
      if (!ideal_equal(meet, radical)) throw Error("ring: radical differs from the intersection of the minimal primes");
    }
  }

  bool is_minimal_prime(const IdealHandle& p) const {
    for (const auto& q : minimal_primes)
      if (ideal_equal(q, p)) return true;
    return false;
  }

  /// Image of J in R_red: generators reduced modulo rad, zeros dropped.
  IdealHandle image_in_reduced(const IdealHandle& j) const {
    std::vector<Polynomial> gens;
    for (const auto& g : j.generators()) {
      Polynomial r = normal_form(g, radical);
      if (!r.is_zero()) gens.push_back(std::move(r));
    }
    return IdealHandle(nvars(), std::move(gens));
  }
};

}  // namespace nops
