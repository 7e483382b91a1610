#pragma once

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "nops/polynomial.hpp"

namespace nops {

/// Term list sorted descending under a fixed monomial order; the working
/// representation of the Buchberger loop.
template <class K>
class OrderedPoly {
 public:
  OrderedPoly() = default;
  OrderedPoly(const BasicPolynomial<K>& p, const MonomialOrder& ord) : n_(p.nvars()), terms_(p.terms()) {
    if (ord.kind() != MonomialOrder::Kind::grevlex)
      std::sort(terms_.begin(), terms_.end(),
                [&](const Term<K>& a, const Term<K>& b) { return ord.compare(a.mono, b.mono) > 0; });
  }

  std::size_t nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const Term<K>& lead() const { return terms_.front(); }
  const std::vector<Term<K>>& terms() const { return terms_; }

  BasicPolynomial<K> to_polynomial() const { return BasicPolynomial<K>::from_terms(n_, terms_); }

  /// this - c * m * g, merging under `ord`. Terms before `from` are copied.
  OrderedPoly sub_mul(const K& c, const Monomial& m, const OrderedPoly& g, const MonomialOrder& ord,
                      std::size_t from = 0) const {
    OrderedPoly r;
    r.n_ = n_;
    r.terms_.reserve(terms_.size() - from + g.terms_.size());
    std::size_t i = from, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = g.terms_[j].mono * m;
      if (i == terms_.size()) {
        r.terms_.push_back({gm, K(-(c * g.terms_[j].coef))});
        ++j;
        continue;
      }
      auto cmp = ord.compare(terms_[i].mono, gm);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({gm, K(-(c * g.terms_[j].coef))});
        ++j;
      } else {
        K s = terms_[i].coef - c * g.terms_[j].coef;
        if (!coeff_zero(s)) r.terms_.push_back({gm, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void make_monic() {
    if (terms_.empty()) return;
    K inv = K(1) / terms_.front().coef;
    for (auto& t : terms_) t.coef = t.coef * inv;
  }

  std::vector<Term<K>>& mutable_terms() { return terms_; }

 private:
  std::size_t n_ = 0;
  std::vector<Term<K>> terms_;
};

/// Full reduction (every term) of f modulo the list `basis` under `ord`.
/// Divisors are tried in list order, so the result is deterministic.
template <class K>
OrderedPoly<K> reduce_full(OrderedPoly<K> f, const std::vector<OrderedPoly<K>>& basis,
                           const MonomialOrder& ord) {
  std::vector<Term<K>> done;
  std::size_t pos = 0;
  while (pos < f.terms().size()) {
    const Term<K>& t = f.terms()[pos];
    const OrderedPoly<K>* divisor = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && g.lead().mono.divides(t.mono)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      done.push_back(t);
      ++pos;
      continue;
    }
    K c = t.coef / divisor->lead().coef;
    Monomial m = t.mono / divisor->lead().mono;
    f = f.sub_mul(c, m, *divisor, ord, pos);
    pos = 0;
  }
  OrderedPoly<K> r = f;
  r.mutable_terms() = std::move(done);
  return r;
}

/// Reduced Groebner basis via Buchberger's algorithm with the coprime and
/// chain criteria. Pairs are processed by smallest lcm degree, then smallest
/// lcm under `ord`, then index; output is monic and sorted by leading
/// monomial ascending.
template <class K>
std::vector<OrderedPoly<K>> buchberger_ordered(const std::vector<BasicPolynomial<K>>& gens,
                                               const MonomialOrder& ord) {
  std::vector<OrderedPoly<K>> g;
  for (const auto& p : gens) {
    if (p.is_zero()) continue;
    OrderedPoly<K> o(p, ord);
    o = reduce_full(o, g, ord);
    if (o.is_zero()) continue;
    o.make_monic();
    g.push_back(std::move(o));
  }
  if (g.empty()) return g;

  struct Pair {
    unsigned deg;
    Monomial lcm;
    std::size_t i, j;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    auto c = ord.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = lcm(g[i].lead().mono, g[j].lead().mono);
      queue.push_back({l.degree(), l, i, j});
      pending.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) add_pairs_for(j);

  auto chain_criterion = [&](const Pair& p) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      if (!g[k].lead().mono.divides(p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (pending.count(key(p.i, k)) || pending.count(key(p.j, k))) continue;
      return true;
    }
    return false;
  };

  while (!queue.empty()) {
    auto best = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair p = *best;
    queue.erase(best);
    pending.erase({p.i, p.j});
    const auto& a = g[p.i];
    const auto& b = g[p.j];
    if (coprime(a.lead().mono, b.lead().mono)) continue;
    if (chain_criterion(p)) continue;
    // S-polynomial of monic a, b: (l/lt(a)) a - (l/lt(b)) b.
    const OrderedPoly<K> zero(BasicPolynomial<K>(a.nvars()), ord);
    OrderedPoly<K> s = zero.sub_mul(K(-1), p.lcm / a.lead().mono, a, ord)
                           .sub_mul(K(1), p.lcm / b.lead().mono, b, ord);
    s = reduce_full(s, g, ord);
    if (s.is_zero()) continue;
    s.make_monic();
    g.push_back(std::move(s));
    add_pairs_for(g.size() - 1);
  }

  // Minimize: drop elements whose lead is divisible by another's lead.
  std::vector<OrderedPoly<K>> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
      if (k == i) continue;
      if (g[k].lead().mono.divides(g[i].lead().mono)) {
        // Equal leads: keep the earliest.
        if (g[k].lead().mono == g[i].lead().mono && k > i) continue;
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Interreduce tails.
  std::vector<OrderedPoly<K>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OrderedPoly<K>> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    OrderedPoly<K> r = reduce_full(minimal[i], others, ord);
    r.make_monic();
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const OrderedPoly<K>& x, const OrderedPoly<K>& y) {
    return ord.compare(x.lead().mono, y.lead().mono) < 0;
  });
  return reduced;
}

template <class K>
std::vector<BasicPolynomial<K>> buchberger(const std::vector<BasicPolynomial<K>>& gens,
                                           const MonomialOrder& ord = MonomialOrder::grevlex()) {
  std::vector<BasicPolynomial<K>> out;
  for (const auto& o : buchberger_ordered(gens, ord)) out.push_back(o.to_polynomial());
  return out;
}

/// Normal form of f modulo a Groebner basis given in ordered form.
template <class K>
BasicPolynomial<K> normal_form(const BasicPolynomial<K>& f, const std::vector<OrderedPoly<K>>& gb,
                               const MonomialOrder& ord) {
  return reduce_full(OrderedPoly<K>(f, ord), gb, ord).to_polynomial();
}

}  // namespace nops
