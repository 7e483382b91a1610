#pragma once

#include <bit>
#include <functional>
#include <set>
#include <vector>

#include "nops/uniformity.hpp"

namespace nops {

/// Exponent vector of a monomial generator; throws on anything else.
inline Monomial monomial_of(const Polynomial& g) {
  if (g.size() != 1) throw Error("monomial ideal expected, got generator with " + std::to_string(g.size()) + " terms");
  return g.leading().mono;
}

inline std::vector<Monomial> monomial_generators(const IdealHandle& ideal) {
  std::vector<Monomial> out;
  for (const auto& g : ideal.generators()) out.push_back(monomial_of(g));
  return out;
}

/// conv(points) + R^d_{>=0} as the intersection of half-spaces w·e >= b with
/// w >= 0, restricted to the variables that occur in some generator.
class NewtonPolyhedron {
 public:
  struct Facet {
    std::vector<Rational> normal;  // one entry per active variable
    Rational offset;
  };

  explicit NewtonPolyhedron(std::vector<Monomial> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error("Newton polyhedron of the zero ideal");
    const std::size_t n = points_.front().nvars();
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& p : points_)
        if (p[i] > 0) {
          active_.push_back(i);
          break;
        }
    build_facets();
  }

  const std::vector<Monomial>& points() const { return points_; }
  const std::vector<std::size_t>& active_vars() const { return active_; }
  const std::vector<Facet>& facets() const { return facets_; }

  /// e ∈ m·(Newton polyhedron), where m scales every offset.
  bool contains(const Monomial& e, unsigned m = 1) const {
    for (const auto& f : facets_) {
      Rational s = 0;
      for (std::size_t k = 0; k < active_.size(); ++k) s += f.normal[k] * e[active_[k]];
      if (s < f.offset * m) return false;
    }
    return true;
  }

 private:
  // Candidate supporting hyperplanes through k points and d - k coordinate rays.
  void build_facets() {
    const std::size_t d = active_.size();
    std::vector<std::vector<Rational>> pts;
    for (const auto& p : points_) {
      std::vector<Rational> v;
      for (auto i : active_) v.emplace_back(p[i]);
      pts.push_back(std::move(v));
    }
    if (d == 0) return;  // unit ideal: everything is inside
    std::set<std::vector<Rational>> seen;
    std::vector<std::size_t> chosen_pts;
    std::function<void(std::size_t, std::size_t)> pick_points = [&](std::size_t from, std::size_t k) {
      if (k > 0) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
          if (static_cast<std::size_t>(std::popcount(mask)) != d - k) continue;
          Matrix<Rational> m(0, d);
          for (std::size_t i = 1; i < chosen_pts.size(); ++i) {
            std::vector<Rational> row(d);
            for (std::size_t c = 0; c < d; ++c) row[c] = pts[chosen_pts[i]][c] - pts[chosen_pts[0]][c];
            m.append_row(row);
          }
          for (std::size_t c = 0; c < d; ++c)
            if (mask >> c & 1) {
              std::vector<Rational> row(d, Rational(0));
              row[c] = 1;
              m.append_row(row);
            }
          auto ker = kernel(m);
          if (ker.size() != 1) continue;
          consider(ker[0], pts[chosen_pts[0]], pts, seen);
        }
      }
      if (k == d) return;
      for (std::size_t i = from; i < pts.size(); ++i) {
        chosen_pts.push_back(i);
        pick_points(i + 1, k + 1);
        chosen_pts.pop_back();
      }
    };
    pick_points(0, 0);
  }

  void consider(std::vector<Rational> w, const std::vector<Rational>& base, const std::vector<std::vector<Rational>>& pts,
                std::set<std::vector<Rational>>& seen) {
    bool neg = false, pos = false;
    for (const auto& c : w) {
      neg = neg || sgn(c) < 0;
      pos = pos || sgn(c) > 0;
    }
    if (neg && pos) return;
    if (neg)
      for (auto& c : w) c = -c;
    // Scale to coprime integers so duplicates coincide.
    Integer den = 1, num = 0;
    for (const auto& c : w) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    }
    for (auto& c : w) {
      c *= Rational(den);
      c /= Rational(num);
    }
    Rational b = 0;
    for (std::size_t k = 0; k < w.size(); ++k) b += w[k] * base[k];
    for (const auto& p : pts) {
      Rational s = 0;
      for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * p[k];
      if (s < b) return;
    }
    if (!seen.insert(w).second) {
      for (const auto& f : facets_)
        if (f.normal == w && f.offset != b) throw Error("Newton polyhedron: inconsistent facet offsets");
      return;
    }
    facets_.push_back({std::move(w), b});
  }

  std::vector<Monomial> points_;
  std::vector<std::size_t> active_;
  std::vector<Facet> facets_;
};

/// Integral closure of I^m for a monomial ideal I: the minimal lattice points
/// of m times its Newton polyhedron. Generators are listed grevlex-descending.
inline IdealHandle monomial_integral_closure(const IdealHandle& ideal, unsigned m) {
  if (m < 1) throw Error("integral closure: power must be at least 1");
  const std::size_t n = ideal.nvars();
  auto gens = monomial_generators(ideal);
  if (gens.empty()) return IdealHandle::zero(n);
  NewtonPolyhedron poly(gens);
  const auto& act = poly.active_vars();
  if (act.empty()) return IdealHandle::unit(n);
  std::vector<unsigned> bound(act.size(), 0);
  for (const auto& g : gens)
    for (std::size_t k = 0; k < act.size(); ++k) bound[k] = std::max(bound[k], m * g[act[k]]);

  std::vector<Monomial> minimal;
  Monomial e(n);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == act.size()) {
      if (!poly.contains(e, m)) return;
      for (std::size_t i = 0; i < act.size(); ++i) {
        if (e[act[i]] == 0) continue;
        Monomial lower = e;
        lower.set(act[i], e[act[i]] - 1);
        if (poly.contains(lower, m)) return;
      }
      minimal.push_back(e);
      return;
    }
    for (unsigned v = 0; v <= bound[k]; ++v) {
      e.set(act[k], v);
      walk(k + 1);
    }
    e.set(act[k], 0);
  };
  walk(0);
  std::sort(minimal.begin(), minimal.end(), [](const Monomial& a, const Monomial& b) { return GrevlexLess{}(b, a); });
  std::vector<Polynomial> out;
  for (const auto& mono : minimal) out.emplace_back(mono, Rational(1));
  return IdealHandle(n, std::move(out));
}

/// x^a ∈ closure(I) iff x^{ka} ∈ I^k for some k; searched for k <= k_max by
/// enumerating multisets of k generators.
inline bool monomial_closure_bruteforce_oracle(const IdealHandle& ideal, const Monomial& candidate, unsigned k_max) {
  auto gens = monomial_generators(ideal);
  if (gens.empty()) return false;
  for (unsigned k = 1; k <= k_max; ++k) {
    Monomial target(candidate.nvars());
    for (std::size_t i = 0; i < candidate.nvars(); ++i) target.set(i, candidate[i] * k);
    std::function<bool(std::size_t, unsigned, const Monomial&)> search = [&](std::size_t from, unsigned left,
                                                                             const Monomial& acc) {
      if (!acc.divides(target)) return false;
      if (left == 0) return true;
      for (std::size_t i = from; i < gens.size(); ++i)
        if (search(i, left - 1, acc * gens[i])) return true;
      return false;
    };
    if (search(0, k, Monomial(candidate.nvars()))) return true;
  }
  return false;
}

/// p^n : w^∞, the n-th symbolic power of the prime p when w lies in every
/// embedded component of p^n and outside p.
inline IdealHandle symbolic_power(const IdealHandle& p, unsigned n, const Polynomial& witness) {
  if (witness.is_zero() || ideal_contains(p, witness)) throw Error("symbolic power: witness lies in the prime");
  return saturate(ideal_power(p, n), witness);
}

/// Schedule for the integral-closure corollary: target closure(I^{n+c}) + rad.
/// The image I must be monomial and rad generated by variables.
inline TargetFn closure_schedule(const IdealHandle& image, const RingSpec& ring) {
  for (const auto& g : ring.radical.groebner_basis()) {
    Monomial m = monomial_of(g);
    if (m.degree() != 1) throw Error("closure harness: radical is not generated by variables");
  }
  monomial_generators(image);
  return [image, rad = ring.radical](unsigned n, unsigned c) {
    if (n + c == 0) return IdealHandle::unit(image.nvars());
    return ideal_sum(monomial_integral_closure(image, n + c), rad);
  };
}

/// Schedule for the symbolic-power corollary: I^{(n d + c)} computed in P/rad
/// as (I^{nd+c} + rad) : w^∞. witnesses[m-1] serves the m-th power; a single
/// witness serves every power.
inline TargetFn symbolic_schedule(const IdealHandle& image, const RingSpec& ring, unsigned dim,
                                  std::vector<Polynomial> witnesses) {
  if (witnesses.empty()) throw Error("symbolic harness: no saturation witness given");
  IdealHandle prime = ideal_sum(image, ring.radical);
  for (const auto& w : witnesses)
    if (ideal_contains(prime, w)) throw Error("symbolic harness: witness lies in the prime");
  return [image, rad = ring.radical, dim, witnesses](unsigned n, unsigned c) {
    unsigned m = n * dim + c;
    const Polynomial& w = witnesses.size() == 1 ? witnesses[0] : witnesses.at(m == 0 ? 0 : m - 1);
    return saturate(ideal_sum(ideal_power(image, m), rad), w);
  };
}

inline ConstantReport bs_harness(const std::vector<std::pair<std::string, IdealHandle>>& family,
                                 const OperatorSet& ops, const RingSpec& ring, unsigned n_max, unsigned c_max,
                                 unsigned degree_bound, unsigned jobs = 1) {
  return constant_grid(family, ops, ring, n_max, c_max, degree_bound, jobs,
                       [&](const IdealHandle& image) { return closure_schedule(image, ring); });
}

inline ConstantReport symb_harness(const std::vector<std::pair<std::string, IdealHandle>>& family,
                                   const OperatorSet& ops, const RingSpec& ring, unsigned dim,
                                   const std::vector<Polynomial>& witnesses, unsigned n_max, unsigned c_max,
                                   unsigned degree_bound, unsigned jobs = 1) {
  return constant_grid(family, ops, ring, n_max, c_max, degree_bound, jobs, [&](const IdealHandle& image) {
    return symbolic_schedule(image, ring, dim, witnesses);
  });
}

}  // namespace nops
