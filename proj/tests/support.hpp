#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "coxlift/io.hpp"
#include "coxlift/lift.hpp"

namespace coxlift::testing {

inline std::string problem_path(const std::string& name) { return std::string(COXLIFT_PROBLEMS_DIR) + "/" + name; }

inline io::Problem load(const std::string& name) { return io::load_problem(problem_path(name)); }

/// Invariant-factor lists d1 | d2 | ... (each >= 2) with product <= bound, the empty list included.
inline std::vector<std::vector<long>> invariant_lists(long bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto& self, long last, long budget) -> void {
    out.push_back(cur);
    for (long d = last; d <= budget; d += last) {
      if (d < 2) continue;
      cur.push_back(d);
      self(self, d, budget / d);
      cur.pop_back();
    }
  };
  rec(rec, 1, bound);
  return out;
}

/// Invariant factors of a finite abelian group from the orders of all its elements:
/// |G[p^k]| determines the p-primary partition.
inline std::vector<long> invariants_from_orders(const std::vector<long>& orders) {
  const long size = static_cast<long>(orders.size());
  std::vector<long> primes;
  for (long n = size, p = 2; n > 1; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  std::map<long, std::vector<long>> powers;  // prime -> descending exponents
  for (long p : primes) {
    std::vector<long> counts{1};
    for (long pk = p;; pk *= p) {
      long c = std::count_if(orders.begin(), orders.end(), [&](long o) { return pk % o == 0; });
      counts.push_back(c);
      if (c == counts[counts.size() - 2] && counts.size() > 2) break;
    }
    // number of cyclic factors of order >= p^k is log_p(counts[k] / counts[k-1])
    std::vector<long> at_least;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      long ratio = counts[k] / counts[k - 1], r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      at_least.push_back(r);
    }
    std::vector<long> exps;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const long next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (long i = 0; i < at_least[k] - next; ++i) exps.push_back(static_cast<long>(k) + 1);
    }
    std::sort(exps.rbegin(), exps.rend());
    powers[p] = exps;
  }
  std::size_t len = 0;
  for (auto& [p, e] : powers) len = std::max(len, e.size());
  std::vector<long> inv(len, 1);
  for (auto& [p, e] : powers)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (long k = 0; k < e[i]; ++k) inv[i] *= p;
  std::reverse(inv.begin(), inv.end());
  return inv;
}

/// Invariant factors of (A + Z)/Z(a, -n) for A = Z/d1 + ... + Z/dk, by enumerating the
/// representatives (x, k) with 0 <= k < n.
inline std::vector<long> brute_pushout_invariants(const std::vector<long>& inv, const std::vector<long>& a, long n) {
  std::vector<std::vector<long>> elems{{}};
  for (long d : inv) {
    std::vector<std::vector<long>> next;
    for (const auto& e : elems)
      for (long x = 0; x < d; ++x) {
        auto f = e;
        f.push_back(x);
        next.push_back(f);
      }
    elems = std::move(next);
  }
  auto order_in_a = [&](const std::vector<long>& y) {
    long o = 1;
    for (std::size_t i = 0; i < inv.size(); ++i) {
      const long yi = ((y[i] % inv[i]) + inv[i]) % inv[i];
      o = std::lcm(o, inv[i] / std::gcd(inv[i], yi));
    }
    return o;
  };
  std::vector<long> orders;
  for (const auto& x : elems)
    for (long k = 0; k < n; ++k) {
      const long m0 = n / std::gcd(n, k);
      std::vector<long> y(inv.size());
      for (std::size_t i = 0; i < inv.size(); ++i) y[i] = m0 * x[i] + (m0 * k / n) * a[i];
      orders.push_back(m0 * order_in_a(y));
    }
  return invariants_from_orders(orders);
}

inline std::vector<long> torsion_of(const FgAbelianGroup& g) {
  std::vector<long> out;
  for (const auto& t : g.torsion()) out.push_back(t.get_si());
  return out;
}

inline GroupElement element(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return GroupElement(v);
}

/// k[x1..xn] graded by `grading` with the given degrees.
inline GradedRing polynomial_ring(const FgAbelianGroup& grading, const std::vector<GroupElement>& degrees,
                                  const std::string& prefix = "x", unsigned long field = 6) {
  GradedRing r(grading, cyclotomic_field(field));
  for (std::size_t i = 0; i < degrees.size(); ++i) r.add_generator(prefix + std::to_string(i + 1), degrees[i]);
  return r;
}

inline GroupElement random_element(std::mt19937& rng, const FgAbelianGroup& g, long lo = -2, long hi = 2) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<Integer> c;
  for (std::size_t i = 0; i < g.ambient_rank(); ++i) c.emplace_back(d(rng));
  return GroupElement(c);
}

/// Every Step B constraint of a run satisfied both local checks.
inline bool constraints_sound(const LiftResult& r) {
  for (const auto& s : r.steps)
    for (const auto& c : s.constraints)
      if (!c.exponents_ok || !c.unit_ok) return false;
  return true;
}

/// A stack over k[x1..xn] built from a random tower of at most three roots of order 2 or 3.
struct RandomTower {
  MdStack stack;
  std::string description;
};

inline RandomTower random_tower(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 99);
  const std::size_t n = 1 + rng() % 3;
  const bool projective = coin(rng) < 50;
  const FgAbelianGroup cl = projective ? FgAbelianGroup::free(1) : FgAbelianGroup::free(0);
  std::vector<GroupElement> degs(n, projective ? element({1}) : GroupElement());
  std::vector<RingElement> irrelevant;
  GradedRing base = polynomial_ring(cl, degs);
  if (projective)
    for (std::size_t i = 0; i < n; ++i) irrelevant.push_back(base.variable(i));
  RandomTower t{canonical_stack(base, irrelevant), projective ? "P" : "A"};
  t.description += std::to_string(projective ? n - 1 : n);
  const std::size_t steps = 1 + rng() % 3;
  for (std::size_t k = 0; k < steps; ++k) {
    const unsigned long order = coin(rng) < 50 ? 2 : 3;
    std::vector<std::size_t> prime_gens;
    for (std::size_t i = 0; i < t.stack.ring.num_generators(); ++i) {
      const Factorization f = t.stack.ring.h_factorize(t.stack.ring.variable(i));
      if (f.factors.size() == 1 && f.factors[0].second == 1 && f.factors[0].first == t.stack.ring.variable(i))
        prime_gens.push_back(i);
    }
    if (coin(rng) < 70 && !prime_gens.empty()) {
      const std::size_t g = prime_gens[rng() % prime_gens.size()];
      const std::string name = "r" + std::to_string(k + 1);
      t.description += " root(" + t.stack.ring.generator(g).name + "," + std::to_string(order) + ")";
      t.stack = root_divisor(t.stack, t.stack.ring.variable(g), order, name);
    } else {
      const GroupElement cls = random_element(rng, t.stack.pic());
      t.description += " bundle(" + cls.to_string() + "," + std::to_string(order) + ")";
      t.stack = root_line_bundle(t.stack, cls, order);
    }
  }
  return t;
}

}  // namespace coxlift::testing
