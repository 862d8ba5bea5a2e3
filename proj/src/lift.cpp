#include "coxlift/lift.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "coxlift/errors.hpp"

namespace coxlift {

using Table = std::vector<std::pair<Monomial, RingElement>>;

namespace {

unsigned long smallest_prime_factor(unsigned long m) {
  for (unsigned long d = 2; d * d <= m; ++d)
    if (m % d == 0) return d;
  return m;
}

GroupElement apply_images(const std::vector<GroupElement>& images, const GroupElement& x, std::size_t target_rank) {
  GroupElement out = GroupElement::zero(target_rank);
  for (std::size_t i = 0; i < x.rank(); ++i)
    if (x[i] != 0) out += x[i] * images.at(i).padded(target_rank);
  return out;
}

// Image of a target element under generator images living in `ring`.
RingElement substitute(const GradedRing& ring, const std::vector<RingElement>& images, const RingElement& e) {
  RingElement out;
  for (const auto& [m, c] : e.terms()) {
    RingElement t = ring.constant(c);
    for (std::size_t i = 0; i < m.support(); ++i)
      if (m[i] != 0) t = t * images.at(i).pow(m[i]);
    out += t;
  }
  return ring.normal_form(out);
}

std::string coords(const FgAbelianGroup& g, const GroupElement& x) {
  std::ostringstream os;
  os << '[';
  const auto c = g.canonical_coordinates(x);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

// Least k with (zeta^k)^n == u, if any.
std::optional<CycScalar> root_of_unit(const CycScalar& u, unsigned long n, const CycField& field) {
  const auto e = u.as_root_of_unity();
  if (!e) return std::nullopt;
  const unsigned long N = field->n();
  for (unsigned long k = 0; k < N; ++k)
    if ((k * n) % N == *e) return CycScalar::zeta(field, static_cast<long>(k));
  return std::nullopt;
}

}  // namespace

GroupElement DegreeMap::apply(const FgAbelianGroup& cl, const GroupElement& c, std::size_t target_rank) const {
  const auto lambda = express_in_generators(cl, sources, c);
  if (!lambda) throw InvariantViolation("class " + c.to_string() + " is outside the current subgroup");
  GroupElement out = GroupElement::zero(target_rank);
  for (std::size_t k = 0; k < images.size(); ++k)
    if ((*lambda)[k] != 0) out += (*lambda)[k] * images[k].padded(target_rank);
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const VerificationReport::Check& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvariantViolation("no verification check named " + name);
}

// ---------------------------------------------------------------------------
// Step A ingredients

std::vector<Monomial> pic_level_generators(const TargetData& target, const std::vector<GroupElement>& k_gens) {
  const FgAbelianGroup& cl = target.class_group();
  const FgAbelianGroup q = quotient_group(cl, k_gens).group;
  if (!q.is_finite()) throw InputError("not Q-factorial data: Cl(Y)/K is infinite");
  const std::size_t n = target.ring.num_generators();
  const auto& torsion = q.torsion();
  std::vector<std::vector<Integer>> gen(n);
  std::vector<unsigned long> ord(n);
  for (std::size_t i = 0; i < n; ++i) {
    gen[i] = q.canonical_coordinates(target.ring.generator(i).degree);
    ord[i] = element_order(q, target.ring.generator(i).degree)->get_ui();
  }

  std::vector<Monomial> candidates;
  std::vector<unsigned long> e(n);
  std::function<void(std::size_t, const std::vector<Integer>&, bool)> dfs =
      [&](std::size_t i, const std::vector<Integer>& sum, bool nonzero) {
        for (unsigned long v = 0; v <= ord[i]; ++v) {
          e[i] = v;
          std::vector<Integer> s = sum;
          for (std::size_t t = 0; t < s.size(); ++t) s[t] = mod(s[t] + Integer(v) * gen[i][t], torsion[t]);
          const bool nz = nonzero || v > 0;
          const bool zero_sum = std::all_of(s.begin(), s.end(), [](const Integer& x) { return x == 0; });
          if (nz && zero_sum) {
            candidates.emplace_back(e);
            continue;
          }
          if (i + 1 < n) dfs(i + 1, s, nz);
        }
        e[i] = 0;
      };
  if (n > 0) dfs(0, std::vector<Integer>(torsion.size()), false);

  std::sort(candidates.begin(), candidates.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return b < a;
  });
  std::vector<Monomial> kept;
  for (const auto& c : candidates)
    if (std::none_of(kept.begin(), kept.end(), [&](const Monomial& k) { return k.divides(c); })) kept.push_back(c);
  return kept;
}

ExtensionChoice choose_extension_class(const TargetData& target, const std::vector<GroupElement>& k_gens) {
  const FgAbelianGroup& cl = target.class_group();
  const FgAbelianGroup q = quotient_group(cl, k_gens).group;
  if (q.is_trivial()) throw InputError("already complete: K equals Cl(Y)");
  if (!q.is_finite()) throw InputError("not Q-factorial data: Cl(Y)/K is infinite");
  const GroupElement g = q.canonical_generators().front();
  const Integer m = q.torsion().front();
  if (!m.fits_ulong_p()) throw InputError("class group quotient too large");
  const unsigned long p = smallest_prime_factor(m.get_ui());
  return {cl.reduce(Integer(m / p) * g), p};
}

std::vector<CosetGenerator> coset_generators(const TargetData& target, const std::vector<GroupElement>& k_gens,
                                             const ExtensionChoice& ext) {
  const FgAbelianGroup& cl = target.class_group();
  auto next = k_gens;
  next.push_back(ext.cls);
  std::vector<CosetGenerator> out;
  for (const auto& m : pic_level_generators(target, next)) {
    const GroupElement f = target.ring.monomial_degree(m);
    if (in_subgroup(cl, k_gens, f)) continue;
    for (unsigned long c = 1; c < ext.prime; ++c)
      if (in_subgroup(cl, k_gens, f - Integer(c) * ext.cls)) {
        out.push_back({m, f, c});
        break;
      }
    if (out.empty() || !(out.back().monomial == m))
      throw InvariantViolation("coset of " + target.ring.format(m) + " not found");
  }
  return out;
}

RingElement evaluate_in_table(const GradedRing& ring, const Table& table, const Monomial& m,
                              const GradedRing& target_ring) {
  if (m.is_one()) return ring.one();
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto da = table[a].first.total_degree(), db = table[b].first.total_degree();
    if (da != db) return da > db;
    return table[b].first < table[a].first;
  });
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> chosen;
  std::size_t budget = 200000;
  std::function<void(const Monomial&, std::size_t)> search = [&](const Monomial& rest, std::size_t from) {
    if (rest.is_one()) {
      found.push_back(chosen);
      return;
    }
    for (std::size_t idx = from; idx < order.size() && found.size() < 2 && budget > 0; ++idx) {
      --budget;
      const Monomial& key = table[order[idx]].first;
      if (!key.divides(rest)) continue;
      chosen.push_back(order[idx]);
      search(rest.quotient(key), idx);
      chosen.pop_back();
    }
  };
  search(m, 0);
  if (found.empty()) throw InputError("generator table incomplete: no decomposition of " + target_ring.format(m));
  auto value = [&](const std::vector<std::size_t>& d) {
    RingElement v = ring.one();
    for (auto k : d) v = v * table[k].second;
    return ring.normal_form(v);
  };
  const RingElement v0 = value(found[0]);
  if (found.size() > 1) {
    const RingElement v1 = value(found[1]);
    if (!(v0 == v1))
      throw InputError("map is not well defined on " + target_ring.format(m) + ": " + ring.format(v0) + " vs " +
                       ring.format(v1));
  }
  return v0;
}

// ---------------------------------------------------------------------------
// the lift

namespace {

struct LiftState {
  MdStack stack;
  std::vector<GroupElement> k_gens;
  DegreeMap degree_map;
  Table table;
};

std::string fresh_name(const GradedRing& ring, const GradedRing& target) {
  for (unsigned long k = 1;; ++k) {
    std::string name = "z" + std::to_string(k);
    if (!ring.find(name) && !target.find(name)) return name;
  }
}

void check_coherence(const TargetData& target, const LiftState& s) {
  const GradedRing& R = s.stack.ring;
  for (const auto& [key, img] : s.table) {
    if (img.is_zero()) continue;
    const GroupElement expected =
        s.degree_map.apply(target.class_group(), target.ring.monomial_degree(key), s.stack.pic().ambient_rank());
    if (!s.stack.pic().equal(R.degree_of(img), expected))
      throw InvariantViolation("degree coherence fails for " + target.ring.format(key) + " -> " + R.format(img));
  }
}

void validate_base(const TargetData& target, const MdStack& source, const BaseMorphism& base, LiftState& s) {
  const FgAbelianGroup& cl = target.class_group();
  const GradedRing& R = source.ring;
  if (base.pic_images.size() != target.pic_generators.size())
    throw InputError("base morphism needs one class image per Pic(Y) generator");
  for (const auto& g : target.pic_generators)
    if (g.rank() != cl.ambient_rank()) throw InputError("Pic(Y) generator has wrong rank");
  for (const auto& g : base.pic_images)
    if (g.rank() != source.pic().ambient_rank()) throw InputError("class image has wrong rank");
  const FgAbelianGroup pres = subgroup_presentation(cl, target.pic_generators);
  const auto& rel = pres.relations();
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    GroupElement sum = source.pic().zero();
    for (std::size_t k = 0; k < rel.cols(); ++k) sum += rel(i, k) * base.pic_images[k];
    if (!source.pic().is_zero(sum))
      throw InputError("class images do not respect the relations of Pic(Y)");
  }
  for (const auto& [m, img] : base.images) {
    if (m.is_one()) throw InputError("base morphism image given for the constant monomial");
    if (m.support() > target.ring.num_generators()) throw InputError("base morphism key outside R(Y)");
    const GroupElement d = target.ring.monomial_degree(m);
    if (!in_subgroup(cl, target.pic_generators, d))
      throw InputError("degree of " + target.ring.format(m) + " is not in Pic(Y)");
    if (img.support() > R.num_generators()) throw InputError("image of " + target.ring.format(m) + " is outside R(X)");
    if (img.is_zero()) continue;
    if (!R.is_homogeneous(img))
      throw InputError("image of " + target.ring.format(m) + " is not homogeneous: " + R.format(img));
    const GroupElement expected = s.degree_map.apply(cl, d, source.pic().ambient_rank());
    if (!source.pic().equal(R.degree_of(img), expected))
      throw InputError("image of " + target.ring.format(m) + " has degree " + coords(source.pic(), R.degree_of(img)) +
                       ", expected " + coords(source.pic(), expected));
  }
  for (const auto& m : pic_level_generators(target, target.pic_generators)) {
    const bool present =
        std::any_of(base.images.begin(), base.images.end(), [&](const auto& p) { return p.first == m; });
    if (!present) throw InputError("base morphism has no image for " + target.ring.format(m));
  }
  for (std::size_t a = 0; a < base.images.size(); ++a)
    for (std::size_t b = a; b < base.images.size(); ++b)
      evaluate_in_table(R, s.table, base.images[a].first * base.images[b].first, target.ring);
}

void step_line_bundle(const TargetData& target, LiftState& s, LiftStep& step) {
  const FgAbelianGroup& cl = target.class_group();
  const GroupElement bundle =
      s.degree_map.apply(cl, Integer(step.prime) * step.extension_class, s.stack.pic().ambient_rank());
  s.stack = root_line_bundle(s.stack, bundle, step.prime);
  s.stack.tower.back().lifted_class = step.extension_class;
  step.kind = LiftStep::Kind::line_bundle;
  step.bundle_class = bundle;
  step.delta = s.stack.pic().generator(s.stack.pic().ambient_rank() - 1);
  for (const auto& r : step.coset_generators) s.table.emplace_back(r, RingElement());
}

void step_divisor_roots(const TargetData& target, LiftState& s, LiftStep& step, const LiftOptions& options) {
  const FgAbelianGroup& cl = target.class_group();
  const unsigned long p = step.prime;
  const GradedRing before = s.stack.ring;
  const CycField field = before.field();
  const unsigned long N = field->n();
  const std::size_t n = step.coset_generators.size();

  // (1) factor the nonzero pullbacks over a common list
  std::vector<Factorization> fact(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (step.pullbacks[j].is_zero()) continue;
    step.active.push_back(j);
    fact[j] = before.h_factorize(step.pullbacks[j]);
    for (const auto& [g, e] : fact[j].factors) {
      auto it = std::find(step.factors.begin(), step.factors.end(), g);
      std::size_t l = static_cast<std::size_t>(it - step.factors.begin());
      if (it == step.factors.end()) {
        step.factors.push_back(g);
        step.exponents.emplace_back(n, 0);
      }
      step.exponents[l][j] += e;
    }
  }
  // (2) root orders
  for (const auto& row : step.exponents)
    step.root_orders.push_back(
        std::all_of(row.begin(), row.end(), [&](unsigned long a) { return a % p == 0; }) ? 1 : p);

  // (3) roots along the factors that need them
  MdStack next = s.stack;
  std::vector<RingElement> w(step.factors.size());
  for (std::size_t l = 0; l < step.factors.size(); ++l) {
    if (step.root_orders[l] == 1) {
      w[l] = step.factors[l];
      continue;
    }
    std::string name;
    for (const auto& ar : options.anticipated_roots) {
      if (ar.order != p || next.ring.find(ar.name) || ar.section.support() > before.num_generators()) continue;
      const RingElement sec = before.make_monic(before.normal_form(ar.section)).second;
      if (sec == step.factors[l]) {
        name = ar.name;
        break;
      }
    }
    if (name.empty()) name = fresh_name(next.ring, target.ring);
    next = root_divisor(next, step.factors[l], p, name);
    next.tower.back().lifted_class = step.extension_class;
    step.new_generators.push_back(name);
    w[l] = next.ring.variable(name);
  }
  const GradedRing& after = next.ring;

  // (4) candidate images beta_j with beta_j^p = pullback_j
  std::vector<CycScalar> rho(n, after.scalar(1));
  std::vector<RingElement> beta(n);
  for (std::size_t j : step.active) {
    auto r = root_of_unit(fact[j].unit, p, field);
    if (!r)
      throw InputError("pullback of " + target.ring.format(step.coset_generators[j].pow(p)) + " has unit " +
                       fact[j].unit.to_string() + " without a " + std::to_string(p) + "-th root of unity in Q(E(" +
                       std::to_string(N) + "))");
    rho[j] = *r;
    RingElement b = after.constant(rho[j]);
    for (std::size_t l = 0; l < step.factors.size(); ++l) {
      const unsigned long a = step.exponents[l][j];
      if (a == 0) continue;
      b = b * w[l].pow(step.root_orders[l] == p ? a : a / p);
    }
    beta[j] = after.normal_form(b);
  }

  // (5) kernel monomials and the alpha system
  std::vector<Integer> m_active;
  for (std::size_t j : step.active) m_active.emplace_back(step.cosets[j]);
  const auto basis = kernel_basis_mod_p(m_active, Integer(p));
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> rhs;
  for (const auto& c : basis) {
    KernelConstraint kc;
    kc.coefficients = c;
    Monomial rc;
    for (std::size_t k = 0; k < c.size(); ++k)
      rc = rc * step.coset_generators[step.active[k]].pow(c[k].get_ui());
    kc.monomial = rc;
    const RingElement E = after.normal_form(evaluate_in_table(before, s.table, rc, target.ring));
    if (E.is_zero()) throw InputError("pullback of kernel monomial " + target.ring.format(rc) + " vanishes");
    const Factorization fe = after.h_factorize(E);

    std::vector<std::pair<RingElement, unsigned long>> expected;
    for (std::size_t l = 0; l < step.factors.size(); ++l) {
      unsigned long total = 0;
      for (std::size_t k = 0; k < c.size(); ++k) total += c[k].get_ui() * step.exponents[l][step.active[k]];
      const unsigned long ex = step.root_orders[l] == p ? total : total / p;
      if (step.root_orders[l] == 1 && total % p != 0) throw InvariantViolation("fractional exponent in kernel monomial");
      if (ex > 0) expected.emplace_back(after.make_monic(after.normal_form(w[l])).second, ex);
    }
    kc.exponents_ok = expected.size() == fe.factors.size() &&
                      std::all_of(expected.begin(), expected.end(), [&](const auto& ex) {
                        return std::any_of(fe.factors.begin(), fe.factors.end(), [&](const auto& f) {
                          return f.first == ex.first && f.second == ex.second;
                        });
                      });
    CycScalar lambda = fe.unit;
    for (std::size_t k = 0; k < c.size(); ++k) lambda = lambda / rho[step.active[k]].pow(c[k].get_si());
    kc.unit_ok = lambda.pow(static_cast<long>(p)).is_one();
    step.constraints.push_back(kc);
    if (!kc.exponents_ok)
      throw InputError("inconsistent factorization data at " + target.ring.format(rc) + ": pullback " +
                       after.format(E) + " is not the expected product of roots");
    if (!kc.unit_ok)
      throw InputError("inconsistent factorization data at " + target.ring.format(rc) + ": unit " +
                       lambda.to_string() + " is not a root of unity of order dividing " + std::to_string(p));
    const auto e = lambda.as_root_of_unity();
    if (!e || *e % (N / p) != 0) throw InvariantViolation("unit of " + target.ring.format(rc) + " misread");
    step.constraints.back().value = Integer(*e / (N / p));
    rows.push_back(c);
    rhs.push_back(step.constraints.back().value);
  }
  const AffineSolution sol = solve_affine_mod_p(rows, rhs, step.active.size(), Integer(p));
  if (!sol.solution) throw InputError("the alpha system is inconsistent at class " + coords(cl, step.extension_class));
  step.alpha = *sol.solution;
  step.solution_count = sol.solution_count;

  // (6) images
  const CycScalar zeta_p = after.zeta(static_cast<long>(N / p));
  std::vector<RingElement> image(n);
  for (std::size_t k = 0; k < step.active.size(); ++k) {
    const std::size_t j = step.active[k];
    image[j] = after.normal_form(zeta_p.pow(step.alpha[k].get_si()) * beta[j]);
  }

  // (7) the new class delta
  const std::size_t rank = next.pic().ambient_rank();
  std::vector<std::pair<Integer, GroupElement>> eqs;
  eqs.emplace_back(Integer(p), s.degree_map.apply(cl, Integer(p) * step.extension_class, rank));
  for (std::size_t j : step.active) {
    const Integer mj(step.cosets[j]);
    const GroupElement rest = step.coset_classes[j] - mj * step.extension_class;
    eqs.emplace_back(mj, after.degree_of(image[j]) - s.degree_map.apply(cl, rest, rank));
  }
  const auto delta = solve_linear_over_group(next.pic(), eqs);
  if (!delta) throw InputError("no class for the new divisor is compatible with the image degrees");
  step.delta = *delta;

  s.stack = std::move(next);
  for (std::size_t j = 0; j < n; ++j) s.table.emplace_back(step.coset_generators[j], image[j]);
}

}  // namespace

LiftResult run_cox_lift(const TargetData& target, const MdStack& source, const BaseMorphism& base,
                        const LiftOptions& options) {
  const FgAbelianGroup& cl = target.class_group();
  LiftState s;
  s.stack = source;
  s.k_gens = target.pic_generators;
  s.degree_map = {target.pic_generators, base.pic_images};
  s.table = base.images;
  validate_base(target, source, base, s);

  LiftResult result;
  while (!quotient_group(cl, s.k_gens).group.is_trivial()) {
    LiftStep step;
    const ExtensionChoice ext = choose_extension_class(target, s.k_gens);
    if (source.ring.field()->n() % ext.prime != 0)
      throw InputError("cyclotomic order " + std::to_string(source.ring.field()->n()) + " has no primitive " +
                       std::to_string(ext.prime) + "-th root of unity");
    step.extension_class = ext.cls;
    step.prime = ext.prime;
    for (const auto& c : coset_generators(target, s.k_gens, ext)) {
      step.coset_generators.push_back(c.monomial);
      step.coset_classes.push_back(c.cls);
      step.cosets.push_back(c.coset);
    }
    auto next_gens = s.k_gens;
    next_gens.push_back(ext.cls);
    step.level_generators = pic_level_generators(target, next_gens);

    bool any = false;
    for (const auto& r : step.coset_generators) {
      step.pullbacks.push_back(
          s.stack.ring.normal_form(evaluate_in_table(s.stack.ring, s.table, r.pow(ext.prime), target.ring)));
      any = any || !step.pullbacks.back().is_zero();
    }
    if (any)
      step_divisor_roots(target, s, step, options);
    else
      step_line_bundle(target, s, step);

    const std::size_t rank = s.stack.pic().ambient_rank();
    for (auto& img : s.degree_map.images) img = img.padded(rank);
    s.degree_map.sources.push_back(ext.cls);
    s.degree_map.images.push_back(step.delta);
    s.k_gens = next_gens;
    for (auto& [key, img] : s.table) img = s.stack.ring.normal_form(img);
    check_coherence(target, s);
    result.steps.push_back(std::move(step));
  }

  const std::size_t rank = s.stack.pic().ambient_rank();
  for (std::size_t i = 0; i < target.ring.num_generators(); ++i)
    result.images.push_back(evaluate_in_table(s.stack.ring, s.table, Monomial::variable(i), target.ring));
  for (std::size_t i = 0; i < cl.ambient_rank(); ++i)
    result.class_map.push_back(s.stack.pic().reduce(s.degree_map.apply(cl, cl.generator(i), rank)));
  result.stack = std::move(s.stack);
  result.table = std::move(s.table);
  result.verification = verify_lift(target, source, base, result);
  return result;
}

VerificationReport verify_lift(const TargetData& target, const MdStack& source, const BaseMorphism& base,
                               const LiftResult& result) {
  (void)source;
  const GradedRing& R = result.stack.ring;
  const FgAbelianGroup& pic = result.stack.pic();
  const FgAbelianGroup& cl = target.class_group();
  const std::size_t rank = pic.ambient_rank();
  VerificationReport report;

  VerificationReport::Check homogeneity{"homogeneity", true, {}};
  VerificationReport::Check relations{"relations", true, {}};
  VerificationReport::Check restriction{"restriction", true, {}};
  VerificationReport::Check group_map{"group_map", true, {}};
  auto fail = [](VerificationReport::Check& c, std::string msg) {
    c.passed = false;
    c.failures.push_back(std::move(msg));
  };

  const bool shapes_ok = result.images.size() == target.ring.num_generators() &&
                         result.class_map.size() == cl.ambient_rank() &&
                         std::all_of(result.class_map.begin(), result.class_map.end(),
                                     [&](const GroupElement& g) { return g.rank() == rank; });
  if (!shapes_ok) {
    fail(group_map, "result has the wrong number of images or class images");
    report.checks = {homogeneity, relations, restriction, group_map};
    return report;
  }
  auto phi_class = [&](const GroupElement& c) { return apply_images(result.class_map, c, rank); };

  for (std::size_t i = 0; i < result.images.size(); ++i) {
    const RingElement& img = result.images[i];
    const std::string& name = target.ring.generator(i).name;
    if (img.is_zero()) continue;
    if (img.support() > R.num_generators() || !R.is_homogeneous(img)) {
      fail(homogeneity, name + ": image " + R.format(img) + " is not homogeneous");
      continue;
    }
    const GroupElement want = phi_class(target.ring.generator(i).degree);
    if (!pic.equal(R.degree_of(img), want))
      fail(homogeneity, name + ": image " + R.format(img) + " has degree " + coords(pic, R.degree_of(img)) +
                            ", expected " + coords(pic, want));
  }

  for (const auto& rule : target.ring.active_rules()) {
    const RingElement diff =
        substitute(R, result.images, RingElement(rule.lhs, R.scalar(1)) - rule.rhs);
    if (!diff.is_zero())
      fail(relations, target.ring.format(rule.lhs) + " = " + target.ring.format(rule.rhs) + " maps to " +
                          R.format(diff));
  }

  for (const auto& [m, b] : base.images) {
    const RingElement lifted = substitute(R, result.images, RingElement(m, R.scalar(1)));
    const RingElement given = R.normal_form(b);
    if (!(lifted == given))
      fail(restriction, target.ring.format(m) + ": lift gives " + R.format(lifted) + ", base map gives " +
                            R.format(given));
  }

  try {
    GroupHomomorphism(cl, pic, result.class_map);
  } catch (const InputError& e) {
    fail(group_map, std::string("Cl(Y) -> Pic is not well defined: ") + e.what());
  }
  for (std::size_t k = 0; k < target.pic_generators.size() && k < base.pic_images.size(); ++k) {
    const GroupElement lhs = phi_class(target.pic_generators[k]);
    const GroupElement rhs = base.pic_images[k].padded(rank);
    if (!pic.equal(lhs, rhs))
      fail(group_map, "Pic(Y) generator " + coords(cl, target.pic_generators[k]) + " maps to " + coords(pic, lhs) +
                          " but the base map gives " + coords(pic, rhs));
  }

  report.checks = {homogeneity, relations, restriction, group_map};
  return report;
}

LiftData lift_data(const LiftResult& r) { return {r.stack, r.images, r.class_map}; }

// ---------------------------------------------------------------------------
// minimality

Factoring check_factors_through(const LiftData& lift, const LiftData& candidate) {
  const MdStack& A = lift.stack;
  const MdStack& B = candidate.stack;
  const GradedRing& RA = A.ring;
  const GradedRing& RB = B.ring;
  Factoring out;
  auto refuse = [&](std::string why) {
    out.factors = false;
    out.obstruction = std::move(why);
    return out;
  };

  const std::size_t base_rank = A.base_ring.grading().ambient_rank();
  if (B.base_ring.grading().ambient_rank() != base_rank || B.pic().ambient_rank() < base_rank)
    return refuse("the stacks are not built over the same class group");

  std::vector<RingElement> theta(RA.num_generators());
  std::vector<bool> known(RA.num_generators(), false);
  for (const auto& g : A.base_ring.generators()) {
    const auto ia = RA.index_of(g.name);
    const auto ib = RB.find(g.name);
    if (!ib) return refuse("candidate lacks base generator " + g.name);
    theta[ia] = RB.variable(*ib);
    known[ia] = true;
  }
  std::vector<GroupElement> vartheta;
  for (std::size_t i = 0; i < base_rank; ++i) vartheta.push_back(B.pic().generator(i));

  auto image_of = [&](const RingElement& e) {
    RingElement outv;
    for (const auto& [m, c] : e.terms()) {
      RingElement t = RB.constant(c);
      for (std::size_t i = 0; i < m.support(); ++i)
        if (m[i] != 0) t = t * theta.at(i).pow(m[i]);
      outv += t;
    }
    return RB.normal_form(outv);
  };
  const std::size_t rank_b = B.pic().ambient_rank();

  for (const auto& step : A.tower) {
    if (step.kind == RootStep::Kind::divisor) {
      const std::size_t z = RA.index_of(step.generator);
      const RingElement ts = image_of(step.section);
      const unsigned long n = step.order;
      const GroupElement target = apply_images(vartheta, RA.degree_of(step.section), rank_b);
      if (ts.is_zero()) {
        auto d = solve_linear_over_group(B.pic(), {{Integer(n), target}});
        if (!d) return refuse("no class for the root of " + RA.format(step.section));
        theta[z] = RingElement();
        known[z] = true;
        vartheta.push_back(*d);
        continue;
      }
      Factorization f;
      try {
        f = RB.h_factorize(ts);
      } catch (const FactorizationRequired& e) {
        return refuse(e.what());
      }
      RingElement wv;
      bool ok = std::all_of(f.factors.begin(), f.factors.end(), [&](const auto& x) { return x.second % n == 0; });
      std::optional<CycScalar> unit_root = root_of_unit(f.unit, n, RB.field());
      if (!unit_root && f.unit.is_rational()) {
        // rational perfect powers
        Rational u = f.unit.rational_value();
        if (u > 0 || n % 2 == 1) {
          Integer num = abs(u.get_num()), den = u.get_den(), rn, rd;
          const bool exact_num = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) != 0;
          const bool exact_den = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) != 0;
          if (exact_num && exact_den) unit_root = RB.scalar(Rational(u < 0 ? -rn : rn, rd));
        }
      }
      if (!ok || !unit_root)
        return refuse("section " + RA.format(step.section) + " maps to " + RB.format(ts) + ", which has no " +
                      std::to_string(n) + "-th root in the candidate");
      wv = RB.constant(*unit_root);
      for (const auto& [g, e] : f.factors) wv = wv * g.pow(e / n);
      wv = RB.normal_form(wv);
      theta[z] = wv;
      known[z] = true;
      vartheta.push_back(RB.degree_of(wv));
    } else {
      const GroupElement target = apply_images(vartheta, step.bundle_class, rank_b);
      const unsigned long n = step.order;
      if (candidate.class_map && lift.class_map && step.lifted_class) {
        const GroupElement d = apply_images(*candidate.class_map, *step.lifted_class, rank_b);
        if (!B.pic().equal(Integer(n) * d, target))
          return refuse("line bundle root of order " + std::to_string(n) + ": " + coords(B.pic(), d) +
                        " is not an n-th root of " + coords(B.pic(), target));
        vartheta.push_back(d);
      } else {
        auto d = solve_linear_over_group(B.pic(), {{Integer(n), target}});
        if (!d) return refuse("line bundle root of order " + std::to_string(n) + " has no image");
        vartheta.push_back(*d);
      }
    }
  }
  if (vartheta.size() != A.pic().ambient_rank()) return refuse("tower does not account for every class generator");
  for (std::size_t i = 0; i < known.size(); ++i)
    if (!known[i]) return refuse("generator " + RA.generator(i).name + " is not produced by the tower");

  try {
    GroupHomomorphism(A.pic(), B.pic(), vartheta);
  } catch (const InputError& e) {
    return refuse(std::string("group map is not well defined: ") + e.what());
  }
  for (const auto& rule : RA.active_rules()) {
    const RingElement d = image_of(RingElement(rule.lhs, RA.scalar(1)) - rule.rhs);
    if (!d.is_zero()) return refuse("relation " + RA.format(rule.lhs) + " = " + RA.format(rule.rhs) + " is not preserved");
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i].is_zero()) continue;
    if (!RB.is_homogeneous(theta[i])) return refuse("image of " + RA.generator(i).name + " is not homogeneous");
    const GroupElement want = apply_images(vartheta, RA.generator(i).degree, rank_b);
    if (!B.pic().equal(RB.degree_of(theta[i]), want))
      return refuse("image of " + RA.generator(i).name + " has the wrong degree");
  }

  if (lift.class_map && candidate.class_map) {
    if (lift.class_map->size() != candidate.class_map->size()) return refuse("class maps have different domains");
    for (std::size_t i = 0; i < lift.class_map->size(); ++i) {
      const GroupElement via = apply_images(vartheta, (*lift.class_map)[i], rank_b);
      const GroupElement direct = (*candidate.class_map)[i].padded(rank_b);
      if (!B.pic().equal(via, direct))
        return refuse("class generator " + std::to_string(i) + " maps to " + coords(B.pic(), direct) +
                      " in the candidate but to " + coords(B.pic(), via) + " through the lift");
    }
  }
  if (lift.images && candidate.images) {
    if (lift.images->size() != candidate.images->size()) return refuse("image lists have different lengths");
    for (std::size_t i = 0; i < lift.images->size(); ++i) {
      const RingElement via = image_of((*lift.images)[i]);
      const RingElement direct = RB.normal_form((*candidate.images)[i]);
      if (via.is_zero() && direct.is_zero()) continue;
      bool same = false;
      if (!via.is_zero() && !direct.is_zero()) {
        const CycScalar ratio = direct.leading().second / via.leading().second;
        same = ratio.as_root_of_unity().has_value() && direct == ratio * via;
      }
      if (!same)
        return refuse("generator image " + std::to_string(i) + " differs: " + RB.format(direct) + " vs " +
                      RB.format(via));
    }
  }
  out.factors = true;
  out.ring_images = std::move(theta);
  out.group_images = std::move(vartheta);
  return out;
}

// ---------------------------------------------------------------------------
// decomposition

Decomposition decompose_as_roots(const MdStack& stack, const LiftOptions& options) {
  if (!stack.coarse_pullback) throw InputError("stack has no pullback map from its coarse space");
  TargetData target{stack.ring, *stack.coarse_pullback, stack.irrelevant};
  const MdStack source = canonical_stack(stack.base_ring, stack.irrelevant);
  BaseMorphism base;
  for (const auto& m : pic_level_generators(target, target.pic_generators)) {
    const RingElement nf = stack.ring.normal_form(stack.ring.monomial(m));
    if (nf.support() > stack.base_ring.num_generators())
      throw InputError("section " + stack.ring.format(m) + " does not come from the coarse space");
    base.images.emplace_back(m, nf);
  }
  for (std::size_t i = 0; i < stack.base_ring.grading().ambient_rank(); ++i)
    base.pic_images.push_back(stack.base_ring.grading().generator(i));

  Decomposition d;
  d.lift = run_cox_lift(target, source, base, options);
  const FgAbelianGroup& got = d.lift.stack.pic();
  d.pic_matches = got == stack.pic();

  auto canonical_multiset = [&](std::vector<GroupElement> degs) {
    std::vector<std::vector<Integer>> out;
    for (const auto& g : degs) out.push_back(got.canonical_coordinates(g));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<GroupElement> mapped, rebuilt;
  for (auto i : stack.ring.effective_generators())
    mapped.push_back(apply_images(d.lift.class_map, stack.ring.generator(i).degree, got.ambient_rank()));
  for (auto i : d.lift.stack.ring.effective_generators()) rebuilt.push_back(d.lift.stack.ring.generator(i).degree);
  d.degrees_match = canonical_multiset(mapped) == canonical_multiset(rebuilt);

  std::ostringstream os;
  os << "input Pic " << stack.pic().to_string() << ", rebuilt Pic " << got.to_string() << "; "
     << mapped.size() << " vs " << rebuilt.size() << " effective generators";
  d.detail = os.str();
  return d;
}

std::string describe_constraint(const GradedRing& target_ring, const LiftStep& step, const KernelConstraint& c) {
  std::string lhs;
  for (std::size_t k = 0; k < c.coefficients.size(); ++k) {
    if (c.coefficients[k] == 0) continue;
    if (!lhs.empty()) lhs += " + ";
    if (c.coefficients[k] != 1) lhs += c.coefficients[k].get_str() + "*";
    lhs += "a(" + target_ring.format(step.coset_generators[step.active[k]]) + ")";
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " = " + c.value.get_str() + " (mod " + std::to_string(step.prime) + ")";
}

}  // namespace coxlift
