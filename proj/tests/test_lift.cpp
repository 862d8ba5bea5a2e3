#include <doctest.h>

#include <cmath>
#include <set>

#include "coxlift/errors.hpp"
#include "support.hpp"

using namespace coxlift;
using namespace coxlift::testing;

namespace {

std::set<std::string> formatted(const GradedRing& r, const std::vector<Monomial>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(r.format(m));
  return out;
}

TargetData cyclic_target(long n, std::vector<long> degrees) {
  std::vector<GroupElement> d;
  for (long x : degrees) d.push_back(element({x}));
  return TargetData{polynomial_ring(FgAbelianGroup::cyclic(n), d), {}, {}};
}

LiftResult lift(const io::Problem& p) { return run_cox_lift(p.target, p.source, p.base, p.options); }

}  // namespace

TEST_CASE("pic level generators") {
  const TargetData half = cyclic_target(2, {1, 1});
  CHECK(formatted(half.ring, pic_level_generators(half, {})) == std::set<std::string>{"x1^2", "x1*x2", "x2^2"});
  const TargetData third = cyclic_target(3, {1, 2});
  CHECK(formatted(third.ring, pic_level_generators(third, {})) == std::set<std::string>{"x1^3", "x1*x2", "x2^3"});
  CHECK(formatted(third.ring, pic_level_generators(third, {element({1})})) == std::set<std::string>{"x1", "x2"});

  const TargetData free{polynomial_ring(FgAbelianGroup::free(1), {element({1})}), {}, {}};
  CHECK_THROWS_WITH_AS(pic_level_generators(free, {}), doctest::Contains("not Q-factorial"), InputError);
}

TEST_CASE("extension classes") {
  const ExtensionChoice two = choose_extension_class(cyclic_target(2, {1, 1}), {});
  CHECK(two.prime == 2);
  CHECK(FgAbelianGroup::cyclic(2).equal(two.cls, element({1})));

  const ExtensionChoice four = choose_extension_class(cyclic_target(4, {1, 2}), {});
  CHECK(four.prime == 2);
  CHECK(FgAbelianGroup::cyclic(4).equal(four.cls, element({2})));

  const ExtensionChoice six = choose_extension_class(cyclic_target(6, {1}), {});
  CHECK(six.prime == 2);
  CHECK(*element_order(FgAbelianGroup::cyclic(6), six.cls) == 2);

  CHECK_THROWS_WITH_AS(choose_extension_class(cyclic_target(2, {1}), {element({1})}),
                       doctest::Contains("already complete"), InputError);
}

TEST_CASE("coset generators") {
  const TargetData half = cyclic_target(2, {1, 1});
  const auto gens = coset_generators(half, {}, choose_extension_class(half, {}));
  REQUIRE(gens.size() == 2);
  std::set<std::string> names;
  for (const auto& g : gens) {
    names.insert(half.ring.format(g.monomial));
    CHECK(g.coset == 1);
  }
  CHECK(names == std::set<std::string>{"x1", "x2"});

  const TargetData third = cyclic_target(3, {1, 2});
  std::set<std::string> t;
  for (const auto& g : coset_generators(third, {}, choose_extension_class(third, {})))
    t.insert(third.ring.format(g.monomial));
  CHECK(t.count("x1") == 1);
  CHECK(t.count("x2") == 1);
}

TEST_CASE("evaluating through the generator table") {
  const io::Problem a1 = load("a1_into_half11.json");
  const GradedRing& S = a1.source.ring;
  const GradedRing& Y = a1.target.ring;
  CHECK(S.format(evaluate_in_table(S, a1.base.images, Monomial::variable(0, 2), Y)) == "t");
  CHECK(evaluate_in_table(S, a1.base.images, Monomial(), Y) == S.one());

  const io::Problem mu3 = load("mu3.json");
  const GradedRing& R = mu3.source.ring;
  const Monomial x3y3 = Monomial::variable(0, 3) * Monomial::variable(1, 3);
  const RingElement got = evaluate_in_table(R, mu3.base.images, x3y3, mu3.target.ring);
  CHECK(R.normal_form(got) == R.normal_form(R.variable("u") * R.variable("w")));
  CHECK(R.normal_form(got) == R.normal_form(R.variable("v", 3)));

  CHECK_THROWS_WITH_AS(evaluate_in_table(S, a1.base.images, Monomial::variable(0), Y),
                       doctest::Contains("generator table incomplete"), InputError);
}

TEST_CASE("no root when p divides every exponent") {
  const TargetData third = cyclic_target(3, {1, 2});
  const GradedRing S = polynomial_ring(FgAbelianGroup::free(0), {GroupElement()}, "u");
  BaseMorphism b;
  b.images = {{Monomial::variable(0, 3), S.variable(0, 3)},
              {Monomial::variable(0) * Monomial::variable(1), S.variable(0, 2)},
              {Monomial::variable(1, 3), S.variable(0, 3)}};
  const LiftResult r = run_cox_lift(third, canonical_stack(S, {}), b);
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].root_orders == std::vector<unsigned long>{1});
  CHECK(r.stack.tower.empty());
  CHECK(S.format(r.images[0]) == "u1");
  CHECK(S.format(r.images[1]) == "u1");
  CHECK(r.verification.passed());
}

TEST_CASE("square root lift") {
  const LiftResult r = lift(load("a1_into_half11.json"));
  CHECK(io::describe_tower(r.stack) == "[divisor root: t, order 2]");
  CHECK(r.stack.pic() == FgAbelianGroup::cyclic(2));
  CHECK(r.stack.ring.format(r.images[0]) == "z");
  CHECK(r.images[1].is_zero());
  CHECK(r.verification.passed());
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].solution_count == 2);
}

TEST_CASE("line bundle lifts") {
  const LiftResult point = lift(load("point_into_half11.json"));
  CHECK(io::describe_tower(point.stack) == "[line bundle root: (), order 2]");
  CHECK(point.stack.pic() == FgAbelianGroup::cyclic(2));

  const LiftResult zero = lift(load("mu3_zero.json"));
  CHECK(zero.stack.tower.size() == 1);
  CHECK(zero.stack.tower[0].kind == RootStep::Kind::line_bundle);
  CHECK(zero.stack.pic() == FgAbelianGroup::from_invariants({3}, 1));
}

TEST_CASE("two step lift") {
  const io::Problem p = load("quarter12.json");
  const LiftResult r = lift(p);
  REQUIRE(r.steps.size() == 2);
  CHECK(formatted(p.target.ring, r.steps[0].level_generators) == std::set<std::string>{"x^2", "y"});
  CHECK(r.stack.pic() == FgAbelianGroup::cyclic(4));
  CHECK(r.stack.ring.format(r.images[0]) == "z3");
  CHECK(r.stack.ring.format(r.images[1]) == "z2");
  CHECK(r.verification.passed());
}

TEST_CASE("step invariants on every example") {
  for (const char* name : {"a1_into_half11.json", "point_into_half11.json", "mu3.json", "mu3_zero.json",
                           "quarter12.json"}) {
    CAPTURE(name);
    const io::Problem p = load(name);
    const LiftResult r = lift(p);
    CHECK(constraints_sound(r));
    const Quotient q = quotient_group(p.target.class_group(), p.target.pic_generators);
    const double bound = std::log2(q.group.order()->get_d()) + 1e-9;
    CHECK(static_cast<double>(r.steps.size()) <= bound);
    for (const auto& s : r.steps) {
      for (auto b : s.root_orders) CHECK((b == 1 || b == s.prime));
      // count solutions of the alpha system by enumeration
      const std::size_t n = s.active.size();
      long total = 1, count = 0;
      for (std::size_t k = 0; k < n; ++k) total *= static_cast<long>(s.prime);
      for (long code = 0; code < total; ++code) {
        std::vector<long> a(n);
        for (std::size_t k = 0, c = code; k < n; ++k, c /= s.prime) a[k] = static_cast<long>(c % s.prime);
        bool ok = true;
        for (const auto& kc : s.constraints) {
          Integer sum = 0;
          for (std::size_t k = 0; k < n; ++k) sum += kc.coefficients[k] * a[k];
          ok = ok && mod(sum - kc.value, s.prime) == 0;
        }
        count += ok;
      }
      CHECK(s.solution_count == count);
    }
    // degree coherence of the final images
    for (std::size_t i = 0; i < r.images.size(); ++i) {
      if (r.images[i].is_zero()) continue;
      GroupElement want = r.stack.pic().zero();
      const GroupElement& d = p.target.ring.generator(i).degree;
      for (std::size_t k = 0; k < d.rank(); ++k) want += d[k] * r.class_map[k];
      CHECK(r.stack.pic().equal(r.stack.ring.degree_of(r.images[i]), want));
    }
  }
}

TEST_CASE("identity with Pic equal to Cl needs no steps") {
  const GradedRing y = polynomial_ring(FgAbelianGroup::free(2), {element({1, 0}), element({0, 1})});
  TargetData t{y, {element({1, 0}), element({0, 1})}, {}};
  BaseMorphism b;
  b.images = {{Monomial::variable(0), y.variable(0)}, {Monomial::variable(1), y.variable(1)}};
  b.pic_images = {element({1, 0}), element({0, 1})};
  const LiftResult r = run_cox_lift(t, canonical_stack(y, {}), b);
  CHECK(r.steps.empty());
  CHECK(r.images[0] == y.variable(0));
  CHECK(r.images[1] == y.variable(1));
  CHECK(r.verification.passed());
}

TEST_CASE("verification catches tampered results") {
  const io::Problem a1 = load("a1_into_half11.json");
  LiftResult r = lift(a1);
  r.class_map = {r.stack.pic().zero()};
  const VerificationReport bad = verify_lift(a1.target, a1.source, a1.base, r);
  CHECK_FALSE(bad.check("homogeneity").passed);
  REQUIRE_FALSE(bad.check("homogeneity").failures.empty());
  CHECK(bad.check("homogeneity").failures[0].find("x") != std::string::npos);

  // images scaled by E(3) on both generators: x*y no longer maps to v
  const io::Problem mu3 = load("mu3.json");
  LiftResult m = lift(mu3);
  const CycScalar z = m.stack.ring.zeta(1);
  m.images = {z * m.images[0], z * m.images[1]};
  const VerificationReport rep = verify_lift(mu3.target, mu3.source, mu3.base, m);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.check("restriction").passed);
  CHECK(rep.check("homogeneity").passed);
}

TEST_CASE("factoring through other stacks") {
  const io::Problem a1 = load("a1_into_half11.json");
  const LiftResult r = lift(a1);
  const Factoring self = check_factors_through(lift_data(r), lift_data(r));
  CHECK(self.factors);
  for (std::size_t i = 0; i < r.stack.ring.num_generators(); ++i)
    CHECK(r.stack.ring.normal_form(self.ring_images[i]) == r.stack.ring.normal_form(r.stack.ring.variable(i)));

  // a fourth root at the origin factors over the square root
  const MdStack base = canonical_stack(a1.source.ring, {});
  const MdStack sq = root_divisor(base, base.ring.variable("t"), 2, "z");
  const MdStack fourth = root_divisor(base, base.ring.variable("t"), 4, "w");
  const Factoring f = check_factors_through(LiftData{sq, {}, {}}, LiftData{fourth, {}, {}});
  REQUIRE(f.factors);
  CHECK(fourth.ring.format(fourth.ring.normal_form(f.ring_images[sq.ring.index_of("z")])) == "w^2");
  const Factoring back = check_factors_through(LiftData{fourth, {}, {}}, LiftData{sq, {}, {}});
  CHECK_FALSE(back.factors);
}

TEST_CASE("minimality witnesses") {
  for (const char* name : {"a1_into_half11.json", "point_into_half11.json", "mu3.json", "quarter12.json"}) {
    CAPTURE(name);
    const LiftResult r = lift(load(name));
    // one more line bundle root on top still receives a map from the lift
    LiftData extra = lift_data(r);
    extra.stack = root_line_bundle(r.stack, r.stack.pic().zero(), 2);
    for (auto& c : *extra.class_map) c = c.padded(extra.stack.pic().ambient_rank());
    CHECK(check_factors_through(lift_data(r), extra).factors);
  }
  // dropping the only root of the origin lift leaves a stack it does not factor over
  const io::Problem p = load("point_into_half11.json");
  const LiftResult r = lift(p);
  const LiftData bare{p.source, std::vector<RingElement>(2), std::vector<GroupElement>{p.source.pic().zero()}};
  CHECK_FALSE(check_factors_through(bare, lift_data(r)).factors);
}

TEST_CASE("decomposition") {
  const GradedRing t = load("a1_into_half11.json").source.ring;
  const MdStack base = canonical_stack(t, {});
  CHECK(decompose_as_roots(base).lift.stack.tower.empty());

  const Decomposition d = decompose_as_roots(root_divisor(base, t.variable("t"), 2, "z"));
  CHECK(d.pic_matches);
  CHECK(d.degrees_match);
  CHECK(io::describe_tower(d.lift.stack) == "[divisor root: t, order 2]");

  const GradedRing p1 = polynomial_ring(FgAbelianGroup::free(1), {element({1}), element({1})});
  const MdStack proj = canonical_stack(p1, {p1.variable(0), p1.variable(1)});
  const Decomposition l = decompose_as_roots(root_line_bundle(proj, element({0}), 3));
  REQUIRE(l.lift.stack.tower.size() == 1);
  CHECK(l.lift.stack.tower[0].kind == RootStep::Kind::line_bundle);
  CHECK(l.lift.stack.tower[0].order == 3);
  CHECK(l.pic_matches);
}

TEST_CASE("inconsistent unit data aborts") {
  const io::Problem p = load("mu3.json");
  const GradedRing& S = p.source.ring;
  GradedRing bad(S.grading(), S.field());
  for (const auto& g : S.generators()) bad.add_generator(g.name, g.degree, g.weight);
  for (const auto& rule : S.rules()) bad.add_rule(rule.lhs, rule.rhs);
  DeclaredFactorization d = S.declared_factorizations().at(0);
  d.unit = S.scalar(2);
  bad.declare_factorization(d);
  CHECK_THROWS_WITH_AS(run_cox_lift(p.target, canonical_stack(bad, {}), p.base, p.options),
                       doctest::Contains("x*y"), InputError);
}
