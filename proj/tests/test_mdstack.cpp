#include <doctest.h>

#include "coxlift/errors.hpp"
#include "support.hpp"

using namespace coxlift;
using namespace coxlift::testing;

namespace {

GradedRing line() {
  GradedRing r(FgAbelianGroup::free(0), cyclotomic_field(6));
  r.add_generator("t", GroupElement());
  return r;
}

}  // namespace

TEST_CASE("canonical stacks") {
  const MdStack a1 = canonical_stack(line(), {});
  CHECK(a1.tower.empty());
  CHECK(a1.pic().is_trivial());

  const GradedRing y = polynomial_ring(FgAbelianGroup::cyclic(2), {element({1}), element({1})});
  const MdStack half = canonical_stack(y, {});
  CHECK(half.pic() == FgAbelianGroup::cyclic(2));
  CHECK(half.ring.num_generators() == 2);

  const MdStack point = canonical_stack(GradedRing(), {});
  CHECK(point.pic().is_trivial());
  CHECK(point.ring.num_generators() == 0);

  CHECK_THROWS_AS(canonical_stack(y, {y.variable(0) + y.variable(1, 2)}), InputError);
}

TEST_CASE("divisor roots") {
  const MdStack a1 = canonical_stack(line(), {});
  const MdStack r = root_divisor(a1, a1.ring.variable("t"), 2, "z");
  CHECK(r.pic() == FgAbelianGroup::cyclic(2));
  CHECK(r.ring.format(r.ring.normal_form(r.ring.variable("z", 2))) == "t");
  REQUIRE(r.tower.size() == 1);
  CHECK(r.tower[0].kind == RootStep::Kind::divisor);
  CHECK(r.tower[0].generator == "z");
  CHECK(r.pic().equal(Integer(2) * r.ring.generator(r.ring.index_of("z")).degree,
                      r.ring.degree_of(r.ring.variable("t"))));

  const MdStack alias = root_divisor(a1, a1.ring.variable("t"), 1, "s");
  CHECK(alias.pic() == a1.pic());
  CHECK(alias.ring.normal_form(alias.ring.variable("s")) == alias.ring.normal_form(alias.ring.variable("t")));
  CHECK(alias.tower.size() == 1);

  CHECK_THROWS_AS(root_divisor(a1, RingElement(), 2, "z"), InputError);
  CHECK_THROWS_AS(root_divisor(a1, a1.ring.variable("t"), 2, "t"), InputError);
  CHECK_THROWS_AS(root_divisor(a1, a1.ring.variable("t", 2), 2, "z"), NonPrimeRoot);
}

TEST_CASE("cube roots of u and w") {
  GradedRing r(FgAbelianGroup::free(0), cyclotomic_field(3));
  r.add_generator("u", GroupElement());
  r.add_generator("v", GroupElement());
  r.add_generator("w", GroupElement());
  r.add_rule(Monomial::variable(1, 3), r.variable("u") * r.variable("w"));
  r.declare_irreducible(r.variable("u"));
  r.declare_irreducible(r.variable("w"));
  const MdStack base = canonical_stack(r, {});
  const MdStack one = root_divisor(base, r.variable("u"), 3, "z1");
  const MdStack two = root_divisor(one, one.ring.variable("w"), 3, "z2");
  CHECK(two.ring.format(two.ring.normal_form(two.ring.variable("z1", 3))) == "u");
  CHECK(two.ring.format(two.ring.normal_form(two.ring.variable("z2", 3))) == "w");
  CHECK(two.pic() == FgAbelianGroup::from_invariants({3, 3}, 0));
}

TEST_CASE("line bundle roots") {
  const MdStack point = canonical_stack(GradedRing(), {});
  const MdStack bmu2 = root_line_bundle(point, GroupElement(), 2);
  CHECK(bmu2.pic() == FgAbelianGroup::cyclic(2));
  CHECK(root_line_bundle(point, GroupElement(), 1).pic().is_trivial());

  const MdStack a1 = canonical_stack(line(), {});
  const MdStack r3 = root_line_bundle(a1, GroupElement(), 3);
  CHECK(r3.pic() == FgAbelianGroup::cyclic(3));
  CHECK(r3.ring.num_generators() == 1);
  CHECK(r3.ring.rules().empty());

  // term data is untouched, only degrees change
  const GradedRing p1 = polynomial_ring(FgAbelianGroup::free(1), {element({1}), element({1})});
  const MdStack base = canonical_stack(p1, {p1.variable(0), p1.variable(1)});
  const MdStack lb = root_line_bundle(base, element({1}), 2);
  const RingElement e = p1.variable(0, 3) - p1.scalar(2) * p1.variable(0) * p1.variable(1, 2);
  CHECK(lb.ring.normal_form(e) == base.ring.normal_form(e));
  CHECK(lb.irrelevant.size() == 2);
  CHECK(lb.pic() == FgAbelianGroup::free(1));
}

TEST_CASE("tower replay") {
  std::mt19937 rng(21);
  for (int t = 0; t < 15; ++t) {
    const RandomTower rt = random_tower(rng);
    const MdStack again = replay_tower(canonical_stack(rt.stack.base_ring, rt.stack.irrelevant), rt.stack.tower);
    CHECK(io::stack_to_json(again) == io::stack_to_json(rt.stack));
  }
}

TEST_CASE("factoriality spot check") {
  const GradedRing y = polynomial_ring(FgAbelianGroup::cyclic(2), {element({1}), element({1})});
  CHECK(graded_factorial_spotcheck(canonical_stack(y, {}), 4).passed);

  const MdStack forced = root_divisor(canonical_stack(y, {}), y.variable(0) * y.variable(1), 2, "z", true);
  const SpotcheckResult bad = graded_factorial_spotcheck(forced, 4);
  CHECK_FALSE(bad.passed);
  CHECK(bad.counterexample.find("z^2") != std::string::npos);
  CHECK(bad.counterexample.find("x1*x2") != std::string::npos);

  const MdStack a1 = canonical_stack(line(), {});
  CHECK(graded_factorial_spotcheck(root_divisor(a1, a1.ring.variable("t"), 2, "z"), 4).passed);
}

TEST_CASE("rooting the reducible fiber product image is rejected") {
  // k[x, y] with the pullback xy of two coordinate axes
  const GradedRing y = polynomial_ring(FgAbelianGroup::free(0), {GroupElement(), GroupElement()});
  const MdStack s = canonical_stack(y, {});
  CHECK_THROWS_AS(root_divisor(s, y.variable(0) * y.variable(1), 2, "z"), NonPrimeRoot);
}
