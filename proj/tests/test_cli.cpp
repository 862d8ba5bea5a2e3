#include <doctest.h>

#include <functional>
#include <fstream>
#include <sstream>

#include "coxlift/cli.hpp"
#include "coxlift/errors.hpp"
#include "support.hpp"

using namespace coxlift;
using namespace coxlift::testing;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(CliOptions o) {
  std::ostringstream out, err;
  const int status = run_command(o, out, err);
  return {status, out.str(), err.str()};
}

CliOptions lift_options(const std::string& problem) {
  CliOptions o;
  o.command = "lift";
  o.input = problem_path(problem);
  o.log = "human";
  return o;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(COXLIFT_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

io::json mutated(const std::string& problem, const std::function<void(io::json&)>& edit) {
  io::json j = io::read_json(problem_path(problem));
  edit(j);
  return j;
}

}  // namespace

TEST_CASE("problem loading") {
  const io::Problem p = load("a1_into_half11.json");
  CHECK(p.target.ring.num_generators() == 2);
  CHECK(p.target.class_group() == FgAbelianGroup::cyclic(2));
  CHECK(p.base.images.size() == 3);
  CHECK(p.cyclotomic_order % 2 == 0);

  CHECK_THROWS_AS(io::parse_problem(mutated("a1_into_half11.json",
                                            [](io::json& j) { j["target"]["ring"]["generators"] = io::json::array(); })),
                  InputError);
  CHECK_THROWS_WITH_AS(io::parse_problem(mutated("a1_into_half11.json", [](io::json& j) { j.erase("schema"); })),
                       doctest::Contains("schema"), InputError);
  CHECK_THROWS_WITH_AS(io::parse_problem(mutated("a1_into_half11.json",
                                                 [](io::json& j) {
                                                   j["base_morphism"]["images"][0]["image"] = "q";
                                                 })),
                       doctest::Contains("unknown generator 'q'"), InputError);
  const io::json wrong_rule = mutated("mu3.json", [](io::json& j) {
    j["source"]["ring"]["rules"][0]["rhs"] = "u*w^2";
    j["source"]["ring"]["generators"][1]["weight"] = 2;
  });
  CHECK_THROWS_WITH_AS(io::parse_problem(wrong_rule), doctest::Contains("declared factorization of v fails verification"),
                       InputError);
}

TEST_CASE("elements parse and print") {
  const io::Problem p = load("mu3.json");
  const GradedRing& R = p.source.ring;
  const RingElement e = io::parse_element(R, "2*u*w - 1/3*v^2 + E(3)*u");
  CHECK(io::parse_element(R, R.format(e)) == e);
  CHECK(io::parse_element(R, "(u + w)^2") == io::parse_element(R, "u^2 + 2*u*w + w^2"));
  CHECK_THROWS_AS(io::parse_element(R, "u +"), InputError);
  CHECK_THROWS_AS(io::parse_element(R, "E(4)"), InputError);
  CHECK_THROWS_AS(io::parse_rational(io::json("1/0")), InputError);
  CHECK(io::parse_rational(io::json("4/6")) == Rational(2, 3));
  for (const auto& s : {R.scalar(Rational(-3, 4)), R.zeta(2), R.zeta(1) + R.scalar(5)})
    CHECK(io::parse_scalar(R.field(), io::scalar_to_json(s)) == s);
}

TEST_CASE("serialization round trips") {
  for (const char* name : {"a1_into_half11.json", "point_into_half11.json", "mu3.json", "mu3_zero.json",
                           "quarter12.json"}) {
    CAPTURE(name);
    const io::Problem p = load(name);
    const io::json ring = io::ring_to_json(p.source.ring);
    CHECK(io::ring_to_json(io::parse_ring(ring, p.source.ring.field())) == ring);
    const io::json group = io::group_to_json(p.target.class_group());
    CHECK(io::parse_group(group) == p.target.class_group());

    const LiftResult r = run_cox_lift(p.target, p.source, p.base, p.options);
    const io::json doc = io::result_to_json(p, r);
    const LiftResult back = io::parse_result(p, doc);
    CHECK(io::stack_to_json(back.stack) == io::stack_to_json(r.stack));
    CHECK(verify_lift(p.target, p.source, p.base, back).passed());
    const MdStack replayed = replay_tower(canonical_stack(r.stack.base_ring, r.stack.irrelevant), r.stack.tower);
    CHECK(io::stack_to_json(replayed) == io::stack_to_json(r.stack));
    // output is deterministic
    CHECK(doc.dump() == io::result_to_json(p, run_cox_lift(p.target, p.source, p.base, p.options)).dump());
  }
}

TEST_CASE("lift command") {
  const Run a1 = run(lift_options("a1_into_half11.json"));
  CHECK(a1.status == 0);
  CHECK(a1.out.find("[divisor root: t, order 2]") != std::string::npos);
  CHECK(a1.out.find("x -> z, y -> 0") != std::string::npos);

  const Run mu3 = run(lift_options("mu3.json"));
  CHECK(mu3.status == 0);
  CHECK(mu3.out.find("a(x) + a(y) = 0 (mod 3)") != std::string::npos);
  CHECK(mu3.out.find("3 solutions, chose (0,0)") != std::string::npos);

  CliOptions js = lift_options("a1_into_half11.json");
  js.log = "json";
  const io::json doc = io::json::parse(run(js).out);
  CHECK(doc.at("schema") == "coxlift/1");
  CHECK(doc.at("images").at("x") == "z");
  CHECK(doc.at("verification").at("passed") == true);
}

TEST_CASE("verify command") {
  CliOptions o = lift_options("a1_into_half11.json");
  o.log = "json";
  o.out = std::string(COXLIFT_TEST_TMP) + "/a1_result.json";
  REQUIRE(run(o).status == 0);

  CliOptions v;
  v.command = "verify";
  v.input = problem_path("a1_into_half11.json");
  v.result = o.out;
  v.log = "human";
  const Run good = run(v);
  CHECK(good.status == 0);
  CHECK(good.out.find("homogeneity: ok") != std::string::npos);

  io::json tampered = io::read_json(o.out);
  tampered["class_map"] = io::json::array({io::json::array({0})});
  v.result = temp_file("a1_tampered.json", tampered.dump());
  const Run bad = run(v);
  CHECK(bad.status == 1);
  CHECK(bad.out.find("homogeneity: FAILED") != std::string::npos);
}

TEST_CASE("decompose, factor and snf commands") {
  CliOptions d;
  d.command = "decompose";
  d.input = problem_path("half_root_stack.json");
  d.log = "human";
  const Run half = run(d);
  CHECK(half.status == 0);
  CHECK(half.out.find("recovered tower: [divisor root: t, order 2]") != std::string::npos);

  CliOptions f;
  f.command = "factor";
  f.input = problem_path("mu3.json");
  f.element = "u*w";
  f.log = "human";
  const Run fw = run(f);
  CHECK(fw.status == 0);
  CHECK(fw.out.find("(u)") != std::string::npos);
  CHECK(fw.out.find("(w)") != std::string::npos);

  CliOptions s;
  s.command = "snf";
  s.matrix = "[[2]]";
  s.log = "human";
  CHECK(run(s).out == "Z/2\n");
  s.matrix = "[[2,0],[0,3]]";
  CHECK(run(s).out == "Z/6\n");
  s.matrix = "[[0]]";
  CHECK(run(s).out == "Z\n");
}

TEST_CASE("exit codes for bad input") {
  CliOptions missing = lift_options("does_not_exist.json");
  const Run m = run(missing);
  CHECK(m.status == 2);
  CHECK_FALSE(m.err.empty());

  CliOptions s;
  s.command = "snf";
  s.matrix = "[[1,";
  CHECK(run(s).status == 2);

  CliOptions f;
  f.command = "factor";
  f.input = problem_path("a1_into_half11.json");
  f.element = "t^2 + 1";
  CHECK(run(f).status == 0);
  f.element = "t +";
  CHECK(run(f).status == 2);

  const std::string broken = temp_file("broken.json", "{\"schema\": \"coxlift/1\", \"target\": 3}");
  CliOptions b;
  b.command = "lift";
  b.input = broken;
  CHECK(run(b).status == 2);
}
