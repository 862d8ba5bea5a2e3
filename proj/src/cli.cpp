#include "coxlift/cli.hpp"

#include <fstream>
#include <numeric>
#include <ostream>

#include "coxlift/errors.hpp"
#include "coxlift/io.hpp"

namespace coxlift {

namespace {

using io::json;

void emit(const CliOptions& o, const CommandOutput& r, std::ostream& out) {
  const std::string text = r.document.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
  }
  if (o.log == "human" || o.log == "both") out << r.human;
  if (o.log == "json" || (o.log == "both" && o.out.empty())) out << text;
}

// Errors in a file get the path in front.
template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

CommandOutput lift_command(const json& problem, std::size_t step_cap, unsigned long spotcheck_bound) {
  const io::Problem p = io::parse_problem(problem, step_cap);
  const LiftResult r = run_cox_lift(p.target, p.source, p.base, p.options);
  CommandOutput c;
  c.document = io::result_to_json(p, r);
  const SpotcheckResult sc = graded_factorial_spotcheck(r.stack, spotcheck_bound);
  c.document["spotcheck"] = {{"bound", spotcheck_bound},
                             {"passed", sc.passed},
                             {"monomials", sc.monomials_checked},
                             {"counterexample", sc.counterexample}};
  c.human = io::human_log(p, r);
  c.human += "spotcheck (bound " + std::to_string(spotcheck_bound) + "): " +
             (sc.passed ? std::string("ok") : "failed, " + sc.counterexample) + "\n";
  c.status = r.verification.passed() ? 0 : 1;
  return c;
}

CommandOutput verify_command(const json& problem, const json& result, std::size_t step_cap) {
  const io::Problem p = io::parse_problem(problem, step_cap);
  const LiftResult r = io::parse_result(p, result);
  const VerificationReport rep = verify_lift(p.target, p.source, p.base, r);
  CommandOutput c;
  for (const auto& ch : rep.checks) {
    c.human += ch.name + (ch.passed ? ": ok\n" : ": FAILED\n");
    for (const auto& f : ch.failures) c.human += "  " + f + "\n";
  }
  c.document = {{"schema", "coxlift/1"}, {"command", "verify"}, {"verification", io::report_to_json(rep)}};
  c.status = rep.passed() ? 0 : 1;
  return c;
}

CommandOutput decompose_command(const json& j, std::size_t step_cap) {
  if (j.value("schema", std::string()) != "coxlift/1") throw InputError("missing schema \"coxlift/1\"");
  if (!j.contains("stack")) throw InputError("missing \"stack\"");
  unsigned long n = j.value("cyclotomic_order", 1UL);
  for (const auto& t : j.at("stack").value("tower", json::array())) n = std::lcm(n, t.value("order", 1UL));
  const MdStack stack = io::parse_stack(j.at("stack"), cyclotomic_field(n), step_cap);
  LiftOptions opts;
  if (j.contains("options"))
    opts.anticipated_roots =
        io::parse_anticipated_roots(j.at("options").value("anticipated_roots", json::array()), stack.base_ring);
  const Decomposition d = decompose_as_roots(stack, opts);

  CommandOutput c;
  c.human = "input tower: " + (stack.tower.empty() ? "(empty)" : io::describe_tower(stack)) + "\n";
  c.human += "recovered tower: " + (d.lift.stack.tower.empty() ? "(empty)" : io::describe_tower(d.lift.stack)) + "\n";
  c.human += "Pic: " + d.lift.stack.pic().to_string() + "\n";
  c.human += std::string("Pic matches: ") + (d.pic_matches ? "yes" : "no") + ", degrees match: " +
             (d.degrees_match ? "yes" : "no") + "\n";
  c.document = {{"schema", "coxlift/1"},
                {"command", "decompose"},
                {"stack", io::stack_to_json(d.lift.stack)},
                {"pic_matches", d.pic_matches},
                {"degrees_match", d.degrees_match},
                {"detail", d.detail},
                {"verification", io::report_to_json(d.lift.verification)}};
  c.status = d.pic_matches && d.degrees_match && d.lift.verification.passed() ? 0 : 1;
  return c;
}

CommandOutput factor_command(const json& j, const std::string& element, std::size_t step_cap) {
  if (element.empty()) throw InputError("factor needs an element");
  GradedRing ring;
  if (j.contains("source")) {
    ring = io::parse_problem(j, step_cap).source.ring;
  } else if (j.contains("ring")) {
    ring = io::parse_ring(j.at("ring"), cyclotomic_field(j.value("cyclotomic_order", 1UL)));
    ring.set_step_cap(step_cap);
  } else {
    throw InputError("needs \"ring\" or a problem with \"source\"");
  }
  const RingElement e = io::parse_element(ring, element);
  const Factorization f = ring.h_factorize(e);
  CommandOutput c;
  c.human = f.unit.to_string();
  json factors = json::array();
  for (const auto& [g, k] : f.factors) {
    c.human += " * (" + ring.format(g) + ")" + (k > 1 ? "^" + std::to_string(k) : "");
    factors.push_back({ring.format(g), k});
  }
  c.human += "\n";
  c.document = {{"schema", "coxlift/1"},
                {"command", "factor"},
                {"element", ring.format(ring.normal_form(e))},
                {"unit", io::scalar_to_json(f.unit)},
                {"factors", factors}};
  return c;
}

CommandOutput snf_command(const json& mj) {
  const IntegerMatrix m = io::parse_matrix(mj);
  const FgAbelianGroup g(m.cols(), m);
  const SmithForm s = smith_normal_form(m);
  json diag = json::array();
  for (std::size_t i = 0; i < std::min(s.S.rows(), s.S.cols()); ++i) diag.push_back(s.S(i, i).get_str());
  CommandOutput c;
  c.human = g.to_string() + "\n";
  c.document = {{"schema", "coxlift/1"}, {"command", "snf"}, {"group", io::group_to_json(g)}, {"diagonal", diag}};
  return c;
}

int run_command(const CliOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.log != "human" && o.log != "json" && o.log != "both") throw InputError("--log must be human, json or both");
    CommandOutput r;
    if (o.command == "lift") {
      const json problem = io::read_json(o.input);
      r = with_path(o.input, [&] { return lift_command(problem, o.step_cap, o.spotcheck_bound); });
    } else if (o.command == "verify") {
      if (o.result.empty()) throw InputError("verify needs --result <path>");
      const json problem = io::read_json(o.input);
      const json result = io::read_json(o.result);
      r = with_path(o.input, [&] { return verify_command(problem, result, o.step_cap); });
    } else if (o.command == "decompose") {
      const json doc = io::read_json(o.input);
      r = with_path(o.input, [&] { return decompose_command(doc, o.step_cap); });
    } else if (o.command == "factor") {
      const json doc = io::read_json(o.input);
      r = with_path(o.input, [&] { return factor_command(doc, o.element, o.step_cap); });
    } else if (o.command == "snf") {
      if (o.matrix.empty()) throw InputError("snf needs --matrix \"[[...], ...]\"");
      json mj;
      try {
        mj = json::parse(o.matrix);
      } catch (const json::parse_error& e) {
        throw InputError(std::string("bad matrix: ") + e.what());
      }
      r = snf_command(mj);
    } else {
      throw InputError("unknown command \"" + o.command + "\"");
    }
    emit(o, r, out);
    return r.status;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const RewriteDiverged& e) {
    err << "error: " << e.what() << "\n" << e.trace() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coxlift
