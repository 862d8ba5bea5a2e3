#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxlift/lift.hpp"

namespace coxlift::io {

using json = nlohmann::json;

/// Parses sums of products such as "x^2*y - 3/2*E(3)^2*z + (E(3) + 1)*u".
RingElement parse_element(const GradedRing& ring, const std::string& text);
Monomial parse_monomial(const GradedRing& ring, const std::string& text);

/// "p/q", an integer, {"zeta": [k, n]} or {"order": n, "coefficients": [...]}.
CycScalar parse_scalar(const CycField& field, const json& j);
json scalar_to_json(const CycScalar& c);

Rational parse_rational(const json& j);
GroupElement parse_group_element(const json& j, std::size_t rank);
json group_element_to_json(const GroupElement& g);
IntegerMatrix parse_matrix(const json& j);

/// {"invariants": [...], "free": k} or {"rank": r, "relations": [[...], ...]}.
FgAbelianGroup parse_group(const json& j);
json group_to_json(const FgAbelianGroup& g);

/// Generators, grading, rules, declared irreducibles and factorizations.
GradedRing parse_ring(const json& j, const CycField& field);
json ring_to_json(const GradedRing& ring);

/// Base ring plus a tower replayed on top of it.
MdStack parse_stack(const json& j, const CycField& field, std::size_t step_cap);
json stack_to_json(const MdStack& s);
json tower_to_json(const MdStack& s);

/// [{"name", "section", "order"}, ...]; sections may use earlier names.
std::vector<AnticipatedRoot> parse_anticipated_roots(const json& list, const GradedRing& base);

struct Problem {
  std::string name;
  unsigned long cyclotomic_order = 1;
  TargetData target;
  MdStack source;
  BaseMorphism base;
  LiftOptions options;
  std::size_t step_cap = 10000;
  unsigned long spotcheck_bound = 4;
  /// Hypotheses on the base that cannot be checked here, as declared by the input.
  json assertions;
  /// The document the problem was read from.
  json document;
};

Problem parse_problem(const json& j, std::size_t step_cap = 10000);
Problem load_problem(const std::string& path, std::size_t step_cap = 10000);
json read_json(const std::string& path);

json step_to_json(const GradedRing& target_ring, const LiftStep& step);
json report_to_json(const VerificationReport& r);
json result_to_json(const Problem& p, const LiftResult& r);
/// Rebuilds a lift result from result_to_json output.
LiftResult parse_result(const Problem& p, const json& j);

std::string describe_tower(const MdStack& s);
std::string human_log(const Problem& p, const LiftResult& r);

}  // namespace coxlift::io
