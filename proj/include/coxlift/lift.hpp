#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlift/abgroup.hpp"
#include "coxlift/gring.hpp"
#include "coxlift/mdstack.hpp"

namespace coxlift {

/// Cox ring data of the target Y: its ring is graded by Cl(Y) and its rules
/// are the relations of R(Y).
struct TargetData {
  GradedRing ring;
  /// Generators of Pic(Y) inside Cl(Y).
  std::vector<GroupElement> pic_generators;
  std::vector<RingElement> irrelevant;

  const FgAbelianGroup& class_group() const { return ring.grading(); }
};

/// The homogeneous map R(Y; Pic(Y)) -> R(X) on algebra generators, plus the
/// induced map Pic(Y) -> Cl(X) given on pic_generators.
struct BaseMorphism {
  std::vector<std::pair<Monomial, RingElement>> images;
  std::vector<GroupElement> pic_images;
};

/// Generator names to use when a root with this section and order is needed.
struct AnticipatedRoot {
  std::string name;
  RingElement section;
  unsigned long order = 0;
};

struct LiftOptions {
  std::vector<AnticipatedRoot> anticipated_roots;
};

/// A homomorphism K -> Pic given on generators of a subgroup K of Cl(Y).
struct DegreeMap {
  std::vector<GroupElement> sources;
  std::vector<GroupElement> images;

  /// Throws InvariantViolation if c is not in the subgroup.
  GroupElement apply(const FgAbelianGroup& cl, const GroupElement& c, std::size_t target_rank) const;
};

struct KernelConstraint {
  /// Exponent vector c over the generators with nonzero pullback.
  std::vector<Integer> coefficients;
  Monomial monomial;
  /// alpha_c: sum c_j alpha_j must equal this modulo p.
  Integer value;
  bool exponents_ok = false;
  bool unit_ok = false;
};

struct LiftStep {
  enum class Kind { divisor, line_bundle };
  Kind kind = Kind::divisor;
  GroupElement extension_class;
  unsigned long prime = 0;
  std::vector<Monomial> coset_generators;
  std::vector<GroupElement> coset_classes;
  std::vector<unsigned long> cosets;
  std::vector<RingElement> pullbacks;

  std::vector<RingElement> factors;
  /// exponents[l][j]: multiplicity of factor l in pullback j
  std::vector<std::vector<unsigned long>> exponents;
  std::vector<unsigned long> root_orders;
  std::vector<std::string> new_generators;
  /// Generators (indices into coset_generators) entering the alpha system.
  std::vector<std::size_t> active;
  std::vector<KernelConstraint> constraints;
  std::vector<Integer> alpha;
  Integer solution_count = 1;

  GroupElement bundle_class;
  GroupElement delta;
  std::vector<Monomial> level_generators;
};

struct VerificationReport {
  struct Check {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;
  };
  std::vector<Check> checks;

  bool passed() const;
  const Check& check(const std::string& name) const;
};

struct LiftResult {
  MdStack stack;
  /// One image per generator of R(Y).
  std::vector<RingElement> images;
  /// Image in Pic of each ambient generator of Cl(Y).
  std::vector<GroupElement> class_map;
  std::vector<LiftStep> steps;
  std::vector<std::pair<Monomial, RingElement>> table;
  VerificationReport verification;
};

/// Monomials in the generators of R(Y) with degree in K generating R(Y; K).
/// Throws InputError("not Q-factorial data") if Cl(Y)/K is infinite.
std::vector<Monomial> pic_level_generators(const TargetData& target, const std::vector<GroupElement>& k_gens);

struct ExtensionChoice {
  GroupElement cls;
  unsigned long prime = 0;
};
ExtensionChoice choose_extension_class(const TargetData& target, const std::vector<GroupElement>& k_gens);

struct CosetGenerator {
  Monomial monomial;
  GroupElement cls;
  unsigned long coset = 0;
};
std::vector<CosetGenerator> coset_generators(const TargetData& target, const std::vector<GroupElement>& k_gens,
                                             const ExtensionChoice& ext);

/// Value of the tabulated map on a monomial of the target, decomposed into
/// table keys; two decompositions are cross-checked in `ring`.
RingElement evaluate_in_table(const GradedRing& ring, const std::vector<std::pair<Monomial, RingElement>>& table,
                              const Monomial& m, const GradedRing& target_ring);

LiftResult run_cox_lift(const TargetData& target, const MdStack& source, const BaseMorphism& base,
                        const LiftOptions& options = {});

VerificationReport verify_lift(const TargetData& target, const MdStack& source, const BaseMorphism& base,
                               const LiftResult& result);

/// A stack with (optionally) its homogeneous map from R(Y) and its group map Cl(Y) -> Pic.
struct LiftData {
  MdStack stack;
  std::optional<std::vector<RingElement>> images;
  std::optional<std::vector<GroupElement>> class_map;
};
LiftData lift_data(const LiftResult& r);

struct Factoring {
  bool factors = false;
  std::string obstruction;
  /// Image of each generator of the first stack's Cox ring in the second's.
  std::vector<RingElement> ring_images;
  /// Image of each ambient generator of the first stack's Pic.
  std::vector<GroupElement> group_images;
};

/// Whether `candidate` maps to `lift` compatibly: builds Theta: R(lift) -> R(candidate)
/// by replaying the tower of `lift`. Both stacks must share their base ring.
Factoring check_factors_through(const LiftData& lift, const LiftData& candidate);

struct Decomposition {
  LiftResult lift;
  bool pic_matches = false;
  bool degrees_match = false;
  std::string detail;
};

/// Recovers a stack as roots over its canonical stack by lifting the identity.
Decomposition decompose_as_roots(const MdStack& stack, const LiftOptions& options = {});

/// e.g. "a(x) + a(y) = 0 (mod 3)"
std::string describe_constraint(const GradedRing& target_ring, const LiftStep& step, const KernelConstraint& c);

}  // namespace coxlift
