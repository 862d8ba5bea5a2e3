#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxlift/abgroup.hpp"
#include "coxlift/gring.hpp"

namespace coxlift {

struct RootStep {
  enum class Kind { divisor, line_bundle };
  Kind kind = Kind::divisor;
  unsigned long order = 1;
  /// divisor roots: the section and the adjoined generator
  RingElement section;
  std::string generator;
  /// line bundle roots: the class in Pic at the time of rooting
  GroupElement bundle_class;
  /// Class in the target class group whose sections caused this step, if any.
  std::optional<GroupElement> lifted_class;
};

/// Cox ring, grading group and irrelevant ideal of an MD-quotient stack,
/// together with the root constructions that produced it from its base.
struct MdStack {
  GradedRing ring;
  std::vector<RingElement> irrelevant;
  std::vector<RootStep> tower;
  /// Pullback of classes from the coarse space: images of the generators of Cl(X) in Pic.
  std::optional<std::vector<GroupElement>> coarse_pullback;
  /// Cox ring of the coarse space the tower starts from.
  GradedRing base_ring;

  const FgAbelianGroup& pic() const { return ring.grading(); }
};

MdStack canonical_stack(const GradedRing& cox_ring, const std::vector<RingElement>& irrelevant);

/// Adjoins z with z^order = section. Unless forced, the section must be
/// h-irreducible (a single factor of multiplicity one).
MdStack root_divisor(const MdStack& stack, const RingElement& section, unsigned long order, const std::string& name,
                     bool force = false);

MdStack root_line_bundle(const MdStack& stack, const GroupElement& bundle_class, unsigned long order);

MdStack replay_tower(const MdStack& base, const std::vector<RootStep>& tower);

struct SpotcheckResult {
  bool passed = true;
  std::string counterexample;
  std::size_t monomials_checked = 0;
};

/// Searches monomials of total degree <= bound for two with the same normal
/// form but different h-irreducible factor multisets.
SpotcheckResult graded_factorial_spotcheck(const MdStack& stack, unsigned long degree_bound);

}  // namespace coxlift
