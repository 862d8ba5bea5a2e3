#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlift/abgroup.hpp"
#include "coxlift/cyclo.hpp"

namespace coxlift {

/// Exponent vector; trailing zeros are never stored, so generator indices can
/// grow without touching existing monomials.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned long> exponents);
  static Monomial variable(std::size_t i, unsigned long e = 1);

  unsigned long operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  /// Index one past the last generator with a nonzero exponent.
  std::size_t support() const { return exps_.size(); }
  const std::vector<unsigned long>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  unsigned long total_degree() const;

  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(o).
  Monomial quotient(const Monomial& o) const;
  Monomial pow(unsigned long e) const;

  /// Lexicographic on exponent vectors.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned long> exps_;
};

class RingElement {
 public:
  using Terms = std::map<Monomial, CycScalar>;

  RingElement() = default;
  explicit RingElement(const CycScalar& c) : RingElement(Monomial(), c) {}
  RingElement(const Monomial& m, const CycScalar& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_term() const { return terms_.size() == 1; }
  std::size_t support() const;
  /// Term with the lexicographically largest monomial; element must be nonzero.
  const std::pair<const Monomial, CycScalar>& leading() const { return *terms_.rbegin(); }

  void add_term(const Monomial& m, const CycScalar& c);

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(RingElement a);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const CycScalar& c, const RingElement& a);
  RingElement pow(unsigned long e) const;
  /// Multiply every monomial by m.
  RingElement shifted(const Monomial& m) const;

  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  Terms terms_;
};

struct Generator {
  std::string name;
  GroupElement degree;
  /// Only used by the term order.
  Rational weight{1};
};

struct RewriteRule {
  Monomial lhs;
  RingElement rhs;
};

/// element = unit * prod factor_i^{e_i}, factors named by generator.
struct DeclaredFactorization {
  RingElement element;
  CycScalar unit;
  std::vector<std::pair<std::string, unsigned long>> factors;
};

struct RootRelation {
  std::size_t generator;
  unsigned long order;
  RingElement section;
};

struct Factorization {
  CycScalar unit;
  std::vector<std::pair<RingElement, unsigned long>> factors;
};

struct FactorizationCheck {
  bool passed = false;
  /// Power at which both sides were compared (1 for a direct match).
  unsigned long power = 1;
  std::string diagnostic;
};

/// Commutative K-algebra with named generators graded by a finitely generated
/// abelian group, presented by oriented rewrite rules.
class GradedRing {
 public:
  GradedRing() : GradedRing(FgAbelianGroup(), cyclotomic_field(1)) {}
  GradedRing(FgAbelianGroup grading, CycField field);

  const FgAbelianGroup& grading() const { return grading_; }
  const CycField& field() const { return field_; }
  std::size_t step_cap() const { return step_cap_; }
  void set_step_cap(std::size_t cap) { step_cap_ = cap; }

  std::size_t add_generator(std::string name, GroupElement degree, Rational weight = 1);
  std::size_t num_generators() const { return generators_.size(); }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws InputError for an unknown name.
  std::size_t index_of(const std::string& name) const;

  /// Throws InputError unless the rule is homogeneous and strictly decreasing.
  void add_rule(const Monomial& lhs, const RingElement& rhs);
  /// Rules given explicitly plus root rules, in insertion order.
  const std::vector<RewriteRule>& rules() const { return rules_; }
  /// rules() followed by rules derived from declared factorizations of monomials.
  const std::vector<RewriteRule>& active_rules() const { return active_; }

  void declare_irreducible(const RingElement& e);
  const std::vector<RingElement>& irreducibles() const { return irreducibles_; }
  void declare_factorization(DeclaredFactorization f);
  const std::vector<DeclaredFactorization>& declared_factorizations() const { return declared_; }

  /// Adjoins a generator z of the given degree with z^order -> section.
  std::size_t add_root(std::string name, const RingElement& section, unsigned long order, GroupElement degree);
  const std::vector<RootRelation>& roots() const { return roots_; }
  /// Degree differences identified in the grading by active declared factorizations.
  const std::vector<GroupElement>& imposed_relations() const { return imposed_; }
  /// Generators not rewritten away and not equal to a root power: the
  /// generators of a minimal presentation.
  std::vector<std::size_t> effective_generators() const;

  /// Replace the grading group by one whose presentation extends the current
  /// one by extra generators; degrees are padded with zeros.
  void regrade(FgAbelianGroup g);

  RingElement one() const { return constant(CycScalar(field_, 1)); }
  RingElement constant(const CycScalar& c) const;
  RingElement variable(std::size_t i, unsigned long e = 1) const;
  RingElement variable(const std::string& name, unsigned long e = 1) const { return variable(index_of(name), e); }
  RingElement monomial(const Monomial& m) const { return RingElement(m, CycScalar(field_, 1)); }
  CycScalar scalar(const Rational& q) const { return CycScalar(field_, q); }
  CycScalar zeta(long k) const { return CycScalar::zeta(field_, k); }

  GroupElement monomial_degree(const Monomial& m) const;
  /// Throws InputError for zero or mixed-degree elements.
  GroupElement degree_of(const RingElement& e) const;
  bool is_homogeneous(const RingElement& e) const;

  Rational weight(const Monomial& m) const;
  /// Weighted total degree, ties broken by exponents from the last generator down.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;

  /// Throws RewriteDiverged when the step cap is exceeded.
  RingElement normal_form(const RingElement& e) const;

  /// Divides by the leading coefficient; returns that coefficient.
  std::pair<CycScalar, RingElement> make_monic(const RingElement& e) const;

  /// Throws FactorizationRequired when no backend applies.
  Factorization h_factorize(const RingElement& e) const;
  RingElement expand(const Factorization& f) const;
  FactorizationCheck verify_factorization(const RingElement& e, const Factorization& f) const;

  std::string format(const Monomial& m) const;
  std::string format(const RingElement& e) const;

 private:
  void refresh_active_rules();
  void check_element(const RingElement& e) const;
  std::optional<Factorization> declared_lookup(const RingElement& monic) const;
  std::optional<Factorization> univariate_factor(const RingElement& e) const;
  Factorization postprocess(Factorization f) const;

  FgAbelianGroup grading_;
  CycField field_;
  std::size_t step_cap_ = 10000;
  std::vector<Generator> generators_;
  std::vector<RewriteRule> rules_;
  std::vector<RewriteRule> active_;
  std::vector<RingElement> irreducibles_;
  std::vector<DeclaredFactorization> declared_;
  std::vector<RootRelation> roots_;
  std::vector<GroupElement> imposed_;
};

}  // namespace coxlift
