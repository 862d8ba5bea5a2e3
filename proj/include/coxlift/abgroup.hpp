#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace coxlift {

using Integer = mpz_class;
using Rational = mpq_class;

/// Least non-negative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);
  /// Rows must all have length `cols`; `cols` is needed when `rows` is empty.
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<Integer> row(std::size_t i) const;
  std::vector<std::vector<Integer>> to_rows() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k);
  void append_row(const std::vector<Integer>& row);

  Integer determinant() const;
  std::string to_string() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V == S with S diagonal, non-negative, and s_1 | s_2 | ... .
struct SmithForm {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;
  IntegerMatrix V_inverse;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Coordinates with respect to the ambient generators of a presentation;
/// equality as a group element is decided by the owning FgAbelianGroup.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  static GroupElement zero(std::size_t rank) { return GroupElement(std::vector<Integer>(rank)); }
  static GroupElement unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return coords_.size(); }
  const std::vector<Integer>& coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  /// Image under the coordinate inclusion into a presentation with more generators.
  GroupElement padded(std::size_t rank) const;
  std::string to_string() const;

  GroupElement& operator+=(const GroupElement& o);
  GroupElement& operator-=(const GroupElement& o);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator*(const Integer& k, GroupElement a);
  friend GroupElement operator-(GroupElement a);
  /// Coordinatewise; NOT equality in the group.
  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;

 private:
  std::vector<Integer> coords_;
};

/// Z^n modulo the row lattice of a relation matrix, canonicalized by Smith
/// normal form. Invariant factors equal to 1 are dropped.
class FgAbelianGroup {
 public:
  FgAbelianGroup() : FgAbelianGroup(0, IntegerMatrix(0, 0)) {}
  FgAbelianGroup(std::size_t ambient_rank, IntegerMatrix relations);

  static FgAbelianGroup free(std::size_t rank);
  static FgAbelianGroup cyclic(const Integer& order);
  /// Direct sum of Z/d for each d followed by Z^free_rank.
  static FgAbelianGroup from_invariants(const std::vector<Integer>& torsion, std::size_t free_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  const IntegerMatrix& relations() const { return relations_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  /// nullopt when infinite.
  std::optional<Integer> order() const;
  /// Exponent of the group; nullopt when infinite.
  std::optional<Integer> exponent() const;

  GroupElement zero() const { return GroupElement::zero(ambient_rank_); }
  GroupElement generator(std::size_t i) const { return GroupElement::unit(ambient_rank_, i); }

  /// Torsion coordinates reduced into [0, d) followed by free coordinates.
  std::vector<Integer> canonical_coordinates(const GroupElement& g) const;
  GroupElement from_canonical(const std::vector<Integer>& canonical) const;
  GroupElement reduce(const GroupElement& g) const { return from_canonical(canonical_coordinates(g)); }
  /// Images of the canonical cyclic generators, torsion first.
  std::vector<GroupElement> canonical_generators() const;

  bool is_zero(const GroupElement& g) const;
  bool equal(const GroupElement& a, const GroupElement& b) const { return is_zero(a - b); }

  /// e.g. "Z/2 + Z/6 + Z^2"; the trivial group prints as "0".
  std::string to_string() const;

  /// Isomorphism by canonical form.
  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.torsion_ == b.torsion_ && a.free_rank_ == b.free_rank_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  IntegerMatrix relations_;
  // diagonal of the Smith form padded with zeros to ambient_rank_
  std::vector<Integer> diagonal_;
  IntegerMatrix V_;
  IntegerMatrix V_inverse_;
  std::vector<Integer> torsion_;
  std::size_t free_rank_ = 0;
};

class GroupHomomorphism {
 public:
  GroupHomomorphism() = default;
  /// Throws InputError unless every domain relation maps to zero.
  GroupHomomorphism(FgAbelianGroup domain, FgAbelianGroup codomain, std::vector<GroupElement> images);

  const FgAbelianGroup& domain() const { return domain_; }
  const FgAbelianGroup& codomain() const { return codomain_; }
  const std::vector<GroupElement>& images() const { return images_; }
  GroupElement operator()(const GroupElement& g) const;

 private:
  FgAbelianGroup domain_;
  FgAbelianGroup codomain_;
  std::vector<GroupElement> images_;
};

/// Least n >= 1 with n*g = 0, or nullopt for infinite order.
std::optional<Integer> element_order(const FgAbelianGroup& g, const GroupElement& x);

struct Quotient {
  FgAbelianGroup group;
  GroupHomomorphism projection;
};
Quotient quotient_group(const FgAbelianGroup& g, const std::vector<GroupElement>& subgroup_gens);

bool in_subgroup(const FgAbelianGroup& g, const std::vector<GroupElement>& gens, const GroupElement& x);

/// Integer coefficients lambda with sum lambda_i * gens_i == x in g, if any.
std::optional<std::vector<Integer>> express_in_generators(const FgAbelianGroup& g,
                                                          const std::vector<GroupElement>& gens,
                                                          const GroupElement& x);

/// The subgroup generated by `gens`, presented on those generators.
FgAbelianGroup subgroup_presentation(const FgAbelianGroup& g, const std::vector<GroupElement>& gens);

/// A' = (A + Z) / Z(a, -n); delta is the class of (0, 1), so n*delta = incl(a).
struct PushoutRoot {
  FgAbelianGroup group;
  GroupHomomorphism inclusion;
  GroupElement delta;
};
PushoutRoot pushout_root(const FgAbelianGroup& a, const GroupElement& cls, const Integer& n);

/// Basis of {c in Z_p^n : sum c_j m_j = 0}. Each vector has a 1 at its free
/// position; the pivot is the last nonzero m_j.
std::vector<std::vector<Integer>> kernel_basis_mod_p(const std::vector<Integer>& classes, const Integer& p);

struct AffineSolution {
  /// Lexicographically least solution with entries in [0, p); nullopt if inconsistent.
  std::optional<std::vector<Integer>> solution;
  /// p^(unknowns - rank) when consistent, else 0.
  Integer solution_count;
  std::size_t rank = 0;
};
AffineSolution solve_affine_mod_p(const std::vector<std::vector<Integer>>& matrix,
                                  const std::vector<Integer>& rhs, std::size_t unknowns,
                                  const Integer& p);

/// A delta with k * delta == t for every (k, t), lexicographically least in
/// canonical coordinates (free coordinates are forced or zero).
std::optional<GroupElement> solve_linear_over_group(
    const FgAbelianGroup& g, const std::vector<std::pair<Integer, GroupElement>>& equations);

}  // namespace coxlift
