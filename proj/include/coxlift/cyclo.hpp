#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxlift/abgroup.hpp"

namespace coxlift {

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(unsigned long n);

/// Q(zeta_N) presented as Q[x] / Phi_N.
class CycOrder {
 public:
  explicit CycOrder(unsigned long n);

  unsigned long n() const { return n_; }
  /// phi(N), the dimension over Q.
  std::size_t degree() const { return modulus_.size() - 1; }
  const std::vector<Integer>& modulus() const { return modulus_; }
  /// Reduced coefficients of zeta^k for 0 <= k < N.
  const std::vector<Rational>& power(unsigned long k) const { return powers_.at(k); }

 private:
  unsigned long n_;
  std::vector<Integer> modulus_;
  std::vector<std::vector<Rational>> powers_;
};

using CycField = std::shared_ptr<const CycOrder>;

/// Shared instance per order.
CycField cyclotomic_field(unsigned long n);

class CycScalar {
 public:
  /// Zero of Q.
  CycScalar();
  explicit CycScalar(CycField field, const Rational& value = 0);
  static CycScalar rational(const Rational& value) { return CycScalar(cyclotomic_field(1), value); }
  /// zeta_N^k; k may be negative.
  static CycScalar zeta(CycField field, long k);
  /// Reduces an arbitrary-length coefficient list modulo Phi_N.
  static CycScalar from_coefficients(CycField field, std::vector<Rational> coefficients);

  const CycField& field() const { return field_; }
  unsigned long order() const { return field_->n(); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Throws unless is_rational().
  Rational rational_value() const;

  CycScalar inverse() const;
  CycScalar pow(long e) const;

  /// k with *this == zeta_N^k, if any.
  std::optional<unsigned long> as_root_of_unity() const;
  /// Image under zeta_n -> zeta_M^(M/n); requires n | M.
  CycScalar promote(const CycField& target) const;

  /// "1/2", "E(4)", "-E(3)^2", "E(4) + 1" and so on.
  std::string to_string() const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
  friend CycScalar operator-(CycScalar a);
  friend bool operator==(const CycScalar& a, const CycScalar& b);

 private:
  // Brings a rational operand into this field, or this rational value into o's.
  void align(CycScalar& o);

  CycField field_;
  std::vector<Rational> coefficients_;
};

}  // namespace coxlift
