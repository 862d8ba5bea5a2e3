#include "coxlift/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "coxlift/errors.hpp"

namespace coxlift {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b over Q; b nonzero and trimmed.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

Poly subtract(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Reduce modulo the monic integer polynomial m, padding to deg m coefficients.
Poly reduce(Poly a, const std::vector<Integer>& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * Rational(m[j]);
  }
  a.resize(d, Rational(0));
  return a;
}

std::vector<Integer> exact_divide(std::vector<Integer> a, const std::vector<Integer>& monic) {
  const std::size_t db = monic.size() - 1;
  std::vector<Integer> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * monic[j];
  }
  for (const auto& r : a)
    if (r != 0) throw InvariantViolation("cyclotomic division left a remainder");
  return q;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned long n) {
  if (n == 0) throw InputError("cyclotomic order must be positive");
  std::vector<Integer> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  return p;
}

CycOrder::CycOrder(unsigned long n) : n_(n), modulus_(cyclotomic_polynomial(n)) {
  powers_.reserve(n);
  for (unsigned long k = 0; k < n; ++k) {
    Poly x(k + 1, Rational(0));
    x[k] = 1;
    powers_.push_back(reduce(x, modulus_));
  }
}

CycField cyclotomic_field(unsigned long n) {
  static std::mutex lock;
  static std::map<unsigned long, CycField> cache;
  std::lock_guard guard(lock);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const CycOrder>(n);
  return slot;
}

// ---------------------------------------------------------------------------

CycScalar::CycScalar() : CycScalar(cyclotomic_field(1)) {}

CycScalar::CycScalar(CycField field, const Rational& value)
    : field_(std::move(field)), coefficients_(field_->degree(), Rational(0)) {
  coefficients_[0] = value;
  coefficients_[0].canonicalize();
}

CycScalar CycScalar::zeta(CycField field, long k) {
  const long n = static_cast<long>(field->n());
  const long r = ((k % n) + n) % n;
  CycScalar s(field);
  s.coefficients_ = field->power(static_cast<unsigned long>(r));
  return s;
}

CycScalar CycScalar::from_coefficients(CycField field, std::vector<Rational> coefficients) {
  CycScalar s(field);
  for (auto& c : coefficients) c.canonicalize();
  s.coefficients_ = reduce(std::move(coefficients), field->modulus());
  return s;
}

bool CycScalar::is_zero() const {
  for (const auto& c : coefficients_)
    if (c != 0) return false;
  return true;
}

bool CycScalar::is_rational() const {
  for (std::size_t i = 1; i < coefficients_.size(); ++i)
    if (coefficients_[i] != 0) return false;
  return true;
}

bool CycScalar::is_one() const { return is_rational() && coefficients_[0] == 1; }

Rational CycScalar::rational_value() const {
  if (!is_rational()) throw InputError("scalar " + to_string() + " is not rational");
  return coefficients_[0];
}

void CycScalar::align(CycScalar& o) {
  if (field_ == o.field_ || field_->n() == o.field_->n()) return;
  if (o.field_->n() == 1) {
    o = o.promote(field_);
  } else if (field_->n() == 1) {
    *this = promote(o.field_);
  } else {
    throw InvariantViolation("scalars from Q(E(" + std::to_string(field_->n()) + ")) and Q(E(" +
                             std::to_string(o.field_->n()) + ")) cannot be combined");
  }
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  CycScalar b = o;
  align(b);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += b.coefficients_[i];
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  CycScalar b = o;
  align(b);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= b.coefficients_[i];
  return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  CycScalar b = o;
  align(b);
  coefficients_ = reduce(multiply(coefficients_, b.coefficients_), field_->modulus());
  return *this;
}

CycScalar& CycScalar::operator/=(const CycScalar& o) {
  CycScalar b = o;
  align(b);
  return *this *= b.inverse();
}

CycScalar operator-(CycScalar a) {
  for (auto& c : a.coefficients_) c = -c;
  return a;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  CycScalar x = a, y = b;
  x.align(y);
  return x.coefficients_ == y.coefficients_;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw InputError("division by zero in Q(E(" + std::to_string(field_->n()) + "))");
  Poly r0(field_->modulus().begin(), field_->modulus().end());
  Poly r1 = coefficients_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = subtract(s0, multiply(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since Phi_N is irreducible
  const Rational c = r0.at(0);
  for (auto& x : s0) x /= c;
  CycScalar out(field_);
  out.coefficients_ = reduce(s0, field_->modulus());
  return out;
}

CycScalar CycScalar::pow(long e) const {
  CycScalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  CycScalar out(field_, 1);
  while (k) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

std::optional<unsigned long> CycScalar::as_root_of_unity() const {
  for (unsigned long k = 0; k < field_->n(); ++k)
    if (field_->power(k) == coefficients_) return k;
  return std::nullopt;
}

CycScalar CycScalar::promote(const CycField& target) const {
  const unsigned long n = field_->n();
  const unsigned long m = target->n();
  if (m % n != 0)
    throw InputError("cannot embed Q(E(" + std::to_string(n) + ")) into Q(E(" + std::to_string(m) + "))");
  const unsigned long step = m / n;
  CycScalar out(target);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == 0) continue;
    const auto& p = target->power((i * step) % m);
    for (std::size_t j = 0; j < p.size(); ++j) out.coefficients_[j] += coefficients_[i] * p[j];
  }
  return out;
}

std::string CycScalar::to_string() const {
  if (is_rational()) return coefficients_[0].get_str();
  const std::string e = "E(" + std::to_string(field_->n()) + ")";
  auto power_text = [&](unsigned long k) { return k == 1 ? e : e + "^" + std::to_string(k); };
  if (auto k = as_root_of_unity()) return power_text(*k);
  if (auto k = (-*this).as_root_of_unity()) return "-" + power_text(*k);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coefficients_.size(); i-- > 0;) {
    Rational c = coefficients_[i];
    if (c == 0) continue;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0) {
      os << '-';
      c = -c;
    }
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << power_text(i);
    }
  }
  return os.str();
}

}  // namespace coxlift
