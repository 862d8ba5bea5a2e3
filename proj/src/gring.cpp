#include "coxlift/gring.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "coxlift/errors.hpp"

namespace coxlift {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<unsigned long> exponents) : exps_(std::move(exponents)) {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

Monomial Monomial::variable(std::size_t i, unsigned long e) {
  std::vector<unsigned long> v(i + 1);
  v[i] = e;
  return Monomial(std::move(v));
}

unsigned long Monomial::total_degree() const {
  unsigned long d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& o) const {
  if (exps_.size() > o.exps_.size()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<unsigned long> v(std::max(exps_.size(), o.exps_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)[i] + o[i];
  return Monomial(std::move(v));
}

Monomial Monomial::quotient(const Monomial& o) const {
  if (!o.divides(*this)) throw InvariantViolation("monomial quotient is not exact");
  std::vector<unsigned long> v(exps_);
  for (std::size_t i = 0; i < o.exps_.size(); ++i) v[i] -= o.exps_[i];
  return Monomial(std::move(v));
}

Monomial Monomial::pow(unsigned long e) const {
  std::vector<unsigned long> v(exps_);
  for (auto& x : v) x *= e;
  return Monomial(e == 0 ? std::vector<unsigned long>{} : std::move(v));
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(const Monomial& m, const CycScalar& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

std::size_t RingElement::support() const {
  std::size_t s = 0;
  for (const auto& [m, c] : terms_) s = std::max(s, m.support());
  return s;
}

void RingElement::add_term(const Monomial& m, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RingElement operator-(RingElement a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

RingElement operator*(const CycScalar& c, const RingElement& a) {
  RingElement out;
  for (const auto& [m, x] : a.terms_) out.add_term(m, c * x);
  return out;
}

RingElement RingElement::pow(unsigned long e) const {
  RingElement out(Monomial(), CycScalar(terms_.empty() ? cyclotomic_field(1) : terms_.begin()->second.field(), 1));
  RingElement base = *this;
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

RingElement RingElement::shifted(const Monomial& m) const {
  RingElement out;
  for (const auto& [x, c] : terms_) out.terms_.emplace(x * m, c);
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }

// ---------------------------------------------------------------------------
// GradedRing: structure

GradedRing::GradedRing(FgAbelianGroup grading, CycField field)
    : grading_(std::move(grading)), field_(std::move(field)) {}

std::size_t GradedRing::add_generator(std::string name, GroupElement degree, Rational weight) {
  if (name.empty()) throw InputError("generator name must not be empty");
  if (find(name)) throw InputError("duplicate generator name '" + name + "'");
  if (degree.rank() != grading_.ambient_rank())
    throw InputError("degree of '" + name + "' has " + std::to_string(degree.rank()) + " coordinates, expected " +
                     std::to_string(grading_.ambient_rank()));
  if (weight <= 0) throw InputError("weight of '" + name + "' must be positive");
  generators_.push_back({std::move(name), std::move(degree), weight});
  refresh_active_rules();
  return generators_.size() - 1;
}

std::optional<std::size_t> GradedRing::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::size_t GradedRing::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown generator '" + name + "'");
}

void GradedRing::check_element(const RingElement& e) const {
  if (e.support() > generators_.size())
    throw InputError("element refers to generator index " + std::to_string(e.support() - 1) +
                     " but the ring has " + std::to_string(generators_.size()) + " generators");
}

void GradedRing::add_rule(const Monomial& lhs, const RingElement& rhs) {
  if (lhs.is_one()) throw InputError("rewrite rule with constant left-hand side");
  check_element(RingElement(lhs, scalar(1)));
  check_element(rhs);
  const GroupElement d = monomial_degree(lhs);
  for (const auto& [m, c] : rhs.terms()) {
    if (!grading_.equal(monomial_degree(m), d))
      throw InputError("rewrite rule " + format(lhs) + " -> " + format(rhs) + " is not homogeneous");
    if (compare(lhs, m) != std::strong_ordering::greater)
      throw InputError("rewrite rule " + format(lhs) + " -> " + format(rhs) + " is not decreasing at " + format(m));
  }
  rules_.push_back({lhs, rhs});
  refresh_active_rules();
}

void GradedRing::declare_irreducible(const RingElement& e) {
  check_element(e);
  if (e.is_zero()) throw InputError("zero cannot be declared irreducible");
  degree_of(e);
  irreducibles_.push_back(e);
}

void GradedRing::declare_factorization(DeclaredFactorization f) {
  check_element(f.element);
  if (f.element.is_zero()) throw InputError("declared factorization of zero");
  if (f.unit.is_zero()) throw InputError("declared factorization with zero unit");
  degree_of(f.element);
  declared_.push_back(std::move(f));
  refresh_active_rules();
}

void GradedRing::refresh_active_rules() {
  active_ = rules_;
  for (const auto& d : declared_) {
    if (!d.element.is_term()) continue;
    bool ready = true;
    Monomial fm;
    for (const auto& [name, e] : d.factors) {
      auto i = find(name);
      if (!i) {
        ready = false;
        break;
      }
      fm = fm * Monomial::variable(*i, e);
    }
    if (!ready) continue;
    const auto& [em, c] = d.element.leading();
    const GroupElement gap = monomial_degree(em) - monomial_degree(fm);
    if (!grading_.is_zero(gap)) {
      // both sides must share a degree; a torsion discrepancy is identified in the grading
      if (!element_order(grading_, gap))
        throw InputError("declared factorization of " + format(d.element) + " is not homogeneous");
      IntegerMatrix rel = grading_.relations();
      rel.append_row(gap.coords());
      grading_ = FgAbelianGroup(grading_.ambient_rank(), rel);
      imposed_.push_back(gap);
    }
    const auto order = compare(em, fm);
    if (order == std::strong_ordering::greater)
      active_.push_back({em, RingElement(fm, d.unit / c)});
    else if (order == std::strong_ordering::less)
      active_.push_back({fm, RingElement(em, c / d.unit)});
  }
}

std::size_t GradedRing::add_root(std::string name, const RingElement& section, unsigned long order,
                                 GroupElement degree) {
  if (order == 0) throw InputError("root order must be positive");
  if (section.is_zero()) throw InputError("root along the zero section");
  Rational w = 0;
  for (const auto& [m, c] : section.terms()) w = std::max(w, weight(m));
  if (w == 0) w = 1;
  const std::size_t z = add_generator(std::move(name), std::move(degree), w / Rational(static_cast<long>(order)));
  add_rule(Monomial::variable(z, order), section);
  roots_.push_back({z, order, section});
  return z;
}

void GradedRing::regrade(FgAbelianGroup g) {
  if (g.ambient_rank() < grading_.ambient_rank())
    throw InvariantViolation("regrading must not drop group generators");
  for (auto& gen : generators_) gen.degree = gen.degree.padded(g.ambient_rank());
  grading_ = std::move(g);
}

std::vector<std::size_t> GradedRing::effective_generators() const {
  std::vector<bool> redundant(generators_.size(), false);
  for (const auto& r : active_) {
    const auto& ex = r.lhs.exponents();
    if (r.lhs.total_degree() == 1) redundant[ex.size() - 1] = true;
  }
  for (const auto& root : roots_) {
    if (!root.section.is_term()) continue;
    const auto& [m, c] = root.section.leading();
    if (m.total_degree() == 1) redundant[m.support() - 1] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (!redundant[i]) out.push_back(i);
  return out;
}

RingElement GradedRing::constant(const CycScalar& c) const {
  return RingElement(Monomial(), c.order() == 1 ? c.promote(field_) : c);
}

RingElement GradedRing::variable(std::size_t i, unsigned long e) const {
  if (i >= generators_.size()) throw InputError("generator index out of range");
  return RingElement(Monomial::variable(i, e), scalar(1));
}

GroupElement GradedRing::monomial_degree(const Monomial& m) const {
  GroupElement d = grading_.zero();
  for (std::size_t i = 0; i < m.support(); ++i)
    if (m[i] != 0) d += Integer(static_cast<unsigned long>(m[i])) * generators_.at(i).degree;
  return d;
}

GroupElement GradedRing::degree_of(const RingElement& e) const {
  if (e.is_zero()) throw InputError("the zero element has no degree");
  check_element(e);
  const GroupElement d = monomial_degree(e.terms().begin()->first);
  for (const auto& [m, c] : e.terms())
    if (!grading_.equal(monomial_degree(m), d)) throw InputError("not homogeneous: " + format(e));
  return d;
}

bool GradedRing::is_homogeneous(const RingElement& e) const {
  if (e.is_zero()) return true;
  try {
    degree_of(e);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

Rational GradedRing::weight(const Monomial& m) const {
  Rational w = 0;
  for (std::size_t i = 0; i < m.support(); ++i)
    if (m[i] != 0) w += Rational(static_cast<long>(m[i])) * generators_.at(i).weight;
  return w;
}

std::strong_ordering GradedRing::compare(const Monomial& a, const Monomial& b) const {
  const Rational wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = std::max(a.support(), b.support()); i-- > 0;)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// rewriting

RingElement GradedRing::normal_form(const RingElement& e) const {
  check_element(e);
  RingElement work = e;
  RingElement result;
  std::size_t steps = 0;
  std::deque<std::string> trace;
  while (!work.is_zero()) {
    const auto [m, c] = work.leading();
    work.add_term(m, -c);
    const RewriteRule* rule = nullptr;
    for (const auto& r : active_)
      if (r.lhs.divides(m)) {
        rule = &r;
        break;
      }
    if (!rule) {
      result.add_term(m, c);
      continue;
    }
    const Monomial rest = m.quotient(rule->lhs);
    const RingElement replacement = c * rule->rhs.shifted(rest);
    if (++steps > step_cap_) {
      std::ostringstream os;
      for (const auto& t : trace) os << t << '\n';
      throw RewriteDiverged("rewriting diverged after " + std::to_string(step_cap_) + " steps on " + format(e),
                            os.str());
    }
    trace.push_back(format(m) + " -> " + format(rule->rhs.shifted(rest)));
    if (trace.size() > 12) trace.pop_front();
    work += replacement;
  }
  return result;
}

std::pair<CycScalar, RingElement> GradedRing::make_monic(const RingElement& e) const {
  if (e.is_zero()) return {scalar(0), e};
  const CycScalar lc = e.leading().second;
  return {lc, lc.inverse() * e};
}

// ---------------------------------------------------------------------------
// factorization

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

Poly gcd_poly(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Yun: f = prod parts[i]^(i+1), f monic and square parts monic.
std::vector<Poly> square_free_parts(const Poly& f) {
  std::vector<Poly> parts;
  Poly a = gcd_poly(f, derivative(f));
  Poly b = divmod(f, a).first;
  Poly c = divmod(derivative(f), a).first;
  Poly d = sub(c, derivative(b));
  while (b.size() > 1) {
    Poly g = gcd_poly(b, d);
    parts.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = sub(c, derivative(b));
  }
  return parts;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// Rational roots of a square-free polynomial with nonzero constant term.
std::optional<std::vector<Rational>> rational_roots(const Poly& p) {
  Integer den = 1;
  for (const auto& c : p) den = lcm(den, c.get_den());
  std::vector<Integer> z;
  for (const auto& c : p) z.push_back(Integer(c * Rational(den)));
  const Integer a0 = abs(z.front()), an = abs(z.back());
  static const Integer limit("1000000000000");
  if (a0 > limit || an > limit) return std::nullopt;
  std::vector<Rational> roots;
  std::set<Rational> seen;
  for (const auto& num : divisors(a0))
    for (const auto& dd : divisors(an))
      for (int sign : {1, -1}) {
        Rational r(num * sign, dd);
        r.canonicalize();
        if (seen.insert(r).second && evaluate(p, r) == 0) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::optional<Factorization> GradedRing::declared_lookup(const RingElement& m) const {
  for (const auto& d : declared_) {
    std::vector<std::pair<RingElement, unsigned long>> factors;
    bool ready = true;
    for (const auto& [name, e] : d.factors) {
      auto i = find(name);
      if (!i) {
        ready = false;
        break;
      }
      factors.emplace_back(variable(*i), e);
    }
    if (!ready) continue;
    auto [lc, target] = make_monic(normal_form(d.element));
    if (target == m) return Factorization{d.unit / lc, std::move(factors)};
  }
  return std::nullopt;
}

std::optional<Factorization> GradedRing::univariate_factor(const RingElement& e) const {
  // e is monic and in normal form with at least two terms
  std::optional<std::size_t> var;
  for (const auto& [m, c] : e.terms()) {
    if (!c.is_rational()) return std::nullopt;
    for (std::size_t i = 0; i < m.support(); ++i) {
      if (m[i] == 0) continue;
      if (var && *var != i) return std::nullopt;
      var = i;
    }
  }
  if (!var) return std::nullopt;
  const std::size_t t = *var;
  if (e.leading().first[t] > 8) return std::nullopt;
  const auto order = element_order(grading_, generators_[t].degree);
  if (!order) return std::nullopt;
  const unsigned long step = order->get_ui();
  const unsigned long low = e.terms().begin()->first[t];
  Poly f;
  for (const auto& [m, c] : e.terms()) {
    const unsigned long k = m[t] - low;
    if (k % step != 0) return std::nullopt;
    if (f.size() <= k / step) f.resize(k / step + 1, Rational(0));
    f[k / step] = c.rational_value();
  }
  auto lift = [&](const Poly& p) {
    RingElement out;
    for (std::size_t i = 0; i < p.size(); ++i)
      out.add_term(i == 0 ? Monomial() : Monomial::variable(t, i * step), scalar(p[i]));
    return out;
  };

  Factorization out{scalar(1), {}};
  if (low > 0) out.factors.emplace_back(variable(t), low);
  const auto parts = square_free_parts(monic(f));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Poly rest = parts[i];
    if (rest.size() <= 1) continue;
    auto roots = rational_roots(rest);
    if (!roots) return std::nullopt;
    for (const auto& r : *roots) {
      Poly linear{-r, Rational(1)};
      rest = divmod(rest, linear).first;
      out.factors.emplace_back(lift(linear), i + 1);
    }
    if (rest.size() <= 1) continue;
    // no rational roots left: irreducible over Q when the degree is at most 3
    if (field_->degree() > 1 || rest.size() > 4) return std::nullopt;
    out.factors.emplace_back(lift(rest), i + 1);
  }
  return out;
}

Factorization GradedRing::postprocess(Factorization f) const {
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::pair<RingElement, unsigned long>> next;
    for (auto& [g, e] : f.factors) {
      bool replaced = false;
      for (const auto& root : roots_) {
        if (root.order < 2) continue;
        auto [lc, s] = make_monic(normal_form(root.section));
        if (s == g) {
          next.emplace_back(variable(root.generator), root.order * e);
          f.unit = f.unit / lc.pow(static_cast<long>(e));
          replaced = changed = true;
          break;
        }
      }
      if (replaced) continue;
      if (g.is_term() && g.leading().first.total_degree() == 1) {
        RingElement nf = normal_form(g);
        if (!(nf == g)) {
          Factorization sub = h_factorize(nf);
          f.unit = f.unit * sub.unit.pow(static_cast<long>(e));
          for (auto& [h, k] : sub.factors) next.emplace_back(std::move(h), k * e);
          changed = true;
          continue;
        }
      }
      next.emplace_back(std::move(g), e);
    }
    // merge equal factors
    std::vector<std::pair<RingElement, unsigned long>> merged;
    for (auto& [g, e] : next) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& p) { return p.first == g; });
      if (it == merged.end())
        merged.emplace_back(std::move(g), e);
      else
        it->second += e;
    }
    f.factors = std::move(merged);
  }
  std::sort(f.factors.begin(), f.factors.end(), [&](const auto& a, const auto& b) {
    const auto& ma = a.first.leading().first;
    const auto& mb = b.first.leading().first;
    if (ma != mb) return ma < mb;
    return format(a.first) < format(b.first);
  });
  return f;
}

Factorization GradedRing::h_factorize(const RingElement& e) const {
  if (e.is_zero()) throw InputError("cannot factor the zero element");
  const RingElement nf = normal_form(e);
  if (nf.is_zero()) throw InputError("element " + format(e) + " is zero in the ring");
  degree_of(nf);
  auto [lc, m] = make_monic(nf);
  if (m.is_term() && m.leading().first.is_one()) return {lc, {}};

  for (const auto& irr : irreducibles_) {
    auto [ic, im] = make_monic(normal_form(irr));
    if (im == m) return postprocess({lc, {{m, 1}}});
  }
  if (m.is_term()) {
    Factorization f{lc, {}};
    const Monomial& mono = m.leading().first;
    for (std::size_t i = 0; i < mono.support(); ++i)
      if (mono[i] != 0) f.factors.emplace_back(variable(i), mono[i]);
    return postprocess(std::move(f));
  }
  if (auto d = declared_lookup(m)) {
    d->unit = d->unit * lc;
    return postprocess(std::move(*d));
  }
  if (auto u = univariate_factor(m)) {
    u->unit = u->unit * lc;
    return postprocess(std::move(*u));
  }
  throw FactorizationRequired(format(nf));
}

RingElement GradedRing::expand(const Factorization& f) const {
  RingElement out = constant(f.unit);
  for (const auto& [g, e] : f.factors) out = out * g.pow(e);
  return out;
}

FactorizationCheck GradedRing::verify_factorization(const RingElement& e, const Factorization& f) const {
  FactorizationCheck check;
  const RingElement lhs = normal_form(e);
  const RingElement rhs = normal_form(expand(f));
  if (lhs == rhs) {
    check.passed = true;
    return check;
  }
  // candidate powers: orders of roots and pure-power rules on the generators involved
  std::set<std::size_t> involved;
  auto collect = [&](const RingElement& x) {
    for (const auto& [m, c] : x.terms())
      for (std::size_t i = 0; i < m.support(); ++i)
        if (m[i] != 0) involved.insert(i);
  };
  collect(e);
  for (const auto& [g, k] : f.factors) collect(g);
  std::set<unsigned long> powers;
  for (const auto& r : active_) {
    const auto& ex = r.lhs.exponents();
    std::size_t nonzero = 0, at = 0;
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i] != 0) {
        ++nonzero;
        at = i;
      }
    if (nonzero == 1 && ex[at] > 1 && involved.count(at)) powers.insert(ex[at]);
  }
  unsigned long all = 1;
  for (auto p : powers) all = std::lcm(all, p);
  if (all > 1) powers.insert(all);
  for (auto p : powers) {
    if (normal_form(e.pow(p)) == normal_form(expand(f).pow(p))) {
      check.passed = true;
      check.power = p;
      return check;
    }
  }
  check.diagnostic = "normal forms differ: " + format(lhs) + " vs " + format(rhs);
  if (!powers.empty()) {
    check.diagnostic += " (also compared powers";
    for (auto p : powers) check.diagnostic += " " + std::to_string(p);
    check.diagnostic += ")";
  }
  return check;
}

// ---------------------------------------------------------------------------
// display

std::string GradedRing::format(const Monomial& m) const {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.support(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < generators_.size() ? generators_[i].name : "g" + std::to_string(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

std::string GradedRing::format(const RingElement& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.rational_value();
      negative = q < 0;
      q = abs(q);
      if (q != 1 || m.is_one()) coef = q.get_str();
    } else {
      coef = c.to_string();
      if (coef.front() == '-' && coef.find(' ') == std::string::npos) {
        negative = true;
        coef.erase(0, 1);
      }
      if (coef.find(' ') != std::string::npos) coef = "(" + coef + ")";
    }
    std::string term = coef;
    if (!m.is_one()) term += (term.empty() ? "" : "*") + format(m);
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace coxlift
