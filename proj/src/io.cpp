#include "coxlift/io.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "coxlift/errors.hpp"

namespace coxlift::io {

namespace {

// Recursive descent over
//   expr   := term (('+' | '-') term)*
//   term   := power ('*' power)*
//   power  := unary ('^' integer)?
//   unary  := '-' unary | atom
//   atom   := integer ('/' integer)? | 'E(' integer ')' | name | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(const GradedRing& ring, const std::string& text) : ring_(ring), text_(text) {}

  RingElement parse() {
    RingElement e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse \"" + text_ + "\" at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(text_.substr(start, pos_ - start));
  }

  RingElement expr() {
    RingElement e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }
  RingElement term() {
    RingElement e = power();
    while (accept('*')) e = e * power();
    return e;
  }
  RingElement power() {
    RingElement e = unary();
    if (accept('^')) {
      const Integer k = integer();
      if (!k.fits_ulong_p()) fail("exponent too large");
      e = e.pow(k.get_ui());
    }
    return e;
  }
  RingElement unary() {
    if (accept('-')) return -unary();
    return atom();
  }
  RingElement atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RingElement e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(integer());
      if (accept('/')) {
        const Integer d = integer();
        if (d == 0) fail("division by zero");
        q /= d;
      }
      return ring_.constant(ring_.scalar(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (name == "E" && accept('(')) {
        const Integer n = integer();
        if (!accept(')')) fail("expected ')'");
        const unsigned long N = ring_.field()->n();
        if (n == 0 || !n.fits_ulong_p() || N % n.get_ui() != 0)
          fail("E(" + n.get_str() + ") is not in Q(E(" + std::to_string(N) + "))");
        return ring_.constant(ring_.zeta(static_cast<long>(N / n.get_ui())));
      }
      const auto idx = ring_.find(name);
      if (!idx) fail("unknown generator '" + name + "'");
      return ring_.variable(*idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const GradedRing& ring_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Integer parse_integer(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InputError("expected an integer, got " + j.dump());
}

json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

std::string text_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

RingElement element_of(const GradedRing& ring, const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_element(ring, j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (j.is_array()) {
    // [[coefficient, monomial], ...] or [{"coefficient": c, "exponents": {"x": 2}}, ...]
    RingElement e;
    for (const auto& t : j) {
      if (t.is_object()) {
        std::vector<unsigned long> exps(ring.num_generators());
        for (const auto& [name, k] : require(t, "exponents", where).items()) {
          const auto idx = ring.find(name);
          if (!idx) throw InputError(where + ": unknown generator '" + name + "'");
          exps[*idx] = k.get<unsigned long>();
        }
        e.add_term(Monomial(exps), parse_scalar(ring.field(), require(t, "coefficient", where)));
        continue;
      }
      if (!t.is_array() || t.size() != 2) throw InputError(where + ": terms are [coefficient, monomial] pairs");
      e.add_term(parse_monomial(ring, text_of(t[1], where)), parse_scalar(ring.field(), t[0]));
    }
    return e;
  }
  throw InputError(where + ": expected an element, got " + j.dump());
}

}  // namespace

RingElement parse_element(const GradedRing& ring, const std::string& text) {
  return ExpressionParser(ring, text).parse();
}

Monomial parse_monomial(const GradedRing& ring, const std::string& text) {
  const RingElement e = parse_element(ring, text);
  if (!e.is_term() || !e.leading().second.is_one()) throw InputError("\"" + text + "\" is not a monomial");
  return e.leading().first;
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(parse_integer(j));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
      throw InputError("bad rational \"" + j.get<std::string>() + "\"");
    q.canonicalize();
    return q;
  }
  throw InputError("expected a rational, got " + j.dump());
}

CycScalar parse_scalar(const CycField& field, const json& j) {
  if (j.is_object() && j.contains("zeta")) {
    const auto& z = j.at("zeta");
    if (!z.is_array() || z.size() != 2) throw InputError("zeta needs [k, n]");
    const long k = z[0].get<long>();
    const unsigned long n = z[1].get<unsigned long>();
    if (n == 0 || field->n() % n != 0)
      throw InputError("E(" + std::to_string(n) + ") is not in Q(E(" + std::to_string(field->n()) + "))");
    return CycScalar::zeta(field, k * static_cast<long>(field->n() / n));
  }
  if (j.is_object() && j.contains("coefficients")) {
    const unsigned long n = require(j, "order", "scalar").get<unsigned long>();
    if (n == 0 || field->n() % n != 0)
      throw InputError("Q(E(" + std::to_string(n) + ")) is not inside Q(E(" + std::to_string(field->n()) + "))");
    std::vector<Rational> cs;
    for (const auto& c : j.at("coefficients")) cs.push_back(parse_rational(c));
    return CycScalar::from_coefficients(cyclotomic_field(n), cs).promote(field);
  }
  return CycScalar(field, parse_rational(j));
}

json scalar_to_json(const CycScalar& c) {
  if (c.is_rational()) return c.rational_value().get_str();
  if (auto k = c.as_root_of_unity()) return json{{"zeta", {*k, c.order()}}};
  json cs = json::array();
  for (const auto& q : c.coefficients()) cs.push_back(q.get_str());
  return json{{"order", c.order()}, {"coefficients", cs}};
}

GroupElement parse_group_element(const json& j, std::size_t rank) {
  if (!j.is_array()) throw InputError("group element must be an integer array, got " + j.dump());
  if (j.size() != rank)
    throw InputError("group element " + j.dump() + " has " + std::to_string(j.size()) + " coordinates, expected " +
                     std::to_string(rank));
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(parse_integer(x));
  return GroupElement(std::move(c));
}

json group_element_to_json(const GroupElement& g) {
  json out = json::array();
  for (const auto& c : g.coords()) out.push_back(integer_to_json(c));
  return out;
}

IntegerMatrix parse_matrix(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  std::size_t cols = 0;
  for (const auto& r : j) {
    if (!r.is_array()) throw InputError("matrix rows must be arrays");
    std::vector<Integer> row;
    for (const auto& x : r) row.push_back(parse_integer(x));
    if (!rows.empty() && row.size() != cols) throw InputError("matrix rows have different lengths");
    cols = row.size();
    rows.push_back(std::move(row));
  }
  return IntegerMatrix::from_rows(rows, cols);
}

FgAbelianGroup parse_group(const json& j) {
  if (!j.is_object()) throw InputError("group must be an object");
  if (j.contains("rank")) {
    const std::size_t rank = j.at("rank").get<std::size_t>();
    IntegerMatrix rel(0, rank);
    if (j.contains("relations") && !j.at("relations").empty()) rel = parse_matrix(j.at("relations"));
    if (rel.cols() != rank) throw InputError("relation rows must have " + std::to_string(rank) + " entries");
    return FgAbelianGroup(rank, rel);
  }
  std::vector<Integer> inv;
  if (j.contains("invariants"))
    for (const auto& x : j.at("invariants")) inv.push_back(parse_integer(x));
  const std::size_t free = j.value("free", std::size_t{0});
  return FgAbelianGroup::from_invariants(inv, free);
}

json group_to_json(const FgAbelianGroup& g) {
  json rel = json::array();
  for (const auto& r : g.relations().to_rows()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(integer_to_json(x));
    rel.push_back(row);
  }
  return json{{"rank", g.ambient_rank()}, {"relations", rel}, {"canonical", g.to_string()}};
}

GradedRing parse_ring(const json& j, const CycField& field) {
  const FgAbelianGroup grading = parse_group(require(j, "grading", "ring"));
  GradedRing ring(grading, field);
  const json& gens = require(j, "generators", "ring");
  if (!gens.is_array()) throw InputError("ring: generators must be a list");
  for (const auto& g : gens) {
    const std::string name = text_of(require(g, "name", "generator"), "generator name");
    const GroupElement d = parse_group_element(require(g, "degree", "generator " + name), grading.ambient_rank());
    const Rational w = g.contains("weight") ? parse_rational(g.at("weight")) : Rational(1);
    ring.add_generator(name, d, w);
  }
  if (j.contains("rules"))
    for (const auto& r : j.at("rules")) {
      const std::string where = "rule " + r.dump();
      ring.add_rule(parse_monomial(ring, text_of(require(r, "lhs", where), where)),
                    element_of(ring, require(r, "rhs", where), where));
    }
  if (j.contains("irreducibles"))
    for (const auto& e : j.at("irreducibles")) ring.declare_irreducible(element_of(ring, e, "irreducible"));
  if (j.contains("factorizations"))
    for (const auto& f : j.at("factorizations")) {
      const std::string where = "factorization " + f.dump();
      DeclaredFactorization d;
      d.element = element_of(ring, require(f, "element", where), where);
      d.unit = f.contains("unit") ? parse_scalar(field, f.at("unit")) : CycScalar(field, 1);
      for (const auto& fac : require(f, "factors", where)) {
        if (fac.is_string())
          d.factors.emplace_back(fac.get<std::string>(), 1);
        else if (fac.is_array() && fac.size() == 2)
          d.factors.emplace_back(text_of(fac[0], where), fac[1].get<unsigned long>());
        else
          throw InputError(where + ": factors are names or [name, exponent] pairs");
      }
      ring.declare_factorization(std::move(d));
    }
  return ring;
}

json ring_to_json(const GradedRing& ring) {
  json gens = json::array();
  for (const auto& g : ring.generators())
    gens.push_back({{"name", g.name}, {"degree", group_element_to_json(g.degree)}, {"weight", g.weight.get_str()}});
  json rules = json::array();
  for (const auto& r : ring.rules()) {
    const bool root = std::any_of(ring.roots().begin(), ring.roots().end(), [&](const RootRelation& rr) {
      return Monomial::variable(rr.generator, rr.order) == r.lhs;
    });
    if (!root) rules.push_back({{"lhs", ring.format(r.lhs)}, {"rhs", ring.format(r.rhs)}});
  }
  json out{{"grading", group_to_json(ring.grading())}, {"generators", gens}, {"rules", rules}};
  if (!ring.irreducibles().empty()) {
    json irr = json::array();
    for (const auto& e : ring.irreducibles()) irr.push_back(ring.format(e));
    out["irreducibles"] = irr;
  }
  if (!ring.declared_factorizations().empty()) {
    json fs = json::array();
    for (const auto& d : ring.declared_factorizations()) {
      json factors = json::array();
      for (const auto& [n, e] : d.factors) factors.push_back({n, e});
      fs.push_back({{"element", ring.format(d.element)}, {"unit", scalar_to_json(d.unit)}, {"factors", factors}});
    }
    out["factorizations"] = fs;
  }
  return out;
}

json tower_to_json(const MdStack& s) {
  json tower = json::array();
  for (const auto& step : s.tower) {
    json t{{"order", step.order}};
    if (step.kind == RootStep::Kind::divisor) {
      t["kind"] = "divisor";
      t["generator"] = step.generator;
      // sections are written in the ring the root was taken in; later generators never occur
      t["section"] = s.ring.format(step.section);
    } else {
      t["kind"] = "line_bundle";
      t["bundle_class"] = group_element_to_json(step.bundle_class);
    }
    if (step.lifted_class) t["lifted_class"] = group_element_to_json(*step.lifted_class);
    tower.push_back(t);
  }
  return tower;
}

json stack_to_json(const MdStack& s) {
  json irr = json::array();
  for (const auto& e : s.irrelevant) irr.push_back(s.base_ring.format(e));
  json rules = json::array();
  for (const auto& r : s.ring.active_rules())
    rules.push_back({{"lhs", s.ring.format(r.lhs)}, {"rhs", s.ring.format(r.rhs)}});
  json gens = json::array();
  for (const auto& g : s.ring.generators())
    gens.push_back({{"name", g.name}, {"degree", group_element_to_json(g.degree)}});
  json effective = json::array();
  for (auto i : s.ring.effective_generators()) effective.push_back(s.ring.generator(i).name);
  json out{{"base", {{"ring", ring_to_json(s.base_ring)}, {"irrelevant", irr}}},
           {"tower", tower_to_json(s)},
           {"pic", group_to_json(s.pic())},
           {"generators", gens},
           {"effective_generators", effective},
           {"rules", rules}};
  if (s.coarse_pullback) {
    json pb = json::array();
    for (const auto& g : *s.coarse_pullback) pb.push_back(group_element_to_json(g));
    out["coarse_pullback"] = pb;
  }
  return out;
}

MdStack parse_stack(const json& j, const CycField& field, std::size_t step_cap) {
  const json& base = require(j, "base", "stack");
  GradedRing ring = parse_ring(require(base, "ring", "stack base"), field);
  ring.set_step_cap(step_cap);
  std::vector<RingElement> irrelevant;
  if (base.contains("irrelevant"))
    for (const auto& e : base.at("irrelevant")) irrelevant.push_back(element_of(ring, e, "irrelevant ideal"));
  MdStack s = canonical_stack(ring, irrelevant);
  if (!j.contains("tower")) return s;
  for (const auto& t : j.at("tower")) {
    const std::string kind = text_of(require(t, "kind", "tower step"), "tower kind");
    const unsigned long order = require(t, "order", "tower step").get<unsigned long>();
    if (kind == "divisor") {
      const std::string name = text_of(require(t, "generator", "tower step"), "generator");
      s = root_divisor(s, element_of(s.ring, require(t, "section", "tower step"), "section"), order, name,
                       t.value("forced", false));
    } else if (kind == "line_bundle") {
      s = root_line_bundle(s, parse_group_element(require(t, "bundle_class", "tower step"), s.pic().ambient_rank()),
                           order);
    } else {
      throw InputError("unknown tower step kind \"" + kind + "\"");
    }
    if (t.contains("lifted_class")) {
      const auto& lc = t.at("lifted_class");
      s.tower.back().lifted_class = parse_group_element(lc, lc.size());
    }
  }
  return s;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

unsigned long lcm_ul(unsigned long a, unsigned long b) { return std::lcm(a, b); }

// Declared factorizations must hold in a ring that has the anticipated roots
// but not the rules the declarations themselves induce.
void verify_declarations(const GradedRing& source, const std::vector<RingElement>& irrelevant,
                         const LiftOptions& options) {
  if (source.declared_factorizations().empty()) return;
  GradedRing bare(source.grading(), source.field());
  bare.set_step_cap(source.step_cap());
  for (const auto& g : source.generators()) bare.add_generator(g.name, g.degree, g.weight);
  for (const auto& r : source.rules()) bare.add_rule(r.lhs, r.rhs);
  for (const auto& e : source.irreducibles()) bare.declare_irreducible(e);
  MdStack s = canonical_stack(bare, irrelevant);
  for (const auto& ar : options.anticipated_roots) {
    s = root_divisor(s, ar.section, ar.order, ar.name, true);
  }
  for (const auto& d : source.declared_factorizations()) {
    Factorization f;
    f.unit = d.unit;
    for (const auto& [name, e] : d.factors) {
      if (!s.ring.find(name))
        throw InputError("declared factorization of " + source.format(d.element) + " uses unknown generator " + name);
      f.factors.emplace_back(s.ring.variable(name), e);
    }
    const FactorizationCheck c = s.ring.verify_factorization(d.element, f);
    if (!c.passed)
      throw InputError("declared factorization of " + source.format(d.element) + " fails verification: " +
                       c.diagnostic);
  }
}

}  // namespace

std::vector<AnticipatedRoot> parse_anticipated_roots(const json& list, const GradedRing& base) {
  // sections may mention earlier anticipated roots
  GradedRing names(base.grading(), base.field());
  for (const auto& g : base.generators()) names.add_generator(g.name, g.degree, g.weight);
  std::vector<AnticipatedRoot> out;
  for (const auto& a : list) {
    AnticipatedRoot ar;
    ar.name = text_of(require(a, "name", "anticipated root"), "anticipated root name");
    ar.order = require(a, "order", "anticipated root").get<unsigned long>();
    ar.section = element_of(names, require(a, "section", "anticipated root"), "anticipated root " + ar.name);
    if (names.find(ar.name)) throw InputError("anticipated root name " + ar.name + " is already in use");
    names.add_generator(ar.name, names.grading().zero());
    out.push_back(std::move(ar));
  }
  return out;
}

Problem parse_problem(const json& j, std::size_t step_cap) {
  if (!j.is_object()) throw InputError("problem must be a JSON object");
  const std::string schema = text_of(require(j, "schema", "problem"), "schema");
  if (schema != "coxlift/1") throw InputError("unsupported schema \"" + schema + "\"");
  Problem p;
  p.document = j;
  p.name = j.value("name", std::string());
  p.step_cap = step_cap;
  if (j.contains("options")) {
    const auto& o = j.at("options");
    p.step_cap = o.value("step_cap", p.step_cap);
    p.spotcheck_bound = o.value("spotcheck_bound", p.spotcheck_bound);
  }
  p.assertions = j.value("assertions", json{{"units_constant", true}, {"pic_of_total_space_trivial", true}});

  const json& target = require(j, "target", "problem");
  const json& target_ring = require(target, "ring", "target");
  if (!require(target_ring, "generators", "target ring").is_array() || target_ring.at("generators").empty())
    throw InputError("target ring: generators list is empty");

  // the field must contain the roots of unity the steps will need
  const FgAbelianGroup cl = parse_group(require(target_ring, "grading", "target ring"));
  std::vector<GroupElement> pic_gens;
  for (const auto& g : require(target, "pic_generators", "target"))
    pic_gens.push_back(parse_group_element(g, cl.ambient_rank()));
  const FgAbelianGroup quo = quotient_group(cl, pic_gens).group;
  if (!quo.is_finite()) throw InputError("not Q-factorial data: Cl(Y)/Pic(Y) is infinite");
  const Integer index = *quo.order();
  if (!index.fits_ulong_p()) throw InputError("Cl(Y)/Pic(Y) is too large");
  p.cyclotomic_order = lcm_ul(j.value("cyclotomic_order", 1UL), index.get_ui());
  const CycField field = cyclotomic_field(p.cyclotomic_order);

  p.target.ring = parse_ring(target_ring, field);
  p.target.ring.set_step_cap(p.step_cap);
  p.target.pic_generators = pic_gens;
  if (target.contains("irrelevant"))
    for (const auto& e : target.at("irrelevant"))
      p.target.irrelevant.push_back(element_of(p.target.ring, e, "target irrelevant ideal"));

  const json& source = require(j, "source", "problem");
  GradedRing source_ring = parse_ring(require(source, "ring", "source"), field);
  source_ring.set_step_cap(p.step_cap);
  std::vector<RingElement> irrelevant;
  if (source.contains("irrelevant"))
    for (const auto& e : source.at("irrelevant")) irrelevant.push_back(element_of(source_ring, e, "source irrelevant ideal"));

  if (j.contains("options"))
    p.options.anticipated_roots =
        parse_anticipated_roots(j.at("options").value("anticipated_roots", json::array()), source_ring);
  verify_declarations(source_ring, irrelevant, p.options);
  p.source = canonical_stack(source_ring, irrelevant);

  const json& base = require(j, "base_morphism", "problem");
  for (const auto& im : require(base, "images", "base morphism")) {
    const std::string where = "base image " + im.dump();
    p.base.images.emplace_back(parse_monomial(p.target.ring, text_of(require(im, "monomial", where), where)),
                               element_of(p.source.ring, require(im, "image", where), where));
  }
  const json& pic_images = require(base, "pic_images", "base morphism");
  for (const auto& g : pic_images) p.base.pic_images.push_back(parse_group_element(g, p.source.pic().ambient_rank()));
  if (p.base.pic_images.size() != pic_gens.size())
    throw InputError("base morphism: " + std::to_string(p.base.pic_images.size()) + " class images for " +
                     std::to_string(pic_gens.size()) + " Pic(Y) generators");
  return p;
}

Problem load_problem(const std::string& path, std::size_t step_cap) {
  try {
    return parse_problem(read_json(path), step_cap);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failures", c.failures}});
  return json{{"passed", r.passed()}, {"checks", checks}};
}

json step_to_json(const GradedRing& target_ring, const LiftStep& step) {
  json cos = json::array(), cons = json::array();
  for (std::size_t j = 0; j < step.coset_generators.size(); ++j)
    cos.push_back({{"monomial", target_ring.format(step.coset_generators[j])},
                   {"class", group_element_to_json(step.coset_classes[j])},
                   {"coset", step.cosets[j]}});
  json out{{"kind", step.kind == LiftStep::Kind::divisor ? "divisor" : "line_bundle"},
           {"prime", step.prime},
           {"extension_class", group_element_to_json(step.extension_class)},
           {"coset_generators", cos},
           {"delta", group_element_to_json(step.delta)}};
  json levels = json::array();
  for (const auto& m : step.level_generators) levels.push_back(target_ring.format(m));
  out["level_generators"] = levels;
  if (step.kind == LiftStep::Kind::line_bundle) out["bundle_class"] = group_element_to_json(step.bundle_class);
  for (const auto& c : step.constraints) {
    json coeff = json::array();
    for (const auto& x : c.coefficients) coeff.push_back(integer_to_json(x));
    cons.push_back({{"monomial", target_ring.format(c.monomial)},
                    {"coefficients", coeff},
                    {"value", integer_to_json(c.value)},
                    {"equation", describe_constraint(target_ring, step, c)},
                    {"exponents_ok", c.exponents_ok},
                    {"unit_ok", c.unit_ok}});
  }
  json alpha = json::array();
  for (const auto& a : step.alpha) alpha.push_back(integer_to_json(a));
  json orders = json::array();
  for (auto b : step.root_orders) orders.push_back(b);
  out["root_orders"] = orders;
  out["new_generators"] = step.new_generators;
  out["constraints"] = cons;
  out["alpha"] = alpha;
  out["solution_count"] = integer_to_json(step.solution_count);
  return out;
}

json result_to_json(const Problem& p, const LiftResult& r) {
  const GradedRing& R = r.stack.ring;
  json images = json::object();
  for (std::size_t i = 0; i < r.images.size(); ++i) images[p.target.ring.generator(i).name] = R.format(r.images[i]);
  json class_map = json::array();
  for (const auto& g : r.class_map) class_map.push_back(group_element_to_json(g));
  json steps = json::array();
  for (const auto& s : r.steps) {
    json sj = step_to_json(p.target.ring, s);
    json pull = json::array(), facs = json::array();
    for (const auto& e : s.pullbacks) pull.push_back(R.format(e));
    for (const auto& e : s.factors) facs.push_back(R.format(e));
    sj["pullbacks"] = pull;
    sj["factors"] = facs;
    steps.push_back(sj);
  }
  json table = json::array();
  for (const auto& [m, e] : r.table) table.push_back({{"monomial", p.target.ring.format(m)}, {"image", R.format(e)}});
  return json{{"schema", "coxlift/1"},
              {"command", "lift"},
              {"problem", p.name},
              {"cyclotomic_order", p.cyclotomic_order},
              {"stack", stack_to_json(r.stack)},
              {"images", images},
              {"class_map", class_map},
              {"steps", steps},
              {"table", table},
              {"verification", report_to_json(r.verification)},
              {"assertions", p.assertions}};
}

LiftResult parse_result(const Problem& p, const json& j) {
  const std::string schema = text_of(require(j, "schema", "result"), "schema");
  if (schema != "coxlift/1") throw InputError("unsupported schema \"" + schema + "\"");
  LiftResult r;
  r.stack = parse_stack(require(j, "stack", "result"), p.source.ring.field(), p.step_cap);
  const json& images = require(j, "images", "result");
  for (const auto& g : p.target.ring.generators())
    r.images.push_back(element_of(r.stack.ring, require(images, g.name.c_str(), "result images"), "image of " + g.name));
  for (const auto& g : require(j, "class_map", "result"))
    r.class_map.push_back(parse_group_element(g, r.stack.pic().ambient_rank()));
  return r;
}

std::string describe_tower(const MdStack& s) {
  std::ostringstream os;
  for (const auto& step : s.tower) {
    if (step.kind == RootStep::Kind::divisor)
      os << "[divisor root: " << s.ring.format(step.section) << ", order " << step.order << "]";
    else
      os << "[line bundle root: " << step.bundle_class.to_string() << ", order " << step.order << "]";
  }
  return os.str();
}

std::string human_log(const Problem& p, const LiftResult& r) {
  const GradedRing& R = r.stack.ring;
  std::ostringstream os;
  if (!p.name.empty()) os << "problem: " << p.name << "\n";
  os << "field: Q(E(" << p.cyclotomic_order << "))\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const LiftStep& s = r.steps[i];
    os << "step " << i + 1 << ": p = " << s.prime << ", class " << s.extension_class.to_string() << "\n";
    os << "  generators:";
    for (const auto& m : s.coset_generators) os << " " << p.target.ring.format(m);
    os << "\n";
    if (s.kind == LiftStep::Kind::line_bundle) {
      os << "  all pullbacks vanish\n";
      os << "  [line bundle root: " << s.bundle_class.to_string() << ", order " << s.prime << "]\n";
      continue;
    }
    for (std::size_t l = 0; l < s.factors.size(); ++l)
      if (s.root_orders[l] != 1) os << "  [divisor root: " << R.format(s.factors[l]) << ", order " << s.prime << "]\n";
    for (const auto& c : s.constraints) os << "  constraint: " << describe_constraint(p.target.ring, s, c) << "\n";
    os << "  alpha: " << s.solution_count.get_str() << " solution" << (s.solution_count == 1 ? "" : "s")
       << ", chose (";
    for (std::size_t k = 0; k < s.alpha.size(); ++k) os << (k ? "," : "") << s.alpha[k].get_str();
    os << ")\n";
  }
  os << "tower: " << (r.stack.tower.empty() ? "(empty)" : describe_tower(r.stack)) << "\n";
  os << "Pic: " << r.stack.pic().to_string() << "\n";
  os << "images:";
  for (std::size_t i = 0; i < r.images.size(); ++i)
    os << (i ? ", " : " ") << p.target.ring.generator(i).name << " -> " << R.format(r.images[i]);
  os << "\n";
  os << "verification:";
  for (const auto& c : r.verification.checks) os << " " << c.name << (c.passed ? " ok" : " FAILED");
  os << "\n";
  for (const auto& c : r.verification.checks)
    for (const auto& f : c.failures) os << "  " << c.name << ": " << f << "\n";
  return os.str();
}

}  // namespace coxlift::io
