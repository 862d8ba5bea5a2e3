#include "coxlift/mdstack.hpp"

#include <algorithm>
#include <map>

#include "coxlift/errors.hpp"

namespace coxlift {

MdStack canonical_stack(const GradedRing& cox_ring, const std::vector<RingElement>& irrelevant) {
  for (const auto& g : irrelevant) {
    if (g.is_zero()) throw InputError("irrelevant ideal generator is zero");
    cox_ring.degree_of(g);
  }
  MdStack s;
  s.ring = cox_ring;
  s.irrelevant = irrelevant;
  s.base_ring = cox_ring;
  std::vector<GroupElement> id;
  for (std::size_t i = 0; i < cox_ring.grading().ambient_rank(); ++i) id.push_back(cox_ring.grading().generator(i));
  s.coarse_pullback = std::move(id);
  return s;
}

namespace {

void pad_pullback(MdStack& s) {
  if (!s.coarse_pullback) return;
  for (auto& g : *s.coarse_pullback) g = g.padded(s.pic().ambient_rank());
}

}  // namespace

MdStack root_divisor(const MdStack& stack, const RingElement& section, unsigned long order, const std::string& name,
                     bool force) {
  if (order == 0) throw InputError("root order must be positive");
  if (stack.ring.find(name)) throw InputError("generator name '" + name + "' is already in use");
  if (section.is_zero()) throw InputError("cannot take a root of the zero section");
  const RingElement s = stack.ring.normal_form(section);
  if (s.is_zero()) throw InputError("section " + stack.ring.format(section) + " vanishes in the Cox ring");
  if (!force) {
    const Factorization f = stack.ring.h_factorize(s);
    if (f.factors.size() != 1 || f.factors.front().second != 1) throw NonPrimeRoot(stack.ring.format(s));
  }
  const GroupElement d = stack.ring.degree_of(s);
  PushoutRoot po = pushout_root(stack.pic(), d, Integer(order));

  MdStack out = stack;
  out.ring.regrade(std::move(po.group));
  out.ring.add_root(name, s, order, po.delta);
  pad_pullback(out);
  RootStep step;
  step.kind = RootStep::Kind::divisor;
  step.order = order;
  step.section = s;
  step.generator = name;
  out.tower.push_back(std::move(step));
  return out;
}

MdStack root_line_bundle(const MdStack& stack, const GroupElement& bundle_class, unsigned long order) {
  if (order == 0) throw InputError("root order must be positive");
  PushoutRoot po = pushout_root(stack.pic(), bundle_class, Integer(order));
  MdStack out = stack;
  out.ring.regrade(std::move(po.group));
  pad_pullback(out);
  RootStep step;
  step.kind = RootStep::Kind::line_bundle;
  step.order = order;
  step.bundle_class = bundle_class;
  out.tower.push_back(std::move(step));
  return out;
}

MdStack replay_tower(const MdStack& base, const std::vector<RootStep>& tower) {
  MdStack s = base;
  for (const auto& step : tower) {
    if (step.kind == RootStep::Kind::divisor)
      s = root_divisor(s, step.section, step.order, step.generator);
    else
      s = root_line_bundle(s, step.bundle_class.padded(s.pic().ambient_rank()), step.order);
    s.tower.back().lifted_class = step.lifted_class;
  }
  return s;
}

namespace {

using FactorBag = std::vector<std::pair<std::string, unsigned long>>;

void normalize(FactorBag& bag) {
  std::sort(bag.begin(), bag.end());
  FactorBag merged;
  for (auto& [k, e] : bag) {
    if (!merged.empty() && merged.back().first == k)
      merged.back().second += e;
    else
      merged.emplace_back(k, e);
  }
  bag = std::move(merged);
}

std::string show(const FactorBag& bag) {
  std::string out = "{";
  for (std::size_t i = 0; i < bag.size(); ++i) {
    out += (i ? ", " : "") + bag[i].first;
    if (bag[i].second > 1) out += "^" + std::to_string(bag[i].second);
  }
  return out + "}";
}

void enumerate(std::size_t n, unsigned long budget, std::vector<unsigned long>& cur, std::size_t at,
               std::vector<Monomial>& out) {
  if (at == n) {
    out.emplace_back(cur);
    return;
  }
  for (unsigned long e = 0; e <= budget; ++e) {
    cur[at] = e;
    enumerate(n, budget - e, cur, at + 1, out);
  }
  cur[at] = 0;
}

}  // namespace

SpotcheckResult graded_factorial_spotcheck(const MdStack& stack, unsigned long degree_bound) {
  const GradedRing& R = stack.ring;
  const std::size_t n = R.num_generators();
  std::vector<FactorBag> per_generator(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const Factorization f = R.h_factorize(R.variable(i));
      for (const auto& [g, e] : f.factors) per_generator[i].emplace_back(R.format(g), e);
    } catch (const FactorizationRequired&) {
      per_generator[i].emplace_back(R.generator(i).name, 1);
    }
  }

  std::vector<Monomial> monomials;
  std::vector<unsigned long> cur(n);
  enumerate(n, degree_bound, cur, 0, monomials);

  SpotcheckResult result;
  std::map<std::string, std::pair<Monomial, FactorBag>> seen;
  for (const auto& m : monomials) {
    if (m.is_one()) continue;
    const RingElement nf = R.normal_form(R.monomial(m));
    if (nf.is_zero()) continue;
    ++result.monomials_checked;
    FactorBag bag;
    for (std::size_t i = 0; i < m.support(); ++i)
      for (const auto& [k, e] : per_generator[i])
        if (m[i] != 0) bag.emplace_back(k, e * m[i]);
    normalize(bag);
    const std::string key = R.format(R.make_monic(nf).second);
    auto [it, inserted] = seen.try_emplace(key, m, bag);
    if (!inserted && it->second.second != bag) {
      result.passed = false;
      result.counterexample = R.format(it->second.first) + " = " + R.format(m) + " (normal form " + key +
                              ") with factors " + show(it->second.second) + " vs " + show(bag);
      return result;
    }
  }
  return result;
}

}  // namespace coxlift
