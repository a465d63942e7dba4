#include "hypres/derivation.hpp"

namespace hypres {

Derivation::Derivation(std::string name, VarsPtr vars, std::map<int, MultiPoly> action)
    : name_(std::move(name)), vars_(std::move(vars)) {
  for (auto& [v, img] : action) {
    if (v < 0 || v >= vars_->size())
      throw std::domain_error("Derivation: action on unknown variable");
    if (img.is_zero()) continue;
    if (!same_vars(img.vars(), vars_))
      throw std::domain_error("Derivation: image variable table mismatch");
    action_.emplace(v, std::move(img));
  }
}

MultiPoly Derivation::action_on(int var) const {
  auto it = action_.find(var);
  return it == action_.end() ? MultiPoly(vars_) : it->second;
}

MultiPoly Derivation::apply(const MultiPoly& f) const {
  if (f.is_zero()) return f;
  if (!same_vars(f.vars(), vars_))
    throw std::domain_error("Derivation::apply: domain mismatch for " + name_);
  MultiPoly out(vars_);
  for (const auto& [v, img] : action_) {
    MultiPoly df = f.derivative(v);
    if (!df.is_zero()) out += img * df;
  }
  return out;
}

RationalFn Derivation::apply(const RationalFn& f) const {
  if (f.is_zero()) return f;
  // quotient rule over the factored denominator, with two shortcuts: factors
  // killed by the derivation contribute nothing, and factors with
  // d(f_i) = c f_i (logarithmic eigenfunctions like Phi_-) fold into a scalar
  // without raising the exponent
  const auto& factors = f.den_factors();
  if (factors.empty()) return RationalFn(apply(f.num()));
  Rational log_scale(0);
  std::vector<size_t> hard;
  std::vector<MultiPoly> hard_d;
  for (size_t i = 0; i < factors.size(); ++i) {
    MultiPoly dfi = apply(factors[i].first);
    if (dfi.is_zero()) continue;
    auto q = dfi.divide_exact(factors[i].first);
    if (q && q->is_constant()) {
      log_scale += q->constant_value() * Rational(static_cast<long>(factors[i].second));
      continue;
    }
    hard.push_back(i);
    hard_d.push_back(std::move(dfi));
  }
  MultiPoly new_num = apply(f.num());
  if (!log_scale.is_zero()) new_num -= f.num().scaled(log_scale);
  std::vector<std::pair<MultiPoly, int>> new_den = factors;
  if (!hard.empty()) {
    MultiPoly prod_hard = factors[hard[0]].first;
    for (size_t h = 1; h < hard.size(); ++h) prod_hard *= factors[hard[h]].first;
    new_num *= prod_hard;
    for (size_t h = 0; h < hard.size(); ++h) {
      MultiPoly rest = MultiPoly::constant(
          f.vars(), Rational(static_cast<long>(factors[hard[h]].second)));
      for (size_t h2 = 0; h2 < hard.size(); ++h2)
        if (h2 != h) rest *= factors[hard[h2]].first;
      new_num -= f.num() * hard_d[h] * rest;
    }
    for (size_t h : hard) new_den[h].second += 1;
  }
  return RationalFn(std::move(new_num), std::move(new_den));
}

Derivation Derivation::scaled(const Rational& c, const std::string& new_name) const {
  std::map<int, MultiPoly> act;
  if (!c.is_zero())
    for (const auto& [v, img] : action_) act.emplace(v, img.scaled(c));
  return Derivation(new_name, vars_, std::move(act));
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  if (!same_vars(a.vars_, b.vars_)) throw std::domain_error("Derivation +: domain mismatch");
  std::map<int, MultiPoly> act = a.action_;
  for (const auto& [v, img] : b.action_) {
    auto it = act.find(v);
    if (it == act.end()) act.emplace(v, img);
    else {
      it->second += img;
      if (it->second.is_zero()) act.erase(it);
    }
  }
  return Derivation(a.name_ + "+" + b.name_, a.vars_, std::move(act));
}

Derivation operator-(const Derivation& a, const Derivation& b) {
  return a + b.scaled(Rational(-1), "-" + b.name());
}

MultiPoly derive(const Derivation& D, const MultiPoly& f) { return D.apply(f); }
RationalFn derive(const Derivation& D, const RationalFn& f) { return D.apply(f); }

Derivation commutator(const Derivation& D1, const Derivation& D2) {
  if (!same_vars(D1.vars(), D2.vars()))
    throw std::domain_error("commutator: domain mismatch");
  std::map<int, MultiPoly> act;
  auto add_part = [&](const Derivation& outer, const Derivation& inner, const Rational& sign) {
    for (const auto& [v, img] : inner.action()) {
      MultiPoly d = outer.apply(img).scaled(sign);
      if (d.is_zero()) continue;
      auto it = act.find(v);
      if (it == act.end()) act.emplace(v, std::move(d));
      else {
        it->second += d;
        if (it->second.is_zero()) act.erase(it);
      }
    }
  };
  add_part(D1, D2, Rational(1));
  add_part(D2, D1, Rational(-1));
  return Derivation("[" + D1.name() + "," + D2.name() + "]", D1.vars(), std::move(act));
}

}  // namespace hypres
