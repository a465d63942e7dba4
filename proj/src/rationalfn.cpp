#include "hypres/rationalfn.hpp"

#include <algorithm>
#include <sstream>

namespace hypres {

namespace {

// deterministic order for canonical factor lists
bool poly_less(const MultiPoly& a, const MultiPoly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  for (size_t i = 0; i < ta.size(); ++i) {
    int c = cmp_graded_lex(ta[i].deg, ta[i].mono, tb[i].deg, tb[i].mono);
    if (c != 0) return c < 0;
    if (ta[i].coef != tb[i].coef) return ta[i].coef < tb[i].coef;
  }
  return false;
}

}  // namespace

RationalFn::RationalFn(MultiPoly num, const MultiPoly& den) : num_(std::move(num)) {
  if (den.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  require_same_vars(num_, den, "RationalFn");
  if (!den.is_constant()) den_.emplace_back(den, 1);
  else num_ = num_.scaled(Rational(1) / den.constant_value());
  normalize();
}

RationalFn::RationalFn(MultiPoly num, std::vector<std::pair<MultiPoly, int>> factors)
    : num_(std::move(num)), den_(std::move(factors)) {
  for (auto& [f, e] : den_) {
    if (f.is_zero()) throw std::domain_error("RationalFn: zero denominator factor");
    if (e < 0) throw std::invalid_argument("RationalFn: negative factor exponent");
    require_same_vars(num_, f, "RationalFn");
  }
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // primitive positive-leading factors, scalar residue folded into num
  std::vector<std::pair<MultiPoly, int>> cleaned;
  Rational scale(1);
  for (auto& [f, e] : den_) {
    if (e == 0) continue;
    if (f.is_constant()) {
      scale *= f.constant_value().pow(static_cast<unsigned>(e));
      continue;
    }
    Rational c = f.content();
    MultiPoly prim = f.scaled(Rational(1) / c);
    scale *= c.pow(static_cast<unsigned>(e));
    cleaned.emplace_back(std::move(prim), e);
  }
  num_ = num_.scaled(Rational(1) / scale);
  // merge identical factors
  std::sort(cleaned.begin(), cleaned.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  std::vector<std::pair<MultiPoly, int>> merged;
  for (auto& fe : cleaned) {
    if (!merged.empty() && merged.back().first == fe.first) merged.back().second += fe.second;
    else merged.push_back(std::move(fe));
  }
  // cancel numerator against each factor
  for (auto& [f, e] : merged) {
    while (e > 0) {
      auto q = num_.divide_exact(f);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  den_.clear();
  for (auto& fe : merged)
    if (fe.second > 0) den_.push_back(std::move(fe));
}

MultiPoly RationalFn::den() const {
  if (!vars()) return MultiPoly();
  MultiPoly d = MultiPoly::constant(vars(), Rational(1));
  for (const auto& [f, e] : den_) d *= f.pow(static_cast<unsigned>(e));
  return d;
}

RationalFn RationalFn::operator-() const {
  RationalFn r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  require_same_vars(num_, o.num_, "+");
  // lcm of factored denominators: per-factor max exponent
  std::vector<std::pair<MultiPoly, int>> lcm = den_;
  for (const auto& [f, e] : o.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const auto& fe) { return fe.first == f; });
    if (it == lcm.end()) lcm.emplace_back(f, e);
    else it->second = std::max(it->second, e);
  }
  auto cofactor = [&](const std::vector<std::pair<MultiPoly, int>>& mine) {
    MultiPoly c = MultiPoly::constant(num_.vars(), Rational(1));
    for (const auto& [f, e] : lcm) {
      int have = 0;
      for (const auto& [g, eg] : mine)
        if (g == f) { have = eg; break; }
      if (e > have) c *= f.pow(static_cast<unsigned>(e - have));
    }
    return c;
  };
  MultiPoly new_num = num_ * cofactor(den_) + o.num_ * cofactor(o.den_);
  num_ = std::move(new_num);
  den_ = std::move(lcm);
  normalize();
  return *this;
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  RationalFn r;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_;
  for (const auto& fe : b.den_) r.den_.push_back(fe);
  r.normalize();
  return r;
}

RationalFn RationalFn::reciprocal() const {
  if (is_zero()) throw std::domain_error("RationalFn: reciprocal of zero");
  RationalFn r;
  r.num_ = den();
  if (!num_.is_constant()) r.den_.emplace_back(num_, 1);
  else r.num_ = r.num_.scaled(Rational(1) / num_.constant_value());
  r.normalize();
  return r;
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.reciprocal(); }

RationalFn RationalFn::scaled(const Rational& c) const {
  RationalFn r(*this);
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

bool RationalFn::operator==(const RationalFn& o) const {
  if (is_zero()) return o.is_zero();
  if (o.is_zero()) return false;
  if (num_ == o.num_ && den_ == o.den_) return true;
  return (num_ * o.den()) == (o.num_ * den());
}

RationalFn RationalFn::eval_partial(const std::map<int, Rational>& point) const {
  if (is_zero()) return *this;
  MultiPoly n = num_.eval_partial(point);
  std::vector<std::pair<MultiPoly, int>> fs;
  Rational scale(1);
  for (const auto& [f, e] : den_) {
    MultiPoly fv = f.eval_partial(point);
    if (fv.is_zero()) throw std::domain_error("RationalFn::eval_partial: denominator vanishes");
    if (fv.is_constant()) scale *= fv.constant_value().pow(static_cast<unsigned>(e));
    else fs.emplace_back(std::move(fv), e);
  }
  RationalFn r(n.scaled(Rational(1) / scale), std::move(fs));
  return r;
}

std::string RationalFn::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ") / (";
  bool first = true;
  for (const auto& [f, e] : den_) {
    if (!first) os << " * ";
    first = false;
    os << "(" << f.str() << ")";
    if (e > 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

}  // namespace hypres
