#include "hypres/multipoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace hypres {

std::atomic<size_t>& poly_budget() {
  static std::atomic<size_t> budget = [] {
    if (const char* env = std::getenv("HYPRES_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    }
    return static_cast<size_t>(1000000);
  }();
  return budget;
}

void check_budget(size_t terms) {
  size_t b = poly_budget().load(std::memory_order_relaxed);
  if (terms > b) throw BudgetExceeded(terms, b);
}

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    auto [it, fresh] = index_.emplace(names_[i], i);
    if (!fresh) throw std::invalid_argument("VarTable: duplicate variable " + names_[i]);
  }
}

int VarTable::index_of(const std::string& n) const {
  auto it = index_.find(n);
  return it == index_.end() ? -1 : it->second;
}

int cmp_graded_lex(uint32_t deg_a, const Expo& a, uint32_t deg_b, const Expo& b) {
  if (deg_a != deg_b) return deg_a < deg_b ? -1 : 1;
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

void require_same_vars(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (!a.vars() || !b.vars()) return;  // absorbing zero
  if (!same_vars(a.vars(), b.vars()))
    throw std::domain_error(std::string("MultiPoly: variable table mismatch in ") + op);
}

static uint32_t expo_degree(const Expo& e) {
  uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

MultiPoly MultiPoly::constant(VarsPtr vars, Rational c) {
  MultiPoly p(std::move(vars));
  if (!c.is_zero()) {
    p.terms_.push_back(Term{0, Expo(p.vars_->size(), 0), std::move(c)});
  }
  return p;
}

MultiPoly MultiPoly::variable(VarsPtr vars, int var) {
  if (var < 0 || var >= vars->size()) throw std::out_of_range("MultiPoly::variable index");
  MultiPoly p(std::move(vars));
  Expo e(p.vars_->size(), 0);
  e[var] = 1;
  p.terms_.push_back(Term{1, std::move(e), Rational(1)});
  return p;
}

MultiPoly MultiPoly::variable(VarsPtr vars, const std::string& name) {
  int idx = vars->index_of(name);
  if (idx < 0) throw std::domain_error("MultiPoly::variable: unknown variable " + name);
  return variable(std::move(vars), idx);
}

MultiPoly MultiPoly::monomial(VarsPtr vars, Expo e, Rational c) {
  if (static_cast<int>(e.size()) != vars->size())
    throw std::invalid_argument("MultiPoly::monomial: exponent size mismatch");
  MultiPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_.push_back(Term{expo_degree(e), std::move(e), std::move(c)});
  return p;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::domain_error("MultiPoly::constant_value on non-constant");
  return terms_[0].coef;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
  return d;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly::leading_term of zero");
  return terms_[0];
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_vars(*this, o, "+");
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = cmp_graded_lex(terms_[i].deg, terms_[i].mono, o.terms_[j].deg, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coef + o.terms_[j].coef;
      if (!s.is_zero()) out.push_back(Term{terms_[i].deg, terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  check_budget(out.size());
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b, "*");
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  const int nv = a.vars() ? a.vars()->size() : b.vars()->size();
  check_budget(a.terms().size() * b.terms().size());
  std::vector<Term> prod;
  prod.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Term t;
      t.deg = ta.deg + tb.deg;
      t.mono.resize(static_cast<size_t>(nv));
      for (int v = 0; v < nv; ++v)
        t.mono[static_cast<size_t>(v)] =
            static_cast<uint16_t>(ta.mono[static_cast<size_t>(v)] + tb.mono[static_cast<size_t>(v)]);
      t.coef = ta.coef * tb.coef;
      prod.push_back(std::move(t));
    }
  }
  std::sort(prod.begin(), prod.end(), [](const Term& x, const Term& y) {
    return cmp_graded_lex(x.deg, x.mono, y.deg, y.mono) > 0;
  });
  std::vector<Term> out;
  out.reserve(prod.size());
  for (auto& t : prod) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
      if (out.back().coef.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  return MultiPoly::from_sorted_terms(a.vars() ? a.vars() : b.vars(), std::move(out));
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return MultiPoly(vars_);
  MultiPoly r(*this);
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  if (!vars_) throw std::domain_error("MultiPoly::pow on null-vars zero");
  MultiPoly r = constant(vars_, Rational(1));
  MultiPoly base(*this);
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (!same_vars(vars_, o.vars_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
  }
  return true;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(vars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Term d;
    d.mono = t.mono;
    d.coef = t.coef * Rational(static_cast<long>(t.mono[var]));
    d.mono[var] -= 1;
    d.deg = t.deg - 1;
    r.terms_.push_back(std::move(d));
  }
  // term order is preserved by lowering one variable uniformly only within
  // equal-degree blocks, so re-sort to stay canonical
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
    return cmp_graded_lex(a.deg, a.mono, b.deg, b.mono) > 0;
  });
  return r;
}

static bool mono_divides(const Expo& a, const Expo& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

// divides f by the linear polynomial d = c_v x_v + rest (rest free of x_v)
// via synthetic division: with g := -rest / c_v, write f = sum_e c_e x_v^e,
// run b_D = c_D, b_{e} = c_e + b_{e+1} g; the remainder b_0 must vanish and
// the quotient is (sum_{e >= 1} b_e x_v^{e-1}) / c_v.
std::optional<MultiPoly> divide_by_linear(const MultiPoly& f, const MultiPoly& d) {
  const auto& lead = d.leading_term();
  int v = -1;
  for (size_t i = 0; i < lead.mono.size(); ++i)
    if (lead.mono[i] == 1) {
      v = static_cast<int>(i);
      break;
    }
  Rational cv = lead.coef;
  MultiPoly g(d.vars());
  for (const auto& t : d.terms()) {
    if (t.mono[static_cast<size_t>(v)] > 0) continue;
    g += MultiPoly::monomial(d.vars(), t.mono, t.coef * Rational(-1) / cv);
  }
  const int deg = f.degree_in(v);
  // bucket the terms of f by their x_v exponent, with that exponent removed
  std::vector<std::vector<Term>> buckets(static_cast<size_t>(deg) + 1);
  for (const auto& t : f.terms()) {
    Term t2 = t;
    uint16_t e = t2.mono[static_cast<size_t>(v)];
    t2.mono[static_cast<size_t>(v)] = 0;
    t2.deg = t.deg - e;
    buckets[e].push_back(std::move(t2));
  }
  auto bucket_poly = [&](size_t e) {
    auto& b = buckets[e];
    std::sort(b.begin(), b.end(), [](const Term& x, const Term& y) {
      return cmp_graded_lex(x.deg, x.mono, y.deg, y.mono) > 0;
    });
    return MultiPoly::from_sorted_terms(f.vars(), std::move(b));
  };
  MultiPoly carry = bucket_poly(static_cast<size_t>(deg));
  std::vector<MultiPoly> q_coeffs(static_cast<size_t>(deg));
  for (int e = deg - 1; e >= 0; --e) {
    q_coeffs[static_cast<size_t>(e)] = carry;  // coefficient of x_v^e in the monic quotient
    carry = bucket_poly(static_cast<size_t>(e)) + (g.is_zero() ? MultiPoly(f.vars()) : carry * g);
  }
  if (!carry.is_zero()) return std::nullopt;
  MultiPoly q(f.vars());
  for (int e = 0; e < deg; ++e) {
    if (q_coeffs[static_cast<size_t>(e)].is_zero()) continue;
    Expo xe(static_cast<size_t>(f.vars()->size()), 0);
    xe[static_cast<size_t>(v)] = static_cast<uint16_t>(e);
    q += q_coeffs[static_cast<size_t>(e)] * MultiPoly::monomial(f.vars(), std::move(xe), Rational(1));
  }
  return q.scaled(Rational(1) / cv);
}

}  // namespace

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  require_same_vars(*this, d, "divide_exact");
  if (d.is_zero()) throw std::domain_error("MultiPoly::divide_exact by zero");
  if (is_zero()) return MultiPoly(vars_);
  if (d.is_constant()) return scaled(Rational(1) / d.constant_value());
  if (d.total_degree() == 1) return divide_by_linear(*this, d);
  MultiPoly r(*this);
  std::vector<Term> q;
  const Term& dl = d.leading_term();
  while (!r.is_zero()) {
    const Term& rl = r.leading_term();
    if (rl.deg < dl.deg || !mono_divides(dl.mono, rl.mono)) return std::nullopt;
    Term t;
    t.mono.resize(rl.mono.size());
    for (size_t i = 0; i < rl.mono.size(); ++i)
      t.mono[i] = static_cast<uint16_t>(rl.mono[i] - dl.mono[i]);
    t.deg = rl.deg - dl.deg;
    t.coef = rl.coef / dl.coef;
    MultiPoly tm = monomial(vars_, t.mono, t.coef);
    r -= tm * d;
    q.push_back(std::move(t));
  }
  // quotient terms were produced in strictly decreasing order
  return from_sorted_terms(vars_, std::move(q));
}

MultiPoly MultiPoly::reduce_mod(std::span<const MultiPoly> basis, size_t max_steps) const {
  MultiPoly r(*this);
  size_t steps = 0;
  bool changed = true;
  while (changed && !r.is_zero()) {
    changed = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      const Term& gl = g.leading_term();
      // scan r's terms for one divisible by the leading monomial of g
      for (size_t i = 0; i < r.terms_.size(); ++i) {
        const Term& t = r.terms_[i];
        if (t.deg >= gl.deg && mono_divides(gl.mono, t.mono)) {
          Expo q(t.mono.size());
          for (size_t k = 0; k < q.size(); ++k)
            q[k] = static_cast<uint16_t>(t.mono[k] - gl.mono[k]);
          MultiPoly sub = monomial(r.vars_, std::move(q), t.coef / gl.coef);
          r -= sub * g;
          changed = true;
          if (++steps > max_steps) return r;
          break;
        }
      }
      if (changed) break;
    }
  }
  return r;
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.numerator().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.denominator().get_mpz_t());
  }
  Rational c{mpq_class(num_gcd, den_lcm)};
  if (terms_[0].coef.sign() < 0) c = -c;
  return c;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  if (!vars_) return Rational(0);
  if (static_cast<int>(point.size()) != vars_->size())
    throw std::invalid_argument("MultiPoly::eval: point size mismatch");
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational m = t.coef;
    for (size_t v = 0; v < point.size(); ++v) {
      if (t.mono[v] > 0) m *= point[v].pow(t.mono[v]);
    }
    acc += m;
  }
  return acc;
}

MultiPoly MultiPoly::eval_partial(const std::map<int, Rational>& point) const {
  if (!vars_ || terms_.empty()) return *this;
  // power tables for the substituted variables
  std::map<int, std::vector<Rational>> powers;
  for (const auto& [v, val] : point) {
    int d = degree_in(v);
    std::vector<Rational> tab(static_cast<size_t>(d) + 1, Rational(1));
    for (int e = 1; e <= d; ++e) tab[static_cast<size_t>(e)] = tab[static_cast<size_t>(e - 1)] * val;
    powers.emplace(v, std::move(tab));
  }
  std::vector<Term> partial;
  partial.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = t.coef;
    Expo e = t.mono;
    for (const auto& [v, tab] : powers) {
      if (e[static_cast<size_t>(v)] > 0) {
        c *= tab[e[static_cast<size_t>(v)]];
        e[static_cast<size_t>(v)] = 0;
        if (c.is_zero()) break;
      }
    }
    if (c.is_zero()) continue;
    partial.push_back(Term{expo_degree(e), std::move(e), std::move(c)});
  }
  std::sort(partial.begin(), partial.end(), [](const Term& x, const Term& y) {
    return cmp_graded_lex(x.deg, x.mono, y.deg, y.mono) > 0;
  });
  std::vector<Term> out;
  out.reserve(partial.size());
  for (auto& t : partial) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
      if (out.back().coef.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  return from_sorted_terms(vars_, std::move(out));
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    first = false;
    bool has_var = t.deg > 0;
    if (!has_var || !c.is_one()) os << c.str();
    bool printed = !has_var || !c.is_one();
    for (size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (printed) os << "*";
      os << vars_->name(static_cast<int>(v));
      if (t.mono[v] > 1) os << "^" << static_cast<int>(t.mono[v]);
      printed = true;
    }
  }
  return os.str();
}

MultiPoly MultiPoly::from_sorted_terms(VarsPtr vars, std::vector<Term> terms) {
  check_budget(terms.size());
  MultiPoly p(std::move(vars));
  p.terms_ = std::move(terms);
  return p;
}

}  // namespace hypres
