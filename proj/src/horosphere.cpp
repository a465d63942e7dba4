#include "hypres/horosphere.hpp"

#include <algorithm>

namespace hypres {

HoroContext make_horo_context(int n) {
  if (n < 2) throw std::invalid_argument("make_horo_context: n must be >= 2");
  HoroContext ctx;
  ctx.n = n;
  ctx.ring = make_frame_ring(n, true);
  const FrameRing& ring = ctx.ring;
  ctx.A = to_derivation(generator(n, GenKind::A), ring, "A");
  for (int k = 1; k <= n; ++k) {
    ctx.Nplus.push_back(to_derivation(generator(n, GenKind::Nplus, k), ring,
                                      "N+" + std::to_string(k)));
    ctx.Nminus.push_back(to_derivation(generator(n, GenKind::Nminus, k), ring,
                                       "N-" + std::to_string(k)));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      ctx.R.emplace(std::make_pair(i, j),
                    to_derivation(generator(n, GenKind::R, i, j), ring,
                                  "R" + std::to_string(i) + std::to_string(j)));

  ctx.lambda = RationalFn(ring.var(ring.lambda));
  ctx.phi_minus = ring.phi_minus();
  RationalFn phi(ctx.phi_minus);
  for (int k = 1; k <= n; ++k) {
    // N^+_k(Phi_-) = 2 f_k[0]
    MultiPoly num = ring.var(ring.f(k, 0)).scaled(Rational(2));
    ctx.twist_plus.push_back(RationalFn(std::move(num), ctx.phi_minus));
  }
  for (int i = 1; i <= n + 1; ++i) {
    MultiPoly num = ring.var(ring.x(i)) - ring.var(ring.xi(i));
    ctx.y.push_back(RationalFn(std::move(num), ctx.phi_minus));
  }
  for (int k = 1; k <= n; ++k) {
    // tau_-(f_k)_i = f_k[i] - <f_k, y> y_i  (spatial entries only)
    RationalFn fy = ctx.zero();
    for (int s = 1; s <= n + 1; ++s) fy += RationalFn(ring.var(ring.f(k, s))) * ctx.y[s - 1];
    std::vector<RationalFn> row;
    for (int i = 1; i <= n + 1; ++i)
      row.push_back(RationalFn(ring.var(ring.f(k, i))) - fy * ctx.y[i - 1]);
    ctx.tau_f.push_back(std::move(row));
  }
  for (int a = 0; a <= n + 1; ++a) {
    for (int b = a; b <= n + 1; ++b) {
      MultiPoly q(ring.vars);
      for (int i = 0; i <= n + 1; ++i) {
        MultiPoly term = ring.var(ring.col(a, i)) * ring.var(ring.col(b, i));
        q += (i == 0) ? -term : term;
      }
      Rational eta;
      if (a == b) eta = Rational(a == 0 ? -1 : 1);
      q -= MultiPoly::constant(ring.vars, eta);
      ctx.constraints.push_back(std::move(q));
    }
  }
  return ctx;
}

namespace {

SymTensor<RationalFn> zero_tensor(const HoroContext& ctx, int degree) {
  return SymTensor<RationalFn>(ctx.n, degree, ctx.zero());
}

SymTensor<RationalFn> basis_vector(const HoroContext& ctx, int k) {
  return SymTensor<RationalFn>::basis(ctx.n, {static_cast<uint8_t>(k)}, ctx.one());
}

const Derivation& pick_gen(const HoroContext& ctx, Gen g, int k, int j) {
  switch (g) {
    case Gen::A:
      return ctx.A;
    case Gen::Nplus:
      return ctx.Nplus.at(static_cast<size_t>(k - 1));
    case Gen::Nminus:
      return ctx.Nminus.at(static_cast<size_t>(k - 1));
    case Gen::Rot: {
      auto it = ctx.R.find({std::min(k, j), std::max(k, j)});
      if (it == ctx.R.end()) throw std::out_of_range("lie_derivative: rotation index");
      return it->second;
    }
  }
  throw std::logic_error("pick_gen");
}

RationalFn twist_factor(const HoroContext& ctx, Gen g, int k) {
  switch (g) {
    case Gen::A:
      return RationalFn::constant(ctx.ring.vars, Rational(-1));
    case Gen::Nplus:
      return ctx.twist_plus.at(static_cast<size_t>(k - 1));
    case Gen::Nminus:
    case Gen::Rot:
      return ctx.zero();
  }
  throw std::logic_error("twist_factor");
}

}  // namespace

TwistedSection lie_derivative(const HoroContext& ctx, Gen g, int k, const TwistedSection& u,
                              int j) {
  const Derivation& d = pick_gen(ctx, g, k, j);
  RationalFn tw = twist_factor(ctx, g, k);
  bool has_twist = !tw.is_zero();
  if (has_twist) tw = ctx.lambda * tw;
  SymTensor<RationalFn> out = zero_tensor(ctx, u.degree());
  for (const auto& [key, c] : u.body.coeffs()) {
    RationalFn dc = d.apply(c);
    if (has_twist) dc += tw * c;
    out.add_coeff(key, dc);
  }
  return {ctx.n, std::move(out)};
}

TwistedSection flow_derivative_A(const HoroContext& ctx, const TwistedSection& u) {
  return lie_derivative(ctx, Gen::A, 0, u);
}

namespace {

TwistedSection d_pm_impl(const HoroContext& ctx, const TwistedSection& u, Gen g) {
  TwistedSection out{ctx.n, zero_tensor(ctx, u.degree() + 1)};
  for (int k = 1; k <= ctx.n; ++k) {
    TwistedSection lk = lie_derivative(ctx, g, k, u);
    out.body += sym_product(basis_vector(ctx, k), lk.body);
  }
  return out;
}

TwistedSection div_pm_impl(const HoroContext& ctx, const TwistedSection& u, Gen g) {
  if (u.degree() == 0) throw std::domain_error("div: nothing to contract in degree 0");
  TwistedSection out{ctx.n, zero_tensor(ctx, u.degree() - 1)};
  for (int k = 1; k <= ctx.n; ++k) {
    TwistedSection lk = lie_derivative(ctx, g, k, u);
    out.body -= contract(basis_vector(ctx, k), lk.body);
  }
  return out;
}

TwistedSection delta_pm_impl(const HoroContext& ctx, const TwistedSection& u, Gen g) {
  // Delta_pm = [div_pm, d_pm]; on degree 0 the d o div term is absent
  TwistedSection first = div_pm_impl(ctx, d_pm_impl(ctx, u, g), g);
  if (u.degree() == 0) return first;
  return first - d_pm_impl(ctx, div_pm_impl(ctx, u, g), g);
}

}  // namespace

TwistedSection d_minus(const HoroContext& ctx, const TwistedSection& u) {
  return d_pm_impl(ctx, u, Gen::Nminus);
}
TwistedSection d_plus(const HoroContext& ctx, const TwistedSection& u) {
  return d_pm_impl(ctx, u, Gen::Nplus);
}
TwistedSection div_minus(const HoroContext& ctx, const TwistedSection& u) {
  return div_pm_impl(ctx, u, Gen::Nminus);
}
TwistedSection div_plus(const HoroContext& ctx, const TwistedSection& u) {
  return div_pm_impl(ctx, u, Gen::Nplus);
}
TwistedSection delta_minus(const HoroContext& ctx, const TwistedSection& u) {
  return delta_pm_impl(ctx, u, Gen::Nminus);
}
TwistedSection delta_plus(const HoroContext& ctx, const TwistedSection& u) {
  return delta_pm_impl(ctx, u, Gen::Nplus);
}
TwistedSection lefschetz_L(const HoroContext& ctx, const TwistedSection& u) {
  return {ctx.n, lefschetz_L(u.body)};
}
TwistedSection lefschetz_Lambda(const HoroContext& ctx, const TwistedSection& u) {
  return {ctx.n, lefschetz_Lambda(u.body)};
}

std::string zero_level_name(ZeroLevel level) {
  switch (level) {
    case ZeroLevel::Identical:
      return "identically-zero";
    case ZeroLevel::ModConstraints:
      return "zero-mod-frame-constraints";
    case ZeroLevel::AtSamples:
      return "exact-zero-at-sampled-group-points";
    case ZeroLevel::NotZero:
      return "nonzero";
  }
  return "?";
}

GroupSampler::GroupSampler(const HoroContext& ctx, uint64_t seed, int count) {
  Rng rng(seed, "group-sampler");
  for (int i = 0; i < count; ++i) {
    GroupSample s = random_group_point(ctx.n, rng);
    std::map<int, Rational> pt;
    for (auto& [idx, v] : s.assignment(ctx.ring)) pt.emplace(idx, v);
    points_.push_back(std::move(pt));
  }
}

ZeroCheck verify_zero(const HoroContext& ctx, const RationalFn& f, const GroupSampler& smp,
                      size_t reduction_term_limit) {
  if (f.is_zero()) return {ZeroLevel::Identical, ""};
  // sample first: evaluation is cheap and catches genuine failures quickly;
  // the ideal-reduction pass afterwards only upgrades the certificate
  size_t used = 0;
  for (const auto& pt : smp.points()) {
    RationalFn v;
    try {
      v = f.eval_partial(pt);
    } catch (const std::domain_error&) {
      continue;  // denominator vanished at this sample; try the next
    }
    ++used;
    if (!v.is_zero()) return {ZeroLevel::NotZero, v.num().str()};
  }
  if (used == 0) return {ZeroLevel::NotZero, "no usable sample points"};
  if (f.num().num_terms() <= reduction_term_limit) {
    MultiPoly reduced = f.num().reduce_mod(ctx.constraints, 20000);
    if (reduced.is_zero()) return {ZeroLevel::ModConstraints, ""};
  }
  return {ZeroLevel::AtSamples, ""};
}

ZeroCheck verify_zero(const HoroContext& ctx, const TwistedSection& u, const GroupSampler& smp,
                      size_t reduction_term_limit) {
  ZeroCheck best{ZeroLevel::Identical, ""};
  for (const auto& [key, c] : u.body.coeffs()) {
    ZeroCheck zc = verify_zero(ctx, c, smp, reduction_term_limit);
    if (zc.level == ZeroLevel::NotZero) return zc;
    if (static_cast<int>(zc.level) > static_cast<int>(best.level)) best = zc;
  }
  return best;
}

VarsPtr BoundaryTensor::make_yvars(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n + 1; ++i) names.push_back("y" + std::to_string(i));
  return std::make_shared<VarTable>(std::move(names));
}

BoundaryTensor BoundaryTensor::scalar(int n, MultiPoly p) {
  BoundaryTensor t;
  t.n = n;
  t.m = 0;
  t.yvars = p.vars();
  t.comps.emplace(std::vector<uint8_t>{}, std::move(p));
  return t;
}

BoundaryTensor BoundaryTensor::scalar_constant(int n, Rational c) {
  auto yv = make_yvars(n);
  return scalar(n, MultiPoly::constant(yv, std::move(c)));
}

BoundaryTensor BoundaryTensor::scalar_coordinate(int n, int i) {
  auto yv = make_yvars(n);
  return scalar(n, MultiPoly::variable(yv, i - 1));
}

BoundaryTensor BoundaryTensor::one_form_constant(int n, const std::vector<Rational>& a) {
  if (static_cast<int>(a.size()) != n + 1)
    throw std::invalid_argument("one_form_constant: needs n+1 ambient components");
  BoundaryTensor t;
  t.n = n;
  t.m = 1;
  t.yvars = make_yvars(n);
  for (int i = 1; i <= n + 1; ++i) {
    if (a[static_cast<size_t>(i - 1)].is_zero()) continue;
    t.comps.emplace(std::vector<uint8_t>{static_cast<uint8_t>(i)},
                    MultiPoly::constant(t.yvars, a[static_cast<size_t>(i - 1)]));
  }
  return t;
}

BoundaryTensor BoundaryTensor::trace_free_two_tensor(int n, const RMatrix& q) {
  if (static_cast<int>(q.size()) != n + 1)
    throw std::invalid_argument("trace_free_two_tensor: Q must be (n+1)x(n+1)");
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (q[i][j] != q[j][i]) throw std::invalid_argument("trace_free_two_tensor: Q not symmetric");
  BoundaryTensor t;
  t.n = n;
  t.m = 2;
  t.yvars = make_yvars(n);
  // s(y) = (tr Q - Q(y,y)) / n
  MultiPoly s(t.yvars);
  Rational tr(0);
  for (int i = 0; i <= n; ++i) tr += q[i][i];
  s += MultiPoly::constant(t.yvars, tr);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (q[i][j].is_zero()) continue;
      s -= (MultiPoly::variable(t.yvars, i) * MultiPoly::variable(t.yvars, j)).scaled(q[i][j]);
    }
  s = s.scaled(Rational(1, n));
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i; j <= n + 1; ++j) {
      MultiPoly comp = MultiPoly::constant(t.yvars, q[i - 1][j - 1]);
      if (i == j) comp = (comp - s).scaled(Rational(1, 2));
      if (comp.is_zero()) continue;
      t.comps.emplace(std::vector<uint8_t>{static_cast<uint8_t>(i), static_cast<uint8_t>(j)},
                      std::move(comp));
    }
  return t;
}

namespace {

// composes an ambient-coordinate polynomial with the boundary map B_-
RationalFn compose_boundary(const HoroContext& ctx, const MultiPoly& p) {
  RationalFn acc = ctx.zero();
  for (const auto& t : p.terms()) {
    RationalFn mono = RationalFn::constant(ctx.ring.vars, t.coef);
    for (size_t v = 0; v < t.mono.size(); ++v)
      for (int e = 0; e < t.mono[v]; ++e) mono *= ctx.y[v];
    acc += mono;
  }
  return acc;
}

}  // namespace

TwistedSection build_twisted_state(const HoroContext& ctx, const BoundaryTensor& omega) {
  if (omega.n != ctx.n) throw std::domain_error("build_twisted_state: dimension mismatch");
  const int m = omega.m;
  SymTensor<RationalFn> body = SymTensor<RationalFn>(ctx.n, m, ctx.zero());
  if (m == 0) {
    RationalFn val = compose_boundary(ctx, omega.comps.at({}));
    body.set_coeff({}, val);
    return {ctx.n, std::move(body)};
  }
  // enumerate sorted multisets K over {1..n} of size m
  std::vector<std::vector<uint8_t>> keys;
  std::vector<uint8_t> key(static_cast<size_t>(m), 1);
  while (true) {
    keys.push_back(key);
    int pos = m - 1;
    while (pos >= 0 && key[static_cast<size_t>(pos)] == ctx.n) --pos;
    if (pos < 0) break;
    key[static_cast<size_t>(pos)] += 1;
    for (int q = pos + 1; q < m; ++q) key[static_cast<size_t>(q)] = key[static_cast<size_t>(pos)];
  }
  std::vector<size_t> perm(static_cast<size_t>(m));
  for (const auto& k : keys) {
    // u_K = sum_I omega_I(B_-) (dy^I)(tau f_{k_1}, ..., tau f_{k_m})
    RationalFn u_k = ctx.zero();
    for (const auto& [idx, comp] : omega.comps) {
      RationalFn cval = compose_boundary(ctx, comp);
      if (cval.is_zero()) continue;
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      RationalFn eval_sum = ctx.zero();
      do {
        RationalFn prod = ctx.one();
        for (int t = 0; t < m; ++t) {
          int frame_k = k[static_cast<size_t>(perm[static_cast<size_t>(t)])];
          int ambient_i = idx[static_cast<size_t>(t)];
          prod *= ctx.tau_f[static_cast<size_t>(frame_k - 1)][static_cast<size_t>(ambient_i - 1)];
        }
        eval_sum += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      u_k += cval * eval_sum;
    }
    // basis coefficient: divide the evaluation by the multiplicity factorial
    long mf = detail::multiplicity_factorial(k);
    if (mf != 1) u_k = u_k.scaled(Rational(1, mf));
    body.set_coeff(k, u_k);
  }
  return {ctx.n, std::move(body)};
}

StateChecks check_twisted_state(const HoroContext& ctx, const TwistedSection& u,
                                const GroupSampler& smp) {
  StateChecks checks;
  TwistedSection au = flow_derivative_A(ctx, u);
  TwistedSection lam_u = u.scaled(ctx.lambda);
  checks.a_eigen = verify_zero(ctx, au + lam_u, smp);
  ZeroCheck worst{ZeroLevel::Identical, ""};
  for (int k = 1; k <= ctx.n; ++k) {
    TwistedSection nk = lie_derivative(ctx, Gen::Nminus, k, u);
    ZeroCheck zc = verify_zero(ctx, nk, smp);
    if (zc.level == ZeroLevel::NotZero) {
      worst = zc;
      break;
    }
    if (static_cast<int>(zc.level) > static_cast<int>(worst.level)) worst = zc;
  }
  checks.nabla_minus = worst;
  if (u.degree() >= 2)
    checks.trace = verify_zero(ctx, lefschetz_Lambda(ctx, u), smp);
  else
    checks.trace = {ZeroLevel::Identical, ""};
  return checks;
}

ZeroCheck check_equivariance(const HoroContext& ctx, const TwistedSection& u,
                             const GroupSampler& smp) {
  // R_ij u_K = sum_l ( u_{K[l->i]} delta_{j k_l} - u_{K[l->j]} delta_{i k_l} )
  // on the evaluation components u_K = c_{sort K} * multiplicity factorial.
  auto eval_comp = [&](std::vector<uint8_t> k) {
    std::sort(k.begin(), k.end());
    long mf = detail::multiplicity_factorial(k);
    RationalFn c = u.body.coeff(k);
    return mf == 1 ? c : c.scaled(Rational(mf));
  };
  ZeroCheck worst{ZeroLevel::Identical, ""};
  for (const auto& [key, coeff] : u.body.coeffs()) {
    for (int i = 1; i <= ctx.n; ++i)
      for (int j = i + 1; j <= ctx.n; ++j) {
        RationalFn lhs = ctx.R.at({i, j}).apply(eval_comp(key));
        RationalFn rhs = ctx.zero();
        for (size_t l = 0; l < key.size(); ++l) {
          std::vector<uint8_t> swapped = key;
          if (key[l] == j) {
            swapped[l] = static_cast<uint8_t>(i);
            rhs += eval_comp(swapped);
          }
          if (key[l] == i) {
            swapped[l] = static_cast<uint8_t>(j);
            rhs -= eval_comp(swapped);
          }
        }
        ZeroCheck zc = verify_zero(ctx, lhs - rhs, smp);
        if (zc.level == ZeroLevel::NotZero) return zc;
        if (static_cast<int>(zc.level) > static_cast<int>(worst.level)) worst = zc;
      }
  }
  return worst;
}

InversionReport verify_horocycle_inversion(const HoroContext& ctx, int m, int k,
                                           const BoundaryTensor& omega,
                                           const GroupSampler& smp) {
  if (m < 0 || k < 0 || 2 * k > m)
    throw std::invalid_argument("verify_horocycle_inversion: need 0 <= 2k <= m");
  const int r = m - 2 * k;
  if (omega.m != r)
    throw std::invalid_argument("verify_horocycle_inversion: omega degree must be m - 2k");
  InversionReport rep;
  rep.n = ctx.n;
  rep.m = m;
  rep.k = k;
  rep.r = r;

  TwistedSection u = build_twisted_state(ctx, omega);
  rep.state = check_twisted_state(ctx, u, smp);
  if (!rep.state.ok()) {
    rep.identity = {ZeroLevel::NotZero, "state preconditions failed"};
    rep.pass = false;
    return rep;
  }

  // left side: (d_-)^m (Delta_+)^k (div_+)^r u
  TwistedSection lhs = u;
  for (int t = 0; t < r; ++t) lhs = div_plus(ctx, lhs);
  for (int t = 0; t < k; ++t) lhs = delta_plus(ctx, lhs);
  for (int t = 0; t < m; ++t) lhs = d_minus(ctx, lhs);

  // right side: L^k P_{r,k}(A) u, with P applied as an operator (Horner)
  BandPolynomial p = p_rk(ctx.n, r, k);
  rep.p_polynomial = p.str();
  TwistedSection acc = u.scaled(RationalFn::constant(ctx.ring.vars, p.coeffs.back()));
  for (size_t i = p.coeffs.size() - 1; i-- > 0;) {
    acc = flow_derivative_A(ctx, acc);
    acc = acc + u.scaled(RationalFn::constant(ctx.ring.vars, p.coeffs[i]));
  }
  TwistedSection rhs = acc;
  for (int t = 0; t < k; ++t) rhs = lefschetz_L(ctx, rhs);

  rep.identity = verify_zero(ctx, lhs - rhs, smp);
  rep.pass = rep.identity.ok();
  return rep;
}

TwistedSection random_twisted_section(const HoroContext& ctx, int degree, Rng& rng,
                                      int phi_power, int nterms) {
  SymTensor<RationalFn> body(ctx.n, degree, ctx.zero());
  // enumerate the multiset basis and give each component a small random
  // rational function with a Phi_- power in the denominator
  std::vector<std::vector<uint8_t>> keys;
  if (degree == 0) {
    keys.push_back({});
  } else {
    std::vector<uint8_t> key(static_cast<size_t>(degree), 1);
    while (true) {
      keys.push_back(key);
      int pos = degree - 1;
      while (pos >= 0 && key[static_cast<size_t>(pos)] == ctx.n) --pos;
      if (pos < 0) break;
      key[static_cast<size_t>(pos)] += 1;
      for (int q = pos + 1; q < degree; ++q)
        key[static_cast<size_t>(q)] = key[static_cast<size_t>(pos)];
    }
  }
  const auto& vars = ctx.ring.vars;
  for (const auto& k : keys) {
    MultiPoly num(vars);
    for (int t = 0; t < nterms; ++t) {
      Expo e(static_cast<size_t>(vars->size()), 0);
      int deg = rng.uniform_int(0, 2);
      for (int d = 0; d < deg; ++d) {
        // avoid powers of lambda in the raw coefficients; the twist supplies those
        int v = rng.uniform_int(1, vars->size() - 1);
        e[static_cast<size_t>(v)] += 1;
      }
      num += MultiPoly::monomial(vars, e, rng.rational(4, 3));
    }
    if (num.is_zero()) num = MultiPoly::constant(vars, Rational(1));
    std::vector<std::pair<MultiPoly, int>> den;
    if (phi_power > 0) den.emplace_back(ctx.phi_minus, phi_power);
    body.set_coeff(k, RationalFn(std::move(num), std::move(den)));
  }
  return {ctx.n, std::move(body)};
}

}  // namespace hypres
