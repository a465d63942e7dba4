#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypres/horosphere.hpp"

using namespace hypres;

namespace {

struct Fixture {
  HoroContext ctx;
  GroupSampler smp;
  explicit Fixture(int n, int samples = 6) : ctx(make_horo_context(n)), smp(ctx, 1234, samples) {}
};

RationalFn at_lambda_zero(const HoroContext& ctx, const RationalFn& f) {
  return f.eval_partial({{ctx.ring.lambda, Rational(0)}});
}

}  // namespace

TEST_CASE("flow derivative: twisted eigenvalue and untwisted constants") {
  Fixture fx(2);
  const auto& ctx = fx.ctx;
  // Phi_-^lambda * 1 is an exact -lambda eigenvector of A
  TwistedSection u = build_twisted_state(ctx, BoundaryTensor::scalar_constant(2, Rational(1)));
  TwistedSection au = flow_derivative_A(ctx, u);
  CHECK((au + u.scaled(ctx.lambda)).is_zero());

  // with the twist switched off (lambda = 0) constants are killed
  RationalFn c = au.body.coeff({});
  CHECK(at_lambda_zero(ctx, c + ctx.lambda).is_zero());
}

TEST_CASE("commutation relations hold identically on random twisted sections") {
  for (int n : {2, 3}) {
    Fixture fx(n);
    const auto& ctx = fx.ctx;
    Rng rng(500 + n, "commutation");
    for (int deg = 0; deg <= 2; ++deg) {
      for (int trial = 0; trial < 3; ++trial) {
        TwistedSection u = random_twisted_section(ctx, deg, rng);

        // [A, d_pm] = pm d_pm
        CHECK((flow_derivative_A(ctx, d_minus(ctx, u)) -
               d_minus(ctx, flow_derivative_A(ctx, u)) + d_minus(ctx, u))
                  .is_zero());
        CHECK((flow_derivative_A(ctx, d_plus(ctx, u)) -
               d_plus(ctx, flow_derivative_A(ctx, u)) - d_plus(ctx, u))
                  .is_zero());

        // [A, Delta_pm] = pm 2 Delta_pm
        CHECK((flow_derivative_A(ctx, delta_plus(ctx, u)) -
               delta_plus(ctx, flow_derivative_A(ctx, u)) - delta_plus(ctx, u).scaled(
                   RationalFn::constant(ctx.ring.vars, Rational(2))))
                  .is_zero());
        CHECK((flow_derivative_A(ctx, delta_minus(ctx, u)) -
               delta_minus(ctx, flow_derivative_A(ctx, u)) + delta_minus(ctx, u).scaled(
                   RationalFn::constant(ctx.ring.vars, Rational(2))))
                  .is_zero());

        // [Lambda, d_pm] = -2 div_pm and [L, div_pm] = 2 d_pm
        if (deg >= 1) {
          CHECK((lefschetz_Lambda(ctx, d_plus(ctx, u)) -
                 d_plus(ctx, lefschetz_Lambda(ctx, u)) +
                 div_plus(ctx, u).scaled(RationalFn::constant(ctx.ring.vars, Rational(2))))
                    .is_zero());
          CHECK((lefschetz_Lambda(ctx, d_minus(ctx, u)) -
                 d_minus(ctx, lefschetz_Lambda(ctx, u)) +
                 div_minus(ctx, u).scaled(RationalFn::constant(ctx.ring.vars, Rational(2))))
                    .is_zero());
          CHECK((lefschetz_L(ctx, div_plus(ctx, u)) - div_plus(ctx, lefschetz_L(ctx, u)) -
                 d_plus(ctx, u).scaled(RationalFn::constant(ctx.ring.vars, Rational(2))))
                    .is_zero());
          // [A, div_pm] = pm div_pm
          CHECK((flow_derivative_A(ctx, div_plus(ctx, u)) -
                 div_plus(ctx, flow_derivative_A(ctx, u)) - div_plus(ctx, u))
                    .is_zero());
          CHECK((flow_derivative_A(ctx, div_minus(ctx, u)) -
                 div_minus(ctx, flow_derivative_A(ctx, u)) + div_minus(ctx, u))
                    .is_zero());
          // [Lambda, div_pm] = 0
          CHECK((lefschetz_Lambda(ctx, div_plus(ctx, u)) -
                 div_plus(ctx, lefschetz_Lambda(ctx, u)))
                    .is_zero());
        }
        // [L, d_pm] = 0
        CHECK((lefschetz_L(ctx, d_plus(ctx, u)) - d_plus(ctx, lefschetz_L(ctx, u))).is_zero());
        CHECK((lefschetz_L(ctx, d_minus(ctx, u)) - d_minus(ctx, lefschetz_L(ctx, u))).is_zero());
      }
    }
  }
}

TEST_CASE("horosphere laplacian equals minus the squared lie derivatives") {
  Fixture fx(2);
  const auto& ctx = fx.ctx;
  Rng rng(77, "laplacian-form");
  for (int deg = 0; deg <= 2; ++deg) {
    TwistedSection u = random_twisted_section(ctx, deg, rng);
    TwistedSection viaComm = delta_plus(ctx, u);
    TwistedSection direct{ctx.n, SymTensor<RationalFn>(ctx.n, deg, ctx.zero())};
    for (int k = 1; k <= ctx.n; ++k) {
      TwistedSection two = lie_derivative(ctx, Gen::Nplus, k,
                                          lie_derivative(ctx, Gen::Nplus, k, u));
      direct = direct - two;
    }
    CHECK((viaComm - direct).is_zero());
  }
}

TEST_CASE("iterated d_minus equals symmetrised iterated nabla_minus on scalars") {
  Fixture fx(2);
  const auto& ctx = fx.ctx;
  Rng rng(78, "nabla-vs-d");
  TwistedSection u = random_twisted_section(ctx, 0, rng);
  for (int m = 1; m <= 3; ++m) {
    TwistedSection dm = u;
    for (int t = 0; t < m; ++t) dm = d_minus(ctx, dm);
    // expected coefficient on e_J: (m! / prod mult!) * iterated lie derivative
    for (const auto& [key, coeff] : dm.body.coeffs()) {
      TwistedSection it = u;
      for (auto k : key) it = lie_derivative(ctx, Gen::Nminus, k, it);
      long factor = 1;
      for (int t = 2; t <= m; ++t) factor *= t;
      factor /= detail::multiplicity_factorial(key);
      CHECK((coeff - it.body.coeff({}).scaled(Rational(factor))).is_zero());
    }
  }
}

TEST_CASE("twisted model states: annihilation properties") {
  Fixture fx(2);
  const auto& ctx = fx.ctx;

  SUBCASE("m = 0, omega = 1") {
    TwistedSection u = build_twisted_state(ctx, BoundaryTensor::scalar_constant(2, Rational(1)));
    StateChecks sc = check_twisted_state(ctx, u, fx.smp);
    CHECK(sc.a_eigen.level == ZeroLevel::Identical);
    CHECK(sc.nabla_minus.level == ZeroLevel::Identical);
    CHECK(sc.trace.level == ZeroLevel::Identical);
  }

  SUBCASE("m = 0, omega = restriction of y1") {
    TwistedSection u = build_twisted_state(ctx, BoundaryTensor::scalar_coordinate(2, 1));
    StateChecks sc = check_twisted_state(ctx, u, fx.smp);
    CHECK(sc.a_eigen.level == ZeroLevel::Identical);
    CHECK(sc.nabla_minus.level == ZeroLevel::Identical);
    CHECK(sc.ok());
  }

  SUBCASE("m = 1, constant-coefficient one-form: d_- kills the state") {
    BoundaryTensor omega =
        BoundaryTensor::one_form_constant(2, {Rational(1), Rational(-2), Rational(3)});
    TwistedSection u = build_twisted_state(ctx, omega);
    StateChecks sc = check_twisted_state(ctx, u, fx.smp);
    CHECK(sc.ok());
    CHECK(verify_zero(ctx, d_minus(ctx, u), fx.smp).ok());
    CHECK(check_equivariance(ctx, u, fx.smp).ok());
  }

  SUBCASE("m = 2, trace-free two-tensor is accepted, raw tensor is rejected") {
    RMatrix q = {{Rational(1), Rational(2), Rational(0)},
                 {Rational(2), Rational(-1), Rational(3)},
                 {Rational(0), Rational(3), Rational(0)}};
    BoundaryTensor omega = BoundaryTensor::trace_free_two_tensor(2, q);
    TwistedSection u = build_twisted_state(ctx, omega);
    StateChecks sc = check_twisted_state(ctx, u, fx.smp);
    CHECK(sc.ok());
    CHECK(sc.trace.level != ZeroLevel::Identical);  // needs the frame constraints

    // dropping the trace correction must be caught
    BoundaryTensor raw;
    raw.n = 2;
    raw.m = 2;
    raw.yvars = BoundaryTensor::make_yvars(2);
    raw.comps.emplace(std::vector<uint8_t>{1, 2}, MultiPoly::constant(raw.yvars, Rational(1)));
    raw.comps.emplace(std::vector<uint8_t>{1, 1}, MultiPoly::constant(raw.yvars, Rational(1, 2)));
    TwistedSection bad = build_twisted_state(ctx, raw);
    CHECK(check_twisted_state(ctx, bad, fx.smp).trace.level == ZeroLevel::NotZero);
  }
}

TEST_CASE("band inversion identity (lemma restatement)") {
  SUBCASE("n = 2, m = 1, k = 0: operator 2(A - n + 1)") {
    Fixture fx(2);
    BoundaryTensor omega =
        BoundaryTensor::one_form_constant(2, {Rational(0), Rational(1), Rational(1)});
    auto rep = verify_horocycle_inversion(fx.ctx, 1, 0, omega, fx.smp);
    CHECK(rep.pass);
    CHECK(rep.p_polynomial == "2*A - 2");
    MESSAGE("identity level: ", zero_level_name(rep.identity.level));
  }

  SUBCASE("n = 2, m = 2, k = 1: operator 4A(-2A + n - 2)") {
    Fixture fx(2);
    BoundaryTensor omega = BoundaryTensor::scalar_coordinate(2, 2);
    auto rep = verify_horocycle_inversion(fx.ctx, 2, 1, omega, fx.smp);
    CHECK(rep.pass);
    CHECK(rep.p_polynomial == "-8*A^2");
    MESSAGE("identity level: ", zero_level_name(rep.identity.level));
  }

  SUBCASE("n = 2, m = 2, k = 0 on a trace-free two-tensor") {
    Fixture fx(2);
    RMatrix q = {{Rational(2), Rational(1), Rational(0)},
                 {Rational(1), Rational(0), Rational(-1)},
                 {Rational(0), Rational(-1), Rational(-2)}};
    auto rep = verify_horocycle_inversion(fx.ctx, 2, 0, BoundaryTensor::trace_free_two_tensor(2, q),
                                          fx.smp);
    CHECK(rep.pass);
    MESSAGE("identity level: ", zero_level_name(rep.identity.level));
  }

  SUBCASE("m = 0 degenerate case: both sides are the identity") {
    Fixture fx(2);
    auto rep = verify_horocycle_inversion(fx.ctx, 0, 0,
                                          BoundaryTensor::scalar_coordinate(2, 3), fx.smp);
    CHECK(rep.pass);
    CHECK(rep.p_polynomial == "1");
  }

  SUBCASE("n = 3, m = 1, k = 0") {
    Fixture fx(3);
    BoundaryTensor omega = BoundaryTensor::one_form_constant(
        3, {Rational(1), Rational(0), Rational(-1), Rational(2)});
    auto rep = verify_horocycle_inversion(fx.ctx, 1, 0, omega, fx.smp);
    CHECK(rep.pass);
    CHECK(rep.p_polynomial == "2*A - 4");
  }

  SUBCASE("negative control: a perturbed right-hand side is detected") {
    Fixture fx(2);
    const auto& ctx = fx.ctx;
    TwistedSection u =
        build_twisted_state(ctx, BoundaryTensor::one_form_constant(
                                     2, {Rational(1), Rational(1), Rational(0)}));
    TwistedSection lhs = u;
    lhs = div_plus(ctx, lhs);
    lhs = d_minus(ctx, lhs);
    // correct operator is 2(A - 1); test 2(A - 1) + 1 instead
    TwistedSection rhs = flow_derivative_A(ctx, u).scaled(
                             RationalFn::constant(ctx.ring.vars, Rational(2))) -
                         u.scaled(RationalFn::constant(ctx.ring.vars, Rational(1)));
    CHECK_FALSE(verify_zero(ctx, lhs - rhs, fx.smp).ok());
  }

  SUBCASE("argument validation") {
    Fixture fx(2);
    CHECK_THROWS_AS(
        verify_horocycle_inversion(fx.ctx, 1, 1, BoundaryTensor::scalar_constant(2, Rational(1)),
                                   fx.smp),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_horocycle_inversion(fx.ctx, 2, 0, BoundaryTensor::scalar_constant(2, Rational(1)),
                                   fx.smp),
        std::invalid_argument);
  }
}
