#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypres/bands.hpp"

using namespace hypres;

namespace {
GaussianRational gr(long num, long den = 1) { return GaussianRational(Rational(num, den)); }
}

TEST_CASE("band polynomial: frozen evaluations") {
  // m = 0: empty products
  auto p00 = p_rk(3, 0, 0);
  CHECK(p00.degree() == 0);
  CHECK(p00.coeffs[0] == Rational(1));

  // direct evaluation of the printed formula
  CHECK(p_rk_eval(2, 1, 0, Rational(-3)) == Rational(-8));
  CHECK(p_rk_eval(4, 0, 1, Rational(0)) == Rational(0));  // factor A vanishes
  CHECK(p_rk_eval(2, 0, 1, Rational(1)) == Rational(-8)); // 4*1*(-2)

  // degree and leading-coefficient sign: deg = 2k + r, sign = (-1)^k
  for (int n : {2, 3, 5}) {
    for (int k = 0; k <= 3; ++k)
      for (int r = 0; r <= 3; ++r) {
        auto p = p_rk(n, r, k);
        CHECK(p.degree() == 2 * k + r);
        CHECK(p.leading().sign() == (k % 2 == 0 ? 1 : -1));
      }
  }
}

TEST_CASE("band polynomial matches its product form on random rational points") {
  for (int n : {2, 5}) {
    for (int k = 0; k <= 2; ++k)
      for (int r = 0; r <= 2; ++r) {
        const int m = r + 2 * k;
        auto p = p_rk(n, r, k);
        for (long num = -7; num <= 7; num += 3) {
          Rational a0(num, 2);
          Rational want = Rational::pow2(k + r) *
                          Rational::factorial(static_cast<unsigned>(m)) *
                          Rational::factorial(static_cast<unsigned>(r)).pow(2);
          for (int j = 1; j <= k; ++j)
            want *= (a0 + Rational(r + j - 1)) * (a0 * Rational(-2) + Rational(n - 2 * j));
          for (int j = 1; j <= r; ++j) want *= a0 - Rational(n + j - 2);
          CHECK(p.eval(a0) == want);
        }
      }
  }
}

TEST_CASE("exceptional set membership") {
  // lambda0 = -n/2 is always exceptional
  for (int n = 2; n <= 6; ++n) CHECK(exceptional_member(gr(-n, 2), n));
  CHECK_FALSE(exceptional_member(gr(-1), 3));                     // -1 not in {-1.5, -2, ...}
  CHECK_FALSE(exceptional_member(GaussianRational(Rational(-2), Rational(1)), 3));  // nonreal
  CHECK(exceptional_member(gr(-2), 2));
  CHECK(exceptional_member(gr(-5, 2), 3));
  CHECK_FALSE(exceptional_member(gr(-11, 5), 2));  // denominator 5 cannot be exceptional
  CHECK_FALSE(exceptional_member(gr(1), 4));       // positive
}

TEST_CASE("nonvanishing scan") {
  SUBCASE("exceptional and mis-signed inputs are refused") {
    CHECK_THROWS_AS(nonvanishing_scan(2, gr(-2), 4), std::domain_error);
    CHECK_THROWS_AS(nonvanishing_scan(2, gr(-3), 4), std::domain_error);
    CHECK_THROWS_AS(nonvanishing_scan(3, gr(-1, 2), 4), std::domain_error);
  }

  SUBCASE("denominator-5 grid has no zeros at all") {
    for (int n : {2, 3, 4, 5}) {
      for (long num = 6; num <= 30; ++num) {
        GaussianRational lam0 = gr(-num, 5);
        if (lam0.re > Rational(-1)) continue;
        auto rep = nonvanishing_scan(n, lam0, 6);
        CHECK(rep.matches_exception_rule);
        CHECK(rep.zeros.empty());
      }
    }
  }

  SUBCASE("n = 5, lambda0 = -2 exhibits exactly the single exception") {
    auto rep = nonvanishing_scan(5, gr(-2), 6);
    CHECK(rep.m_max_used == 2);
    REQUIRE(rep.zeros.size() == 1);
    CHECK(rep.zeros[0].m == 2);
    CHECK(rep.zeros[0].r == 0);
    CHECK(rep.zeros[0].k == 1);
    CHECK(rep.zeros[0].expected_exception);
    CHECK(rep.matches_exception_rule);
  }

  SUBCASE("n = 3, lambda0 = -1: band bound 1, no zeros") {
    auto rep = nonvanishing_scan(3, gr(-1), 6);
    CHECK(rep.m_max_used == 1);
    CHECK(rep.zeros.empty());
    CHECK(rep.matches_exception_rule);
  }
}

TEST_CASE("correspondence table") {
  SUBCASE("lambda0 = -11/5, n = 2: the four-entry table") {
    auto t = correspondence_table(gr(-11, 5), 2);
    REQUIRE(t.entries.size() == 4);
    CHECK(t.band_limit == 2);
    auto& e0 = t.entries[0];
    CHECK(e0.m == 0);
    CHECK(e0.k == 0);
    CHECK(e0.tensor_order == 0);
    CHECK(e0.s0 == gr(-1, 5));
    CHECK(t.entries[1].m == 1);
    CHECK(t.entries[1].s0 == gr(4, 5));
    CHECK(t.entries[2].m == 2);
    CHECK(t.entries[2].k == 0);
    CHECK(t.entries[2].tensor_order == 2);
    CHECK(t.entries[2].s0 == gr(9, 5));
    CHECK(t.entries[3].m == 2);
    CHECK(t.entries[3].k == 1);
    CHECK(t.entries[3].tensor_order == 0);
    CHECK(t.entries[3].s0 == gr(9, 5));
    for (const auto& e : t.entries) CHECK_FALSE(e.excluded);
  }

  SUBCASE("lambda0 = -2, n = 5: the m = 2 band is flagged excluded") {
    auto t = correspondence_table(gr(-2), 5);
    CHECK(t.band_limit == 2);
    int excluded = 0, total_m2 = 0;
    for (const auto& e : t.entries) {
      if (e.m == 2) {
        ++total_m2;
        CHECK(e.excluded);
        CHECK(e.s0 == gr(5));
        ++excluded;
      } else {
        CHECK_FALSE(e.excluded);
      }
    }
    CHECK(total_m2 == 2);  // k = 0 and k = 1
  }

  SUBCASE("lambda0 = 1: empty table") {
    auto t = correspondence_table(gr(1), 3);
    CHECK(t.entries.empty());
    CHECK(t.band_limit == -1);
  }

  SUBCASE("exceptional lambda0 is refused") {
    CHECK_THROWS_AS(correspondence_table(gr(-2), 2), std::domain_error);
  }
}
