#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypres/liealg.hpp"

using namespace hypres;

TEST_CASE("generator definitions") {
  // A := P_{n+1}; for n = 2 that is P_3 with entries (0,3) = (3,0) = 1
  auto A = generator(2, GenKind::A);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Rational want((i == 0 && j == 3) || (i == 3 && j == 0) ? 1 : 0);
      CHECK(A.at(i, j) == want);
    }
  CHECK(A == generator(2, GenKind::P, 3));

  // N^pm_k - P_k = pm R_{n+1,k}
  for (int n : {2, 3, 5}) {
    for (int k = 1; k <= n; ++k) {
      auto np = generator(n, GenKind::Nplus, k);
      auto nm = generator(n, GenKind::Nminus, k);
      auto p = generator(n, GenKind::P, k);
      auto r = generator(n, GenKind::R, n + 1, k);
      CHECK(np - p == r);
      CHECK(nm - p == -r);
      CHECK(np.is_eta_antisymmetric());
      CHECK(nm.is_eta_antisymmetric());
    }
  }
  CHECK_THROWS_AS(generator(2, GenKind::Nplus, 3), std::out_of_range);
  CHECK_THROWS_AS(generator(2, GenKind::R, 0, 1), std::out_of_range);
}

TEST_CASE("bracket: frozen paper values") {
  const int n = 3;
  auto A = generator(n, GenKind::A);
  auto N_m2 = generator(n, GenKind::Nminus, 2);
  CHECK(bracket(A, N_m2) == -N_m2);

  auto N_p1 = generator(n, GenKind::Nplus, 1);
  auto N_m1 = generator(n, GenKind::Nminus, 1);
  CHECK(bracket(N_p1, N_m1) == A.scaled(Rational(2)));  // R_11 = 0

  auto R12 = generator(n, GenKind::R, 1, 2);
  CHECK(bracket(R12, A).is_zero());
}

TEST_CASE("structure constants verify exactly for n in 2..5") {
  for (int n = 2; n <= 5; ++n) {
    auto report = verify_structure_constants(n);
    CHECK(report.size() > 10);
    for (const auto& r : report) CHECK_MESSAGE(r.pass, "n=", n, " relation ", r.relation);
  }
}

TEST_CASE("negative control: a corrupted generator fails a named relation") {
  const int n = 2;
  auto A = generator(n, GenKind::A);
  auto bad = A;
  bad.at(0, 1) = Rational(1);  // breaks eta-antisymmetry and the A-N bracket
  CHECK_FALSE(bad.is_eta_antisymmetric());
  auto Np1 = generator(n, GenKind::Nplus, 1);
  CHECK_FALSE(bracket(bad, Np1) == Np1);
}

TEST_CASE("bracket closure: integer coefficients over the generator basis") {
  for (int n : {2, 3}) {
    std::vector<LorentzMatrix> gens;
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j) gens.push_back(generator(n, GenKind::R, i, j));
    for (int k = 1; k <= n + 1; ++k) gens.push_back(generator(n, GenKind::P, k));
    for (const auto& a : gens)
      for (const auto& b : gens) {
        auto coeffs = expand_in_generator_basis(n, bracket(a, b));
        REQUIRE(coeffs.has_value());
        for (const auto& c : *coeffs) CHECK(c.is_integer());
      }
  }
}

TEST_CASE("to_derivation: zero matrix gives zero derivation") {
  FrameRing ring = make_frame_ring(2, false);
  CHECK(to_derivation(LorentzMatrix(2), ring).is_zero());
}

TEST_CASE("cayley sampling produces exact special-orthochronous points") {
  Rng rng(99, "cayley");
  for (int n : {2, 3}) {
    FrameRing ring = make_frame_ring(n, false);
    for (int trial = 0; trial < 5; ++trial) {
      GroupSample s = random_group_point(n, rng);
      CHECK(s.gamma.is_eta_orthogonal());
      CHECK(s.gamma.at(0, 0).sign() > 0);
      CHECK(rational_det(s.gamma.rows()) == Rational(1));
      // the assignment satisfies the frame constraints exactly
      auto vals = s.assignment(ring);
      std::vector<Rational> point(static_cast<size_t>(ring.vars->size()), Rational(0));
      for (auto& [idx, v] : vals) point[static_cast<size_t>(idx)] = v;
      auto dot = [&](int a, int b) {
        Rational acc(0);
        for (int i = 0; i <= n + 1; ++i) {
          Rational term = point[static_cast<size_t>(ring.col(a, i))] *
                          point[static_cast<size_t>(ring.col(b, i))];
          acc += (i == 0) ? -term : term;
        }
        return acc;
      };
      CHECK(dot(0, 0) == Rational(-1));            // <x,x> = -1
      CHECK(dot(n + 1, n + 1) == Rational(1));     // <xi,xi> = 1
      CHECK(dot(0, n + 1) == Rational(0));         // <x,xi> = 0
      for (int k = 1; k <= n; ++k) {
        CHECK(dot(k, k) == Rational(1));
        CHECK(dot(0, k) == Rational(0));
        CHECK(dot(n + 1, k) == Rational(0));
      }
    }
  }
}
