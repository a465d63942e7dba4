#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hypres/rng.hpp"
#include "hypres/symtensor.hpp"

using namespace hypres;
using T = SymTensor<Rational>;

namespace {

// Independent oracle for the induced inner product on decomposables:
// g(u_1 s .. s u_m, v_1 s .. s v_m) = sum over permutations of products of
// pairwise euclidean inner products.
Rational oracle_inner(std::vector<std::vector<Rational>> us,
                      std::vector<std::vector<Rational>> vs) {
  REQUIRE(us.size() == vs.size());
  const size_t m = us.size();
  std::vector<size_t> perm(m);
  for (size_t i = 0; i < m; ++i) perm[i] = i;
  Rational acc(0);
  do {
    Rational prod(1);
    for (size_t i = 0; i < m; ++i) {
      Rational dot(0);
      for (size_t c = 0; c < us[i].size(); ++c) dot += us[i][c] * vs[perm[i]][c];
      prod *= dot;
    }
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

T from_vector(int n, const std::vector<Rational>& v) {
  T t(n, 1);
  for (int i = 0; i < n; ++i) t.set_coeff({static_cast<uint8_t>(i + 1)}, v[i]);
  return t;
}

std::vector<Rational> random_vector(int n, Rng& rng) {
  std::vector<Rational> v(n);
  for (auto& c : v) c = rng.rational(5, 3);
  return v;
}

T random_tensor(int n, int deg, Rng& rng) {
  if (deg == 0) return T::scalar(n, rng.rational(5, 3));
  T t = from_vector(n, random_vector(n, rng));
  for (int d = 1; d < deg; ++d) t = sym_product(t, from_vector(n, random_vector(n, rng)));
  return t;
}

long binom(long a, long b) {
  if (b < 0 || b > a) return 0;
  long r = 1;
  for (long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("sym product: unit, commutativity, concatenation") {
  const int n = 3;
  T e1 = T::basis(n, {1}, Rational(1));
  T e2 = T::basis(n, {2}, Rational(1));
  T one = T::scalar(n, Rational(1));

  CHECK(sym_product(one, e2) == e2);
  CHECK(sym_product(e1, e2) == sym_product(e2, e1));
  CHECK(sym_product(e1, e2) == T::basis(n, {1, 2}, Rational(1)));

  Rng rng(11, "sym-commute");
  for (int trial = 0; trial < 10; ++trial) {
    T u = random_tensor(n, 2, rng);
    T v = random_tensor(n, 1, rng);
    CHECK(sym_product(u, v) == sym_product(v, u));
  }
  CHECK_THROWS_AS(sym_product(T::scalar(2, Rational(1)), T::scalar(3, Rational(1))),
                  std::domain_error);
}

TEST_CASE("inner product matches the permutation-sum oracle") {
  const int n = 3;
  Rng rng(12, "inner-oracle");
  for (int m = 1; m <= 3; ++m) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::vector<Rational>> us, vs;
      T tu = T::scalar(n, Rational(1));
      T tv = T::scalar(n, Rational(1));
      for (int i = 0; i < m; ++i) {
        us.push_back(random_vector(n, rng));
        vs.push_back(random_vector(n, rng));
        tu = sym_product(tu, from_vector(n, us.back()));
        tv = sym_product(tv, from_vector(n, vs.back()));
      }
      CHECK(inner(tu, tv) == oracle_inner(us, vs));
    }
  }
}

TEST_CASE("inner product: frozen values") {
  const int n = 3;
  T one = T::scalar(n, Rational(1));
  CHECK(inner(one, one) == Rational(1));

  T e11 = T::basis(n, {1, 1}, Rational(1));
  CHECK(inner(e11, e11) == Rational(2));

  T e12 = T::basis(n, {1, 2}, Rational(1));
  T e13 = T::basis(n, {1, 3}, Rational(1));
  CHECK(inner(e12, e13) == Rational(0));
  // value fixed by the permutation-sum formula (and the oracle above)
  CHECK(inner(e12, e12) == Rational(1));
  CHECK(inner(e12, e12) ==
        oracle_inner({{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}},
                     {{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}}));

  CHECK_THROWS_AS(inner(e12, one), std::domain_error);
}

TEST_CASE("contraction: frozen values and adjointness") {
  const int n = 3;
  T e1 = T::basis(n, {1}, Rational(1));
  T e3 = T::basis(n, {3}, Rational(1));
  T e12 = T::basis(n, {1, 2}, Rational(1));

  CHECK(contract(e1, e12) == T::basis(n, {2}, Rational(1)));
  CHECK(contract(e3, e12).is_zero());
  CHECK(contract(e1, sym_product(e1, T::scalar(n, Rational(1)))) == T::scalar(n, Rational(1)));
  CHECK_THROWS_AS(contract(e1, T::scalar(n, Rational(1))), std::domain_error);

  Rng rng(13, "adjoint");
  for (int trial = 0; trial < 12; ++trial) {
    T u = from_vector(n, random_vector(n, rng));
    T w = random_tensor(n, 3, rng);
    T z = random_tensor(n, 2, rng);
    CHECK(inner(contract(u, w), z) == inner(w, sym_product(u, z)));
  }
}

TEST_CASE("lefschetz operators: frozen values and adjointness") {
  for (int n = 2; n <= 4; ++n) {
    T one = T::scalar(n, Rational(1));
    T lam_l_one = lefschetz_Lambda(lefschetz_L(one));
    CHECK(lam_l_one == T::scalar(n, Rational(2L * n)));
  }
  const int n = 3;
  CHECK(lefschetz_Lambda(T::basis(n, {1, 2}, Rational(1))).is_zero());
  CHECK(lefschetz_L(T(n, 1)).is_zero());
  CHECK(lefschetz_Lambda(T::basis(n, {1}, Rational(1))).is_zero());  // degree < 2 convention

  Rng rng(14, "lefschetz-adjoint");
  for (int trial = 0; trial < 10; ++trial) {
    T u = random_tensor(n, 1, rng);
    T w = random_tensor(n, 3, rng);
    CHECK(inner(lefschetz_L(u), w) == inner(u, lefschetz_Lambda(w)));
  }
}

TEST_CASE("dimension of the trace-free subspace via exact elimination") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 2; m <= 5; ++m) {
      // enumerate the multiset basis of Sym^m
      std::vector<std::vector<uint8_t>> keys;
      std::vector<uint8_t> key(m, 1);
      while (true) {
        keys.push_back(key);
        int pos = m - 1;
        while (pos >= 0 && key[pos] == n) --pos;
        if (pos < 0) break;
        key[pos] += 1;
        for (int q = pos + 1; q < m; ++q) key[q] = key[pos];
      }
      std::map<std::vector<uint8_t>, int> col_of;
      std::vector<std::vector<uint8_t>> lower_keys;
      // matrix of Lambda on the basis
      std::vector<std::vector<Rational>> rows;
      for (const auto& k : keys) {
        T lam = lefschetz_Lambda(T::basis(n, k, Rational(1)));
        for (const auto& [k2, c] : lam.coeffs()) {
          if (!col_of.count(k2)) {
            col_of[k2] = static_cast<int>(lower_keys.size());
            lower_keys.push_back(k2);
          }
        }
      }
      std::vector<std::vector<Rational>> mat(keys.size(),
                                             std::vector<Rational>(lower_keys.size(), Rational(0)));
      for (size_t r = 0; r < keys.size(); ++r) {
        T lam = lefschetz_Lambda(T::basis(n, keys[r], Rational(1)));
        for (const auto& [k2, c] : lam.coeffs()) mat[r][static_cast<size_t>(col_of[k2])] = c;
      }
      // exact rank
      size_t rank = 0;
      size_t rows_n = mat.size(), cols_n = lower_keys.size();
      for (size_t col = 0; col < cols_n && rank < rows_n; ++col) {
        size_t piv = rank;
        while (piv < rows_n && mat[piv][col].is_zero()) ++piv;
        if (piv == rows_n) continue;
        std::swap(mat[piv], mat[rank]);
        Rational inv = Rational(1) / mat[rank][col];
        for (size_t j = col; j < cols_n; ++j) mat[rank][j] *= inv;
        for (size_t r = 0; r < rows_n; ++r) {
          if (r == rank || mat[r][col].is_zero()) continue;
          Rational fac = mat[r][col];
          for (size_t j = col; j < cols_n; ++j) mat[r][j] -= fac * mat[rank][j];
        }
        ++rank;
      }
      long dim_kernel = static_cast<long>(keys.size()) - static_cast<long>(rank);
      long expected = binom(n + m - 1, m) - binom(n + m - 3, m - 2);
      CHECK_MESSAGE(dim_kernel == expected, "n=", n, " m=", m);
    }
  }
}

TEST_CASE("trace-free decomposition") {
  const int n = 3;
  SUBCASE("trace-free input is its own decomposition") {
    T u = T::basis(n, {1, 2}, Rational(1));
    auto dec = trace_free_decompose(u);
    REQUIRE(dec.parts.size() == 2);
    CHECK(dec.parts[0] == u);
    CHECK(dec.parts[1].is_zero());
  }
  SUBCASE("u = L(1) for n = 3") {
    T u = lefschetz_L(T::scalar(n, Rational(1)));
    auto dec = trace_free_decompose(u);
    REQUIRE(dec.parts.size() == 2);
    CHECK(dec.parts[0].is_zero());
    CHECK(dec.parts[1] == T::scalar(n, Rational(1)));
    CHECK(reassemble(dec) == u);
  }
  SUBCASE("random round trips are exact, n = 3, m = 4") {
    Rng rng(15, "tfd-roundtrip");
    for (int trial = 0; trial < 6; ++trial) {
      T u = random_tensor(n, 4, rng);
      // add a random multiple of L^2(1) to force nonzero traces
      T l21 = lefschetz_L(lefschetz_L(T::scalar(n, rng.rational(5, 2))));
      u += l21;
      auto dec = trace_free_decompose(u);
      for (const auto& part : dec.parts) {
        if (!part.is_zero()) CHECK(lefschetz_Lambda(part).is_zero());
      }
      CHECK(reassemble(dec) == u);
    }
  }
}
