#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypres/rational.hpp"

namespace hypres {

// The band-inversion polynomial
//   P_{r,k}(A) = 2^{k+r} m! (r!)^2
//                prod_{j=1}^{k} (A + r + j - 1)(-2A + (n - 2j))
//                prod_{j=1}^{r} (A - n - j + 2),          m = r + 2k,
// stored exactly as a univariate polynomial in A.
struct BandPolynomial {
  int n = 0, m = 0, r = 0, k = 0;
  std::vector<Rational> coeffs;  // ascending powers of A

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational leading() const { return coeffs.back(); }
  Rational eval(const Rational& a0) const;
  GaussianRational eval(const GaussianRational& a0) const;
  std::string str() const;  // expanded form, e.g. "4*A^2 - 2*A"
};

BandPolynomial p_rk(int n, int r, int k);
Rational p_rk_eval(int n, int r, int k, const Rational& a0);
GaussianRational p_rk_eval(int n, int r, int k, const GaussianRational& a0);

// Membership in the exceptional set -n/2 - (1/2) N_0 (real part exact; floats
// must be snapped by the caller).
bool exceptional_member(const GaussianRational& lambda0, int n);

// Largest band index m with Re(lambda0) + m <= 0; negative when none.
long band_bound(const GaussianRational& lambda0);

struct ScanHit {
  int m = 0, r = 0, k = 0;
  GaussianRational value;            // P_{r,k}(-(lambda0+m))
  bool expected_exception = false;   // matches the single-situation pattern
};

struct ScanReport {
  int n = 0;
  GaussianRational lambda0;
  long m_max_used = 0;
  std::vector<ScanHit> rows;       // every (m, r, k) scanned
  std::vector<ScanHit> zeros;      // rows with value 0
  bool matches_exception_rule = false;
};

// Exact scan of P_{r,k}(-(lambda0+m)) over 1 <= m <= min(m_max, band bound).
// Exceptional lambda0 is refused.
ScanReport nonvanishing_scan(int n, const GaussianRational& lambda0, int m_max);

struct BandEntry {
  int m = 0;                 // band index
  int k = 0;                 // trace level
  int tensor_order = 0;      // m - 2k
  GaussianRational s0;       // lambda0 + m + n
  bool excluded = false;
  std::string reason;
};

struct CorrespondenceTable {
  GaussianRational lambda0;
  int n = 0;
  long band_limit = -1;      // largest listed band
  std::string beyond_limit;  // note on bands above the limit
  std::vector<BandEntry> entries;
};

// Bookkeeping rows of the resonance correspondence: bands m with
// Re(lambda0) + m <= 0, trace levels 0 <= k <= floor(m/2), quantum parameter
// s0 = lambda0 + m + n; for lambda0 in -2N the band m = -lambda0 is excluded.
CorrespondenceTable correspondence_table(const GaussianRational& lambda0, int n);

}  // namespace hypres
