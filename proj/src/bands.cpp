#include "hypres/bands.hpp"

#include <sstream>
#include <stdexcept>

namespace hypres {

namespace {

// multiply an ascending-coefficient polynomial by (c0 + c1 A)
std::vector<Rational> mul_linear(const std::vector<Rational>& p, const Rational& c0,
                                 const Rational& c1) {
  std::vector<Rational> out(p.size() + 1, Rational(0));
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i] * c0;
    out[i + 1] += p[i] * c1;
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace

Rational BandPolynomial::eval(const Rational& a0) const {
  Rational acc(0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * a0 + coeffs[i];
  return acc;
}

GaussianRational BandPolynomial::eval(const GaussianRational& a0) const {
  GaussianRational acc;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * a0 + GaussianRational(coeffs[i]);
  return acc;
}

std::string BandPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i].is_zero() && coeffs.size() > 1) continue;
    Rational c = coeffs[i];
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    first = false;
    if (i == 0 || !c.is_one()) os << c.str();
    if (i > 0) {
      if (!c.is_one()) os << "*";
      os << "A";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

BandPolynomial p_rk(int n, int r, int k) {
  if (n < 2) throw std::invalid_argument("p_rk: n must be >= 2");
  if (r < 0 || k < 0) throw std::invalid_argument("p_rk: r, k must be non-negative");
  BandPolynomial p;
  p.n = n;
  p.r = r;
  p.k = k;
  p.m = r + 2 * k;
  Rational lead = Rational::pow2(k + r) * Rational::factorial(static_cast<unsigned>(p.m)) *
                  Rational::factorial(static_cast<unsigned>(r)).pow(2);
  p.coeffs = {lead};
  for (int j = 1; j <= k; ++j) {
    p.coeffs = mul_linear(p.coeffs, Rational(r + j - 1), Rational(1));    // (A + r + j - 1)
    p.coeffs = mul_linear(p.coeffs, Rational(n - 2 * j), Rational(-2));   // (-2A + (n - 2j))
  }
  for (int j = 1; j <= r; ++j)
    p.coeffs = mul_linear(p.coeffs, Rational(-n - j + 2), Rational(1));   // (A - n - j + 2)
  return p;
}

Rational p_rk_eval(int n, int r, int k, const Rational& a0) { return p_rk(n, r, k).eval(a0); }
GaussianRational p_rk_eval(int n, int r, int k, const GaussianRational& a0) {
  return p_rk(n, r, k).eval(a0);
}

bool exceptional_member(const GaussianRational& lambda0, int n) {
  if (!lambda0.is_real()) return false;
  // lambda0 = -(n + j)/2 for some integer j >= 0
  Rational twice = lambda0.re * Rational(-2) - Rational(n);
  return twice.is_integer() && twice.sign() >= 0;
}

long band_bound(const GaussianRational& lambda0) {
  // largest m with Re(lambda0) + m <= 0, i.e. m <= -Re(lambda0)
  Rational bound = -lambda0.re;
  if (bound.sign() < 0) return -1;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), bound.numerator().get_mpz_t(), bound.denominator().get_mpz_t());
  return q.get_si();
}

ScanReport nonvanishing_scan(int n, const GaussianRational& lambda0, int m_max) {
  if (n < 2) throw std::invalid_argument("nonvanishing_scan: n must be >= 2");
  if (exceptional_member(lambda0, n))
    throw std::domain_error("nonvanishing_scan: lambda0 lies in the exceptional set -n/2 - N0/2");
  if (lambda0.re > Rational(-1))
    throw std::domain_error("nonvanishing_scan: requires Re(lambda0) <= -1");
  ScanReport rep;
  rep.n = n;
  rep.lambda0 = lambda0;
  rep.m_max_used = std::min<long>(m_max, band_bound(lambda0));
  for (long m = 1; m <= rep.m_max_used; ++m) {
    for (int k = 0; 2 * k <= m; ++k) {
      int r = static_cast<int>(m) - 2 * k;
      GaussianRational a0 = -(lambda0 + GaussianRational(Rational(m)));
      ScanHit hit;
      hit.m = static_cast<int>(m);
      hit.r = r;
      hit.k = k;
      hit.value = p_rk_eval(n, r, k, a0);
      // the single situation: m even, r = 0 (so k = m/2), lambda0 + m = 0
      hit.expected_exception =
          (m % 2 == 0) && r == 0 && (lambda0 + GaussianRational(Rational(m))).is_zero();
      rep.rows.push_back(hit);
      if (hit.value.is_zero()) rep.zeros.push_back(hit);
    }
  }
  rep.matches_exception_rule = true;
  for (const auto& z : rep.zeros)
    if (!z.expected_exception) rep.matches_exception_rule = false;
  for (const auto& row : rep.rows)
    if (row.expected_exception && !row.value.is_zero()) rep.matches_exception_rule = false;
  return rep;
}

CorrespondenceTable correspondence_table(const GaussianRational& lambda0, int n) {
  if (n < 2) throw std::invalid_argument("correspondence_table: n must be >= 2");
  if (exceptional_member(lambda0, n))
    throw std::domain_error("correspondence_table: lambda0 lies in the exceptional set");
  CorrespondenceTable table;
  table.lambda0 = lambda0;
  table.n = n;
  table.band_limit = band_bound(lambda0);
  table.beyond_limit = "bands m with Re(lambda0) + m > 0 are empty by the resonance half-plane";
  // lambda0 in -2N flags the band m = -lambda0 (its image space is trivial)
  bool lam_neg_even = lambda0.is_real() && lambda0.re.is_integer() &&
                      lambda0.re.sign() < 0 &&
                      mpz_even_p(lambda0.re.numerator().get_mpz_t());
  for (long m = 0; m <= table.band_limit; ++m) {
    for (int k = 0; 2 * k <= m; ++k) {
      BandEntry e;
      e.m = static_cast<int>(m);
      e.k = k;
      e.tensor_order = static_cast<int>(m) - 2 * k;
      e.s0 = lambda0 + GaussianRational(Rational(m + n));
      if (lam_neg_even && Rational(m) == -lambda0.re) {
        e.excluded = true;
        e.reason = "band m = -lambda0 with lambda0 in -2N carries no states";
      }
      table.entries.push_back(e);
    }
  }
  return table;
}

}  // namespace hypres
