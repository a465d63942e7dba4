#include "hypres/rational.hpp"

#include <ostream>
#include <sstream>

namespace hypres {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class v(s);
    if (v.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator");
    v.canonicalize();
    return Rational(v);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(mpq_class(s));
  // decimal form: shift the point into a power-of-ten denominator
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  mpz_class num(digits);
  mpz_class den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  mpq_class v(num, den);
  v.canonicalize();
  return Rational(v);
}

std::string Rational::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

Rational Rational::factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(mpq_class(f));
}

Rational Rational::pow2(int k) {
  mpq_class v;
  if (k >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned>(k));
    v = p;
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned>(-k));
    v = mpq_class(1, p);
  }
  return Rational(v);
}

Rational Rational::pow(unsigned k) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  return re.str() + "," + im.str();
}

GaussianRational GaussianRational::parse(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return GaussianRational(Rational::parse(s));
  return GaussianRational(Rational::parse(s.substr(0, comma)),
                          Rational::parse(s.substr(comma + 1)));
}

}  // namespace hypres
