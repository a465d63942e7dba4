#pragma once

#include <utility>
#include <vector>

#include "hypres/multipoly.hpp"

namespace hypres {

// Quotient of multivariate polynomials.  The denominator is kept as a list of
// primitive factors with positive leading coefficients; cancellation against
// the numerator runs factor-by-factor after every operation, so with
// irreducible factors (the only kind produced here: the boundary defining
// polynomial, metric quadrics, user-supplied denominators) gcd(num, den) stays
// a unit and zero/equality tests are exact.
class RationalFn {
 public:
  RationalFn() = default;  // absorbing zero
  explicit RationalFn(MultiPoly num) : num_(std::move(num)) {}
  RationalFn(MultiPoly num, const MultiPoly& den);
  RationalFn(MultiPoly num, std::vector<std::pair<MultiPoly, int>> factors);

  static RationalFn constant(VarsPtr vars, Rational c) {
    return RationalFn(MultiPoly::constant(std::move(vars), std::move(c)));
  }
  static RationalFn variable(VarsPtr vars, const std::string& name) {
    return RationalFn(MultiPoly::variable(std::move(vars), name));
  }

  const MultiPoly& num() const { return num_; }
  const std::vector<std::pair<MultiPoly, int>>& den_factors() const { return den_; }
  MultiPoly den() const;  // expanded denominator
  const VarsPtr& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o) { return *this += -o; }
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  RationalFn reciprocal() const;
  RationalFn scaled(const Rational& c) const;

  // exact equality as rational functions (cross-multiplied)
  bool operator==(const RationalFn& o) const;
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  RationalFn eval_partial(const std::map<int, Rational>& point) const;

  std::string str() const;

 private:
  void normalize();

  MultiPoly num_;
  std::vector<std::pair<MultiPoly, int>> den_;
};

}  // namespace hypres
