#pragma once

#include <map>
#include <string>

#include "hypres/rationalfn.hpp"

namespace hypres {

// Linear derivation (vector field) on a polynomial coordinate ring, given by
// the image of each coordinate variable.  The Leibniz rule holds by
// construction of `apply`.
class Derivation {
 public:
  Derivation() = default;  // zero derivation with no domain
  Derivation(std::string name, VarsPtr vars, std::map<int, MultiPoly> action);

  const std::string& name() const { return name_; }
  const VarsPtr& vars() const { return vars_; }
  // Image of a variable; zero polynomial when the variable is fixed.
  MultiPoly action_on(int var) const;
  const std::map<int, MultiPoly>& action() const { return action_; }

  bool is_zero() const { return action_.empty(); }

  MultiPoly apply(const MultiPoly& f) const;
  RationalFn apply(const RationalFn& f) const;

  Derivation scaled(const Rational& c, const std::string& new_name) const;
  friend Derivation operator+(const Derivation& a, const Derivation& b);
  friend Derivation operator-(const Derivation& a, const Derivation& b);
  bool operator==(const Derivation& o) const { return action_ == o.action_; }

 private:
  std::string name_;
  VarsPtr vars_;
  std::map<int, MultiPoly> action_;  // var index -> image, zero images omitted
};

// Sum over variables of D(v) * df/dv, exact.
MultiPoly derive(const Derivation& D, const MultiPoly& f);
RationalFn derive(const Derivation& D, const RationalFn& f);

// [D1, D2] = D1 o D2 - D2 o D1, itself a derivation.
Derivation commutator(const Derivation& D1, const Derivation& D2);

}  // namespace hypres
