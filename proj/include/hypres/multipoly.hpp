#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypres/rational.hpp"

namespace hypres {

// Thrown when a computation would exceed the configured term-count budget.
// Exact verification of the band-inversion identities grows combinatorially,
// so oversized requests fail loudly instead of thrashing.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(size_t terms, size_t budget)
      : std::runtime_error("polynomial term budget exceeded: " + std::to_string(terms) +
                           " > " + std::to_string(budget)) {}
};

// Global term budget (default 10^6, overridable via HYPRES_BUDGET).
std::atomic<size_t>& poly_budget();
void check_budget(size_t terms);

// Immutable ordered list of variable names shared by the polynomials of one
// computation.  Structural identity of the list defines domain compatibility.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  // -1 when the name is unknown.
  int index_of(const std::string& n) const;

  bool operator==(const VarTable& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

using VarsPtr = std::shared_ptr<const VarTable>;

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  return a == b || (a && b && *a == *b);
}

using Expo = std::vector<uint16_t>;

struct Term {
  uint32_t deg = 0;  // cached total degree
  Expo mono;
  Rational coef;
};

// graded-lex order, larger first when used for term lists
int cmp_graded_lex(uint32_t deg_a, const Expo& a, uint32_t deg_b, const Expo& b);

// Sparse multivariate polynomial over Rational with graded-lexicographic
// canonical term order (descending), no zero coefficients stored.
class MultiPoly {
 public:
  MultiPoly() = default;  // absorbing zero with no variable table
  explicit MultiPoly(VarsPtr vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(VarsPtr vars, Rational c);
  static MultiPoly variable(VarsPtr vars, int var);
  static MultiPoly variable(VarsPtr vars, const std::string& name);
  static MultiPoly monomial(VarsPtr vars, Expo e, Rational c);

  const VarsPtr& vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].deg == 0); }
  Rational constant_value() const;
  size_t num_terms() const { return terms_.size(); }
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_[0].deg); }
  int degree_in(int var) const;
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned k) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(int var) const;

  // Exact division: returns quotient iff d divides *this exactly.
  // Linear divisors take a synthetic-division fast path.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  // Multivariate reduction by the given polynomials (any term divisible by a
  // leading term gets eliminated).  Reaching zero certifies ideal membership;
  // the basis is not assumed Groebner, so a nonzero result is inconclusive.
  MultiPoly reduce_mod(std::span<const MultiPoly> basis, size_t max_steps = 200000) const;

  // gcd of all coefficients times sign of the leading one; zero poly -> 0.
  Rational content() const;

  Rational eval(const std::vector<Rational>& point) const;
  // Substitutes the given variables, keeps the rest symbolic.
  MultiPoly eval_partial(const std::map<int, Rational>& point) const;

  std::string str() const;

  // internal: terms must be sorted descending, nonzero, matching vars
  static MultiPoly from_sorted_terms(VarsPtr vars, std::vector<Term> terms);

 private:
  void insert_accumulate(std::map<std::pair<uint32_t, Expo>, Rational,
                                  std::greater<std::pair<uint32_t, Expo>>>& acc,
                         uint32_t deg, const Expo& e, const Rational& c) const;

  VarsPtr vars_;
  std::vector<Term> terms_;
};

// Throws std::domain_error unless both operands share a variable table
// (the absorbing zero with null table is compatible with everything).
void require_same_vars(const MultiPoly& a, const MultiPoly& b, const char* op);

}  // namespace hypres
