#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypres/bands.hpp"
#include "hypres/liealg.hpp"
#include "hypres/symtensor.hpp"

namespace hypres {

// Shared data for computations with lambda-twisted sections over one fibre
// dimension n: the frame ring (with the formal twist parameter), the
// generator derivations, the boundary-map rational functions and the frame
// constraints.
struct HoroContext {
  int n = 0;
  FrameRing ring;
  Derivation A;
  std::vector<Derivation> Nplus;            // index k-1
  std::vector<Derivation> Nminus;           // index k-1
  std::map<std::pair<int, int>, Derivation> R;  // (i,j), i < j

  RationalFn lambda;                        // the formal twist parameter
  MultiPoly phi_minus;                      // x0 - xi0
  std::vector<RationalFn> twist_plus;       // N^+_k(Phi_-)/Phi_- per k
  std::vector<RationalFn> y;                // boundary point B_-, entries 1..n+1
  std::vector<std::vector<RationalFn>> tau_f;  // tau_-(f_k) spatial entries 1..n+1
  std::vector<MultiPoly> constraints;       // frame quadrics <c_a,c_b> - eta_ab

  RationalFn zero() const { return RationalFn::constant(ring.vars, Rational(0)); }
  RationalFn one() const { return RationalFn::constant(ring.vars, Rational(1)); }
};

HoroContext make_horo_context(int n);

// A lambda-twisted section Phi_-^lambda (x) body, represented by the
// equivariant-frame components of `body`; coefficients are rational in the
// frame entries with lambda-polynomial numerators.  Generator derivations act
// through the twist rules A(Phi_-) = -Phi_-, N^-_k(Phi_-) = 0,
// N^+_k(Phi_-) = 2 f_k[0].
struct TwistedSection {
  int n = 0;
  SymTensor<RationalFn> body;

  int degree() const { return body.degree(); }
  bool is_zero() const { return body.is_zero(); }
  TwistedSection operator-() const { return {n, -body}; }
  friend TwistedSection operator+(const TwistedSection& a, const TwistedSection& b) {
    return {a.n, a.body + b.body};
  }
  friend TwistedSection operator-(const TwistedSection& a, const TwistedSection& b) {
    return {a.n, a.body - b.body};
  }
  TwistedSection scaled(const RationalFn& c) const { return {n, body.scaled(c)}; }
};

enum class Gen { A, Nplus, Nminus, Rot };

// Lie derivative of a twisted section along one generator (k is 1-based for
// N^pm; (i,j) for rotations).
TwistedSection lie_derivative(const HoroContext& ctx, Gen g, int k, const TwistedSection& u,
                              int j = 0);

TwistedSection flow_derivative_A(const HoroContext& ctx, const TwistedSection& u);
TwistedSection d_minus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection d_plus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection div_minus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection div_plus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection delta_minus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection delta_plus(const HoroContext& ctx, const TwistedSection& u);
TwistedSection lefschetz_L(const HoroContext& ctx, const TwistedSection& u);
TwistedSection lefschetz_Lambda(const HoroContext& ctx, const TwistedSection& u);

// ---------------------------------------------------------------------------
// Exactness certificates.  Identities that need the frame orthonormality only
// hold modulo the constraint ideal; the verifier reports the strongest level
// reached: identically zero as a free rational function, zero after reduction
// by the frame quadrics, or exactly zero (as a lambda-polynomial) at every
// sampled rational group point.

enum class ZeroLevel { Identical, ModConstraints, AtSamples, NotZero };

std::string zero_level_name(ZeroLevel level);

struct ZeroCheck {
  ZeroLevel level = ZeroLevel::NotZero;
  std::string witness;  // lambda-polynomial residual at the first failing sample
  bool ok() const { return level != ZeroLevel::NotZero; }
};

class GroupSampler {
 public:
  GroupSampler(const HoroContext& ctx, uint64_t seed, int count);
  const std::vector<std::map<int, Rational>>& points() const { return points_; }

 private:
  std::vector<std::map<int, Rational>> points_;
};

ZeroCheck verify_zero(const HoroContext& ctx, const RationalFn& f, const GroupSampler& smp,
                      size_t reduction_term_limit = 400);
ZeroCheck verify_zero(const HoroContext& ctx, const TwistedSection& u, const GroupSampler& smp,
                      size_t reduction_term_limit = 400);

// ---------------------------------------------------------------------------
// Boundary data: symmetric m-tensors on the sphere tangent to nothing in
// particular (evaluation happens on tangent vectors only), with components
// polynomial in the ambient coordinates y_1..y_{n+1}.

struct BoundaryTensor {
  int n = 0;  // boundary sphere dimension
  int m = 0;
  VarsPtr yvars;  // ambient coordinates y1..y{n+1}
  std::map<std::vector<uint8_t>, MultiPoly> comps;  // sorted multiset over 1..n+1

  static BoundaryTensor scalar(int n, MultiPoly p);
  static BoundaryTensor scalar_constant(int n, Rational c);
  // restriction of an ambient coordinate function y_i
  static BoundaryTensor scalar_coordinate(int n, int i);
  static BoundaryTensor one_form_constant(int n, const std::vector<Rational>& a);
  // tangentially trace-free symmetric 2-tensor built from a symmetric matrix Q:
  // omega(v, w) = Q(v, w) - ((tr Q - Q(y,y)) / n) <v, w>
  static BoundaryTensor trace_free_two_tensor(int n, const RMatrix& q);

  static VarsPtr make_yvars(int n);
};

// Phi_-^lambda Q_- omega with Q_- omega = (tensor power of tau_-^*) omega(B_-).
TwistedSection build_twisted_state(const HoroContext& ctx, const BoundaryTensor& omega);

struct StateChecks {
  ZeroCheck a_eigen;      // (A + lambda) u = 0
  ZeroCheck nabla_minus;  // every N^-_k component derivative vanishes
  ZeroCheck trace;        // Lambda u = 0
  bool ok() const { return a_eigen.ok() && nabla_minus.ok() && trace.ok(); }
};

StateChecks check_twisted_state(const HoroContext& ctx, const TwistedSection& u,
                                const GroupSampler& smp);

// Lemma-style equivariance of the frame components (infinitesimal m-invariance).
ZeroCheck check_equivariance(const HoroContext& ctx, const TwistedSection& u,
                             const GroupSampler& smp);

// ---------------------------------------------------------------------------
// Band-inversion identity (d_-)^m (Delta_+)^k (div_+)^r = L^k P_{r,k}(A) on
// the twisted model state of omega (trace-free, degree r = m - 2k).

struct InversionReport {
  int n = 0, m = 0, k = 0, r = 0;
  StateChecks state;
  ZeroCheck identity;
  std::string p_polynomial;
  bool pass = false;
};

InversionReport verify_horocycle_inversion(const HoroContext& ctx, int m, int k,
                                           const BoundaryTensor& omega,
                                           const GroupSampler& smp);

// Random twisted sections (not Q_- states) for commutator property tests.
TwistedSection random_twisted_section(const HoroContext& ctx, int degree, Rng& rng,
                                      int phi_power = 1, int nterms = 2);

}  // namespace hypres
