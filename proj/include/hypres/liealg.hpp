#pragma once

#include <string>
#include <vector>

#include "hypres/derivation.hpp"
#include "hypres/linalg_exact.hpp"
#include "hypres/rng.hpp"

namespace hypres {

// Exact (n+2)x(n+2) matrix in so(1, n+1): M^T eta + eta M = 0 for
// eta = diag(-1, 1, ..., 1).  Also used for group elements (eta-orthogonal).
struct LorentzMatrix {
  int n = 0;                // so the matrix is (n+2)x(n+2)
  std::vector<Rational> a;  // row-major

  LorentzMatrix() = default;
  explicit LorentzMatrix(int n_) : n(n_), a(static_cast<size_t>((n_ + 2) * (n_ + 2))) {}

  int dim() const { return n + 2; }
  Rational& at(int i, int j) { return a[static_cast<size_t>(i * dim() + j)]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i * dim() + j)]; }

  static LorentzMatrix identity(int n);

  bool is_zero() const;
  bool is_eta_antisymmetric() const;  // infinitesimal isometry invariant
  bool is_eta_orthogonal() const;     // gamma^T eta gamma = eta

  LorentzMatrix operator-() const;
  friend LorentzMatrix operator+(const LorentzMatrix& x, const LorentzMatrix& y);
  friend LorentzMatrix operator-(const LorentzMatrix& x, const LorentzMatrix& y);
  friend LorentzMatrix operator*(const LorentzMatrix& x, const LorentzMatrix& y);
  LorentzMatrix scaled(const Rational& c) const;
  bool operator==(const LorentzMatrix& o) const { return n == o.n && a == o.a; }

  RMatrix rows() const;
  static LorentzMatrix from_rows(int n, const RMatrix& rows);
};

enum class GenKind { R, P, A, Nplus, Nminus };

// The paper's generators: R_ij = E_ij - E_ji, P_k = E_0k + E_k0 (1 <= i,j,k
// <= n+1), A = P_{n+1}, N^pm_k = P_k +- R_{n+1,k} (1 <= k <= n).
LorentzMatrix generator(int n, GenKind kind, int i = 0, int j = 0);

LorentzMatrix bracket(const LorentzMatrix& m1, const LorentzMatrix& m2);

struct RelationCheck {
  std::string relation;
  bool pass = false;
};

// Exact check of every displayed commutator relation between A, N^pm, R.
std::vector<RelationCheck> verify_structure_constants(int n);

// Expresses M as an exact linear combination over the generator basis
// {R_ij (i<j), P_k}; nullopt when M is outside the span.
std::optional<RVector> expand_in_generator_basis(int n, const LorentzMatrix& m);

// ---------------------------------------------------------------------------
// Derivation realization.
//
// A group element is the frame of its columns (x, f_1..f_n, xi); functions on
// the group are polynomials in the column entries.  A Lie algebra element M
// acts as the left-invariant vector field: column c_a flows by
// d/dt (gamma e^{tM}) e_a = sum_b M_{ba} c_b, which makes M |-> derivation a
// homomorphism (epsilon = +1), anchored by A(Phi_-) = -Phi_- and
// N^-_k(Phi_-) = 0 for Phi_- = x0 - xi0.

struct FrameRing {
  int n = 0;
  VarsPtr vars;
  int lambda = -1;  // index of the formal twist parameter, -1 when absent

  int x(int i) const;            // x_i, 0 <= i <= n+1
  int xi(int i) const;           // xi_i
  int f(int k, int i) const;     // frame column f_k entry i, 1 <= k <= n
  int col(int a, int i) const;   // unified: col 0 = x, col n+1 = xi, else f_a
  MultiPoly var(int idx) const { return MultiPoly::variable(vars, idx); }
  MultiPoly phi_minus() const;   // x0 - xi0
  MultiPoly phi_plus() const;    // x0 + xi0
};

FrameRing make_frame_ring(int n, bool with_lambda);

Derivation to_derivation(const LorentzMatrix& m, const FrameRing& ring);
Derivation to_derivation(const LorentzMatrix& m, const FrameRing& ring,
                         const std::string& name);

// ---------------------------------------------------------------------------
// Exact rational points of SO_0(1, n+1) via the Cayley transform
// gamma = (I - S)^{-1} (I + S) of random rational S in so(1, n+1).

LorentzMatrix cayley(const LorentzMatrix& s);  // throws if I - S is singular

struct GroupSample {
  LorentzMatrix gamma;
  // values of the frame-ring variables (lambda excluded)
  std::vector<std::pair<int, Rational>> assignment(const FrameRing& ring) const;
};

GroupSample random_group_point(int n, Rng& rng);

}  // namespace hypres
