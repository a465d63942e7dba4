#include "hypres/liealg.hpp"

#include <sstream>

namespace hypres {

LorentzMatrix LorentzMatrix::identity(int n) {
  LorentzMatrix m(n);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = Rational(1);
  return m;
}

bool LorentzMatrix::is_zero() const {
  for (const auto& v : a)
    if (!v.is_zero()) return false;
  return true;
}

static Rational eta_entry(int i) { return Rational(i == 0 ? -1 : 1); }

bool LorentzMatrix::is_eta_antisymmetric() const {
  // (M^T eta + eta M)_{ij} = M_{ji} eta_j + eta_i M_{ij}
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (!(at(j, i) * eta_entry(j) + eta_entry(i) * at(i, j)).is_zero()) return false;
  return true;
}

bool LorentzMatrix::is_eta_orthogonal() const {
  // (gamma^T eta gamma)_{ij} = sum_k gamma_{ki} eta_k gamma_{kj}
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Rational s(0);
      for (int k = 0; k < dim(); ++k) s += at(k, i) * eta_entry(k) * at(k, j);
      Rational want = (i == j) ? eta_entry(i) : Rational(0);
      if (s != want) return false;
    }
  return true;
}

LorentzMatrix LorentzMatrix::operator-() const { return scaled(Rational(-1)); }

LorentzMatrix operator+(const LorentzMatrix& x, const LorentzMatrix& y) {
  if (x.n != y.n) throw std::domain_error("LorentzMatrix +: size mismatch");
  LorentzMatrix r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

LorentzMatrix operator-(const LorentzMatrix& x, const LorentzMatrix& y) {
  if (x.n != y.n) throw std::domain_error("LorentzMatrix -: size mismatch");
  LorentzMatrix r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

LorentzMatrix operator*(const LorentzMatrix& x, const LorentzMatrix& y) {
  if (x.n != y.n) throw std::domain_error("LorentzMatrix *: size mismatch");
  LorentzMatrix r(x.n);
  const int d = r.dim();
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        if (y.at(k, j).is_zero()) continue;
        r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  return r;
}

LorentzMatrix LorentzMatrix::scaled(const Rational& c) const {
  LorentzMatrix r(n);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
  return r;
}

RMatrix LorentzMatrix::rows() const {
  RMatrix m(dim(), RVector(dim()));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m[i][j] = at(i, j);
  return m;
}

LorentzMatrix LorentzMatrix::from_rows(int n, const RMatrix& rows) {
  LorentzMatrix m(n);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

LorentzMatrix generator(int n, GenKind kind, int i, int j) {
  if (n < 2) throw std::invalid_argument("generator: n must be >= 2");
  LorentzMatrix m(n);
  auto rot = [&](int p, int q) {  // R_pq = E_pq - E_qp
    m.at(p, q) += Rational(1);
    m.at(q, p) += Rational(-1);
  };
  auto boost = [&](int k) {  // P_k = E_0k + E_k0
    m.at(0, k) += Rational(1);
    m.at(k, 0) += Rational(1);
  };
  switch (kind) {
    case GenKind::R:
      if (i < 1 || i > n + 1 || j < 1 || j > n + 1)
        throw std::out_of_range("generator R: indices must lie in 1..n+1");
      if (i != j) rot(i, j);
      break;
    case GenKind::P:
      if (i < 1 || i > n + 1) throw std::out_of_range("generator P: index must lie in 1..n+1");
      boost(i);
      break;
    case GenKind::A:
      boost(n + 1);
      break;
    case GenKind::Nplus:
      if (i < 1 || i > n) throw std::out_of_range("generator N+: index must lie in 1..n");
      boost(i);
      rot(n + 1, i);
      break;
    case GenKind::Nminus:
      if (i < 1 || i > n) throw std::out_of_range("generator N-: index must lie in 1..n");
      boost(i);
      rot(i, n + 1);  // -R_{n+1,k}
      break;
  }
  return m;
}

LorentzMatrix bracket(const LorentzMatrix& m1, const LorentzMatrix& m2) {
  return m1 * m2 - m2 * m1;
}

std::vector<RelationCheck> verify_structure_constants(int n) {
  std::vector<RelationCheck> out;
  auto note = [&](std::string name, bool pass) { out.push_back({std::move(name), pass}); };
  const LorentzMatrix A = generator(n, GenKind::A);
  std::vector<LorentzMatrix> Np, Nm;
  for (int k = 1; k <= n; ++k) {
    Np.push_back(generator(n, GenKind::Nplus, k));
    Nm.push_back(generator(n, GenKind::Nminus, k));
  }
  auto name_idx = [](const char* base, int i, int j) {
    std::ostringstream os;
    os << base << "_" << i;
    if (j > 0) os << j;
    return os.str();
  };
  for (int i = 1; i <= n; ++i) {
    note("[A,N+_" + std::to_string(i) + "] = N+_" + std::to_string(i),
         bracket(A, Np[i - 1]) == Np[i - 1]);
    note("[A,N-_" + std::to_string(i) + "] = -N-_" + std::to_string(i),
         bracket(A, Nm[i - 1]) == -Nm[i - 1]);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      note(name_idx("[N+,N+]", i, j) + " = 0", bracket(Np[i - 1], Np[j - 1]).is_zero());
      note(name_idx("[N-,N-]", i, j) + " = 0", bracket(Nm[i - 1], Nm[j - 1]).is_zero());
      LorentzMatrix want(n);
      if (i == j) want = A.scaled(Rational(2));
      want = want + generator(n, GenKind::R, i, j).scaled(Rational(2));
      note(name_idx("[N+,N-]", i, j) + " = 2A delta + 2R",
           bracket(Np[i - 1], Nm[j - 1]) == want);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const LorentzMatrix R = generator(n, GenKind::R, i, j);
      note(name_idx("[R,A]", i, j) + " = 0", bracket(R, A).is_zero());
      for (int k = 1; k <= n; ++k) {
        LorentzMatrix wantp(n), wantm(n);
        if (j == k) {
          wantp = wantp + Np[i - 1];
          wantm = wantm + Nm[i - 1];
        }
        if (i == k) {
          wantp = wantp - Np[j - 1];
          wantm = wantm - Nm[j - 1];
        }
        note(name_idx("[R,N+]", i, j) + "," + std::to_string(k),
             bracket(R, Np[k - 1]) == wantp);
        note(name_idx("[R,N-]", i, j) + "," + std::to_string(k),
             bracket(R, Nm[k - 1]) == wantm);
      }
    }
  // defining invariant of every generator
  bool eta_ok = A.is_eta_antisymmetric();
  for (int i = 1; i <= n + 1 && eta_ok; ++i) {
    eta_ok = generator(n, GenKind::P, i).is_eta_antisymmetric();
    for (int j = 1; j <= n + 1 && eta_ok; ++j)
      eta_ok = generator(n, GenKind::R, i, j).is_eta_antisymmetric();
  }
  note("all generators eta-antisymmetric", eta_ok);
  return out;
}

std::optional<RVector> expand_in_generator_basis(int n, const LorentzMatrix& m) {
  // basis: R_ij (1 <= i < j <= n+1), then P_k (1 <= k <= n+1)
  std::vector<LorentzMatrix> basis;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) basis.push_back(generator(n, GenKind::R, i, j));
  for (int k = 1; k <= n + 1; ++k) basis.push_back(generator(n, GenKind::P, k));
  const size_t entries = m.a.size();
  RMatrix sys(entries, RVector(basis.size(), Rational(0)));
  RVector rhs(entries);
  for (size_t e = 0; e < entries; ++e) {
    rhs[e] = m.a[e];
    for (size_t b = 0; b < basis.size(); ++b) sys[e][b] = basis[b].a[e];
  }
  return rational_solve_overdetermined(std::move(sys), std::move(rhs));
}

int FrameRing::x(int i) const { return col(0, i); }
int FrameRing::xi(int i) const { return col(n + 1, i); }
int FrameRing::f(int k, int i) const { return col(k, i); }

int FrameRing::col(int a, int i) const {
  if (a < 0 || a > n + 1 || i < 0 || i > n + 1) throw std::out_of_range("FrameRing::col");
  int base = (lambda >= 0) ? 1 : 0;
  return base + a * (n + 2) + i;
}

MultiPoly FrameRing::phi_minus() const { return var(x(0)) - var(xi(0)); }
MultiPoly FrameRing::phi_plus() const { return var(x(0)) + var(xi(0)); }

FrameRing make_frame_ring(int n, bool with_lambda) {
  std::vector<std::string> names;
  if (with_lambda) names.push_back("lam");
  auto col_name = [&](int a, int i) {
    if (a == 0) return "x" + std::to_string(i);
    if (a == n + 1) return "xi" + std::to_string(i);
    return "f" + std::to_string(a) + "_" + std::to_string(i);
  };
  for (int a = 0; a <= n + 1; ++a)
    for (int i = 0; i <= n + 1; ++i) names.push_back(col_name(a, i));
  FrameRing ring;
  ring.n = n;
  ring.vars = std::make_shared<VarTable>(std::move(names));
  ring.lambda = with_lambda ? 0 : -1;
  return ring;
}

Derivation to_derivation(const LorentzMatrix& m, const FrameRing& ring) {
  return to_derivation(m, ring, "D");
}

Derivation to_derivation(const LorentzMatrix& m, const FrameRing& ring,
                         const std::string& name) {
  if (m.n != ring.n) throw std::domain_error("to_derivation: dimension mismatch");
  std::map<int, MultiPoly> action;
  const int d = m.dim();
  for (int a = 0; a < d; ++a) {
    // column c_a moves to sum_b M_{ba} c_b
    bool any = false;
    for (int b = 0; b < d; ++b) any = any || !m.at(b, a).is_zero();
    if (!any) continue;
    for (int i = 0; i < d; ++i) {
      MultiPoly img(ring.vars);
      for (int b = 0; b < d; ++b) {
        if (m.at(b, a).is_zero()) continue;
        img += ring.var(ring.col(b, i)).scaled(m.at(b, a));
      }
      if (!img.is_zero()) action.emplace(ring.col(a, i), std::move(img));
    }
  }
  return Derivation(name, ring.vars, std::move(action));
}

LorentzMatrix cayley(const LorentzMatrix& s) {
  LorentzMatrix id = LorentzMatrix::identity(s.n);
  auto inv = rational_inverse((id - s).rows());
  if (!inv) throw std::domain_error("cayley: I - S singular");
  RMatrix g = rational_matmul(*inv, (id + s).rows());
  return LorentzMatrix::from_rows(s.n, g);
}

GroupSample random_group_point(int n, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    LorentzMatrix s(n);
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j) {
        Rational c = rng.rational(3, 3);
        s = s + generator(n, GenKind::R, i, j).scaled(c);
      }
    for (int k = 1; k <= n + 1; ++k) {
      Rational c = rng.rational(3, 3);
      s = s + generator(n, GenKind::P, k).scaled(c);
    }
    LorentzMatrix g;
    try {
      g = cayley(s);
    } catch (const std::domain_error&) {
      continue;
    }
    if (!g.is_eta_orthogonal()) continue;
    if (g.at(0, 0).sign() <= 0) continue;  // stay in the identity component
    if ((g.at(0, 0) - g.at(0, n + 1)).is_zero()) continue;  // keep Phi_- nonzero
    if ((g.at(0, 0) + g.at(0, n + 1)).is_zero()) continue;  // keep Phi_+ nonzero
    GroupSample out;
    out.gamma = g;
    return out;
  }
  throw std::runtime_error("random_group_point: could not draw a usable sample");
}

std::vector<std::pair<int, Rational>> GroupSample::assignment(const FrameRing& ring) const {
  std::vector<std::pair<int, Rational>> vals;
  const int d = gamma.dim();
  vals.reserve(static_cast<size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i) vals.emplace_back(ring.col(a, i), gamma.at(i, a));
  return vals;
}

}  // namespace hypres
