#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypres/rational.hpp"
#include "hypres/rationalfn.hpp"

namespace hypres {

// Coefficient-ring glue so the same tensor algebra runs over exact rationals,
// rational functions and doubles.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& c) { return c.is_zero(); }
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational from_long(long v, const Rational&) { return Rational(v); }
  static Rational div_long(const Rational& c, long v) { return c / Rational(v); }
  static std::string str(const Rational& c) { return c.str(); }
};

template <>
struct CoeffOps<RationalFn> {
  static bool is_zero(const RationalFn& c) { return c.is_zero(); }
  static RationalFn zero(const RationalFn& proto) {
    return proto.vars() ? RationalFn::constant(proto.vars(), Rational(0)) : RationalFn();
  }
  static RationalFn from_long(long v, const RationalFn& proto) {
    if (!proto.vars()) throw std::domain_error("CoeffOps<RationalFn>: no variable table");
    return RationalFn::constant(proto.vars(), Rational(v));
  }
  static RationalFn div_long(const RationalFn& c, long v) {
    return c.scaled(Rational(1, v));
  }
  static std::string str(const RationalFn& c) { return c.str(); }
};

template <>
struct CoeffOps<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static double zero(double) { return 0.0; }
  static double from_long(long v, double) { return static_cast<double>(v); }
  static double div_long(double c, long v) { return c / static_cast<double>(v); }
  static std::string str(double c) { return std::to_string(c); }
};

// Element of Sym^m(E) for a metric fibre E of dimension n, stored on the
// basis e_K indexed by sorted multisets K (symmetry built in).  The product
// convention is the unnormalised permutation sum, under which Sym(E) is the
// polynomial algebra in e_1..e_n: e_K sigma e_J = e_{sort(KJ)}, contraction by
// e_a acts as d/d(e_a), and the induced inner product weights a multiset by
// the product of factorials of its multiplicities.
template <class C>
class SymTensor {
 public:
  using Key = std::vector<uint8_t>;  // ascending indices in 1..fibre_dim

  SymTensor() : fibre_dim_(0), degree_(0) {}
  SymTensor(int fibre_dim, int degree, C proto = C{})
      : fibre_dim_(fibre_dim), degree_(degree), proto_(std::move(proto)) {
    if (fibre_dim < 1) throw std::invalid_argument("SymTensor: fibre_dim must be positive");
    if (degree < 0) throw std::invalid_argument("SymTensor: negative degree");
  }

  static SymTensor scalar(int fibre_dim, C value) {
    SymTensor t(fibre_dim, 0, value);
    t.set_coeff({}, std::move(value));
    return t;
  }
  static SymTensor basis(int fibre_dim, Key k, C value) {
    std::sort(k.begin(), k.end());
    SymTensor t(fibre_dim, static_cast<int>(k.size()), value);
    t.set_coeff(std::move(k), std::move(value));
    return t;
  }

  int fibre_dim() const { return fibre_dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  size_t num_entries() const { return coeffs_.size(); }
  const std::map<Key, C>& coeffs() const { return coeffs_; }
  const C& proto() const { return proto_; }

  C coeff(Key k) const {
    std::sort(k.begin(), k.end());
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? CoeffOps<C>::zero(proto_) : it->second;
  }

  void set_coeff(Key k, C value) {
    if (static_cast<int>(k.size()) != degree_)
      throw std::invalid_argument("SymTensor::set_coeff: key size != degree");
    for (auto i : k)
      if (i < 1 || i > fibre_dim_) throw std::out_of_range("SymTensor::set_coeff: index");
    if (!std::is_sorted(k.begin(), k.end())) std::sort(k.begin(), k.end());
    if (CoeffOps<C>::is_zero(value)) coeffs_.erase(k);
    else {
      adopt_proto(value);
      coeffs_[std::move(k)] = std::move(value);
    }
  }

  void add_coeff(const Key& k, const C& value) {
    if (CoeffOps<C>::is_zero(value)) return;
    adopt_proto(value);
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      coeffs_.emplace(k, value);
    } else {
      it->second = it->second + value;
      if (CoeffOps<C>::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  SymTensor operator-() const {
    SymTensor r(fibre_dim_, degree_, proto_);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, CoeffOps<C>::zero(proto_) - c);
    return r;
  }
  SymTensor& operator+=(const SymTensor& o) {
    require_compatible(o, true);
    for (const auto& [k, c] : o.coeffs_) add_coeff(k, c);
    return *this;
  }
  SymTensor& operator-=(const SymTensor& o) { return *this += -o; }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }

  SymTensor scaled(const C& s) const {
    SymTensor r(fibre_dim_, degree_, proto_);
    if (CoeffOps<C>::is_zero(s)) return r;
    for (const auto& [k, c] : coeffs_) r.add_coeff(k, c * s);
    return r;
  }
  SymTensor scaled_long(long s) const {
    SymTensor r(fibre_dim_, degree_, proto_);
    if (s == 0) return r;
    for (const auto& [k, c] : coeffs_) r.add_coeff(k, c * CoeffOps<C>::from_long(s, pick_proto(c)));
    return r;
  }
  SymTensor div_long(long s) const {
    SymTensor r(fibre_dim_, degree_, proto_);
    for (const auto& [k, c] : coeffs_) r.add_coeff(k, CoeffOps<C>::div_long(c, s));
    return r;
  }

  bool operator==(const SymTensor& o) const {
    if (fibre_dim_ != o.fibre_dim_ || degree_ != o.degree_) return false;
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (auto ita = coeffs_.begin(), itb = o.coeffs_.begin(); ita != coeffs_.end(); ++ita, ++itb) {
      if (ita->first != itb->first || !(ita->second == itb->second)) return false;
    }
    return true;
  }
  bool operator!=(const SymTensor& o) const { return !(*this == o); }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << CoeffOps<C>::str(c) << ")";
      if (k.empty()) os << "*1";
      for (auto i : k) os << "*e" << static_cast<int>(i);
    }
    return os.str();
  }

  void require_compatible(const SymTensor& o, bool same_degree) const {
    if (fibre_dim_ != o.fibre_dim_)
      throw std::domain_error("SymTensor: fibre dimension mismatch");
    if (same_degree && degree_ != o.degree_)
      throw std::domain_error("SymTensor: degree mismatch");
  }

  const C& pick_proto(const C& candidate) const {
    if constexpr (std::is_same_v<C, RationalFn>) {
      return proto_.vars() ? proto_ : candidate;
    } else {
      return proto_;
    }
    (void)candidate;
  }

 private:
  void adopt_proto(const C& value) {
    if constexpr (std::is_same_v<C, RationalFn>) {
      if (!proto_.vars() && value.vars()) proto_ = CoeffOps<C>::zero(value);
    } else {
      (void)value;
    }
  }

  int fibre_dim_;
  int degree_;
  C proto_;
  std::map<Key, C> coeffs_;
};

namespace detail {
inline long multiplicity_factorial(const std::vector<uint8_t>& key) {
  long f = 1;
  size_t i = 0;
  while (i < key.size()) {
    size_t j = i;
    long run = 0;
    while (j < key.size() && key[j] == key[i]) {
      ++run;
      f *= run;
      ++j;
    }
    i = j;
  }
  return f;
}

inline int key_multiplicity(const std::vector<uint8_t>& key, uint8_t idx) {
  int m = 0;
  for (auto i : key)
    if (i == idx) ++m;
  return m;
}
}  // namespace detail

// Symmetrised product (unnormalised permutation-sum convention): on the
// multiset basis it is plain concatenation.
template <class C>
SymTensor<C> sym_product(const SymTensor<C>& u, const SymTensor<C>& v) {
  u.require_compatible(v, false);
  SymTensor<C> r(u.fibre_dim(), u.degree() + v.degree(),
                 u.coeffs().empty() ? v.proto() : u.proto());
  for (const auto& [ku, cu] : u.coeffs()) {
    for (const auto& [kv, cv] : v.coeffs()) {
      typename SymTensor<C>::Key k;
      k.reserve(ku.size() + kv.size());
      std::merge(ku.begin(), ku.end(), kv.begin(), kv.end(), std::back_inserter(k));
      r.add_coeff(k, cu * cv);
    }
  }
  return r;
}

// Induced inner product g(u1 s .. s um, v1 s .. s vm) = sum over permutations
// of products of pairings; diagonal on the multiset basis with weight equal
// to the product of multiplicity factorials.
template <class C>
C inner(const SymTensor<C>& u, const SymTensor<C>& v) {
  u.require_compatible(v, true);
  C acc = CoeffOps<C>::zero(u.coeffs().empty() ? v.proto() : u.proto());
  for (const auto& [k, cu] : u.coeffs()) {
    auto it = v.coeffs().find(k);
    if (it == v.coeffs().end()) continue;
    long w = detail::multiplicity_factorial(k);
    acc = acc + cu * it->second * CoeffOps<C>::from_long(w, u.pick_proto(cu));
  }
  return acc;
}

// Contraction by a vector (degree-1 tensor): the metric adjoint of the
// symmetrised product, i.e. d/d(e_a) on the polynomial model.
template <class C>
SymTensor<C> contract(const SymTensor<C>& u, const SymTensor<C>& w) {
  u.require_compatible(w, false);
  if (u.degree() != 1) throw std::domain_error("contract: first argument must have degree 1");
  if (w.degree() == 0) throw std::domain_error("contract: nothing to contract in degree 0");
  SymTensor<C> r(w.fibre_dim(), w.degree() - 1, w.proto());
  for (const auto& [ka, ca] : u.coeffs()) {
    uint8_t a = ka[0];
    for (const auto& [k, c] : w.coeffs()) {
      int mult = detail::key_multiplicity(k, a);
      if (mult == 0) continue;
      typename SymTensor<C>::Key k2;
      k2.reserve(k.size() - 1);
      bool removed = false;
      for (auto i : k) {
        if (!removed && i == a) {
          removed = true;
          continue;
        }
        k2.push_back(i);
      }
      r.add_coeff(k2, ca * c * CoeffOps<C>::from_long(mult, w.pick_proto(c)));
    }
  }
  return r;
}

template <class C>
SymTensor<C> lefschetz_L(const SymTensor<C>& u) {
  SymTensor<C> r(u.fibre_dim(), u.degree() + 2, u.proto());
  for (const auto& [k, c] : u.coeffs()) {
    for (uint8_t i = 1; i <= u.fibre_dim(); ++i) {
      typename SymTensor<C>::Key k2;
      k2.reserve(k.size() + 2);
      typename SymTensor<C>::Key ins = {i, i};
      std::merge(k.begin(), k.end(), ins.begin(), ins.end(), std::back_inserter(k2));
      r.add_coeff(k2, c);
    }
  }
  return r;
}

template <class C>
SymTensor<C> lefschetz_Lambda(const SymTensor<C>& u) {
  if (u.degree() < 2) return SymTensor<C>(u.fibre_dim(), 0, u.proto());
  SymTensor<C> r(u.fibre_dim(), u.degree() - 2, u.proto());
  for (const auto& [k, c] : u.coeffs()) {
    for (uint8_t i = 1; i <= u.fibre_dim(); ++i) {
      int mult = detail::key_multiplicity(k, i);
      if (mult < 2) continue;
      typename SymTensor<C>::Key k2;
      k2.reserve(k.size() - 2);
      int removed = 0;
      for (auto idx : k) {
        if (idx == i && removed < 2) {
          ++removed;
          continue;
        }
        k2.push_back(idx);
      }
      r.add_coeff(k2, c * CoeffOps<C>::from_long(static_cast<long>(mult) * (mult - 1),
                                                 u.pick_proto(c)));
    }
  }
  return r;
}

template <class C>
struct TraceDecomposition {
  // parts[k] is trace-free of degree m - 2k; reassembly sum_k L^k parts[k].
  std::vector<SymTensor<C>> parts;
};

template <class C>
SymTensor<C> reassemble(const TraceDecomposition<C>& dec) {
  if (dec.parts.empty()) throw std::domain_error("reassemble: empty decomposition");
  SymTensor<C> acc = dec.parts[0];
  for (size_t k = 1; k < dec.parts.size(); ++k) {
    SymTensor<C> t = dec.parts[k];
    for (size_t i = 0; i < k; ++i) t = lefschetz_L(t);
    acc += t;
  }
  return acc;
}

// Splits u = sum_k L^k v_k with Lambda v_k = 0, by exact back-substitution:
// on a trace-free part of degree r, Lambda L^k = 2k(n + 2r + 2k - 2) L^{k-1}.
template <class C>
TraceDecomposition<C> trace_free_decompose(const SymTensor<C>& u) {
  const int n = u.fibre_dim();
  const int m = u.degree();
  if (n < 2) throw std::domain_error("trace_free_decompose: fibre_dim must be >= 2");
  const int kmax = m / 2;
  TraceDecomposition<C> dec;
  dec.parts.assign(kmax + 1, SymTensor<C>());
  SymTensor<C> residue = u;
  for (int k = kmax; k >= 0; --k) {
    // peel the L^k component: apply Lambda^k and divide by the accumulated factor
    SymTensor<C> t = residue;
    for (int j = 0; j < k; ++j) t = lefschetz_Lambda(t);
    const int r = m - 2 * k;
    long factor = 1;
    for (int j = k; j >= 1; --j) factor *= 2L * j * (n + 2 * r + 2 * j - 2);
    SymTensor<C> vk = (factor == 1) ? t : t.div_long(factor);
    // guard: each part must be exactly trace-free
    if (!lefschetz_Lambda(vk).is_zero())
      throw std::runtime_error("trace_free_decompose: non-trace-free part (singular system)");
    dec.parts[k] = vk;
    SymTensor<C> lk = vk;
    for (int j = 0; j < k; ++j) lk = lefschetz_L(lk);
    residue -= lk;
  }
  if (!residue.is_zero())
    throw std::runtime_error("trace_free_decompose: reassembly residue nonzero");
  return dec;
}

}  // namespace hypres
