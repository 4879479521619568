#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <vector>

#include "symtrace/errors.hpp"
#include "symtrace/polynomial.hpp"
#include "symtrace/rational.hpp"

namespace symtrace {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// The hidden decomposition parameters: a multiset of symmetric-power degrees
// plus a determinant-twist weight, so the represented map is
//   g  |->  (sym_power(g, n_1) ⊗ ... ⊗ sym_power(g, n_r)) * det(g)^w .
// Factors are kept sorted ascending; Kronecker nesting is left-to-right over
// that order, so outputs are bit-reproducible.
struct RepSpec {
  std::vector<int> factors;
  int det_weight = 0;

  RepSpec(std::vector<int> f, int w) : factors(std::move(f)), det_weight(w) {
    if (factors.empty()) fail(Errc::wrong_shape, "RepSpec needs at least one factor");
    for (int n : factors)
      if (n < 1) fail(Errc::wrong_shape, "RepSpec factors must be positive");
    if (det_weight < 0) fail(Errc::wrong_shape, "RepSpec weight must be non-negative");
    std::sort(factors.begin(), factors.end());
  }

  Integer dimension() const {
    Integer dim = 1;
    for (int n : factors) dim *= n + 1;
    return dim;
  }

  int degree_sum() const {
    int s = 0;
    for (int n : factors) s += n;
    return s;
  }
};

inline RationalMatrix rational_identity(int n) {
  RationalMatrix id(n, n);
  id.setZero();
  for (int i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

inline bool exact_equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline Rational trace2(const RationalMatrix& g) { return g(0, 0) + g(1, 1); }
inline Rational det2(const RationalMatrix& g) { return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0); }

inline RationalMatrix inverse2(const RationalMatrix& g) {
  Rational d = det2(g);
  if (d == 0) fail(Errc::singular_input, "2x2 matrix is singular");
  RationalMatrix out(2, 2);
  out(0, 0) = g(1, 1) / d;
  out(0, 1) = -g(0, 1) / d;
  out(1, 0) = -g(1, 0) / d;
  out(1, 1) = g(0, 0) / d;
  return out;
}

// Exact determinant by Gaussian elimination over the rationals.
inline Rational exact_det(RationalMatrix a) {
  if (a.rows() != a.cols()) fail(Errc::wrong_shape, "determinant of non-square matrix");
  const Eigen::Index n = a.rows();
  Rational det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

// Action of a 2x2 matrix on the degree-n monomial basis x^n, x^{n-1} y, ..., y^n.
// Row i holds the expansion of (a x + b y)^{n-i} (c x + d y)^i, which makes
// sym_power(g, 1) = g and sym_power(g h, n) = sym_power(g, n) sym_power(h, n).
inline RationalMatrix sym_power(const RationalMatrix& g, int n) {
  if (g.rows() != 2 || g.cols() != 2) fail(Errc::wrong_shape, "sym_power expects a 2x2 matrix");
  if (n < 0) throw std::invalid_argument("sym_power: negative power");
  const Rational a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);

  // binom[k][l] for k <= n
  std::vector<std::vector<Integer>> binom(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    binom[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(k) + 1, 1);
    for (int l = 1; l < k; ++l)
      binom[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
          binom[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)] +
          binom[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l)];
  }
  auto expand = [&](const Rational& u, const Rational& v, int m) {
    // coefficients of (u x + v y)^m in x^{m-k} y^k
    std::vector<Rational> out(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
      out[static_cast<std::size_t>(k)] = Rational(binom[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]) *
                                         rational_pow(u, static_cast<unsigned long>(m - k)) *
                                         rational_pow(v, static_cast<unsigned long>(k));
    return out;
  };

  RationalMatrix out(n + 1, n + 1);
  out.setZero();
  for (int i = 0; i <= n; ++i) {
    const auto p = expand(a, b, n - i);
    const auto q = expand(c, d, i);
    for (std::size_t k = 0; k < p.size(); ++k)
      for (std::size_t l = 0; l < q.size(); ++l)
        out(i, static_cast<Eigen::Index>(k + l)) += p[k] * q[l];
  }
  return out;
}

// Kronecker product of square matrices; trace(kron(a, b)) = trace(a) trace(b).
inline RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    fail(Errc::wrong_shape, "kron expects square matrices");
  return Eigen::kroneckerProduct(a, b).eval();
}

// The full decomposed representation: tensor of symmetric powers scaled by a
// power of the determinant.
inline RationalMatrix build_rep(const RepSpec& spec, const RationalMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) fail(Errc::wrong_shape, "build_rep expects a 2x2 matrix");
  const Rational d = det2(g);
  if (d == 0) fail(Errc::singular_input, "build_rep needs an invertible matrix");
  RationalMatrix acc = sym_power(g, spec.factors.front());
  for (std::size_t i = 1; i < spec.factors.size(); ++i)
    acc = kron(acc, sym_power(g, spec.factors[i]));
  const Rational scale = rational_pow(d, static_cast<unsigned long>(spec.det_weight));
  return (scale * acc).eval();
}

// trace(build_rep(spec, g)) computed directly from (trace g, det g).
inline Rational rep_trace(const RepSpec& spec, const Rational& t, const Rational& d) {
  Rational acc = rational_pow(d, static_cast<unsigned long>(spec.det_weight));
  for (int n : spec.factors) acc *= hom_trace(n, t, d);
  return acc;
}

inline Integer rep_dim(const RepSpec& spec) { return spec.dimension(); }

}  // namespace symtrace
