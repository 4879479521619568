#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symtrace/errors.hpp"
#include "symtrace/rational.hpp"

namespace symtrace {

// Dense univariate polynomial over a field scalar, coefficients stored lowest
// degree first with no trailing zeros; the zero polynomial is the empty list.
template <class Scalar>
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static DensePolynomial zero() { return DensePolynomial(); }
  static DensePolynomial constant(const Scalar& v) { return DensePolynomial({v}); }
  static DensePolynomial variable() { return DensePolynomial({Scalar(0), Scalar(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Scalar>& coefficients() const { return c_; }

  Scalar coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<std::size_t>(k)];
  }

  const Scalar& leading() const { return c_.back(); }  // requires nonzero
  bool is_monic() const { return !c_.empty() && c_.back() == Scalar(1); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  DensePolynomial operator-() const {
    std::vector<Scalar> out(c_);
    for (auto& v : out) v = -v;
    return DensePolynomial(std::move(out));
  }

  friend DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return DensePolynomial(std::move(out));
  }

  friend DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b) {
    return a + (-b);
  }

  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return DensePolynomial(std::move(out));
  }

  friend DensePolynomial operator*(const Scalar& s, const DensePolynomial& a) {
    std::vector<Scalar> out(a.c_);
    for (auto& v : out) v = s * v;
    return DensePolynomial(std::move(out));
  }

  friend bool operator==(const DensePolynomial& a, const DensePolynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const DensePolynomial& a, const DensePolynomial& b) {
    return !(a == b);
  }

  // Lexicographic on (degree, coefficients); a total order for use as map key.
  friend bool operator<(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

// num = den * quotient + remainder, deg(remainder) < deg(den); exact over a field.
template <class Scalar>
std::pair<DensePolynomial<Scalar>, DensePolynomial<Scalar>> poly_divrem(
    const DensePolynomial<Scalar>& num, const DensePolynomial<Scalar>& den) {
  if (den.is_zero()) fail(Errc::division_by_zero_polynomial, "polynomial division by zero");
  if (num.degree() < den.degree()) return {DensePolynomial<Scalar>::zero(), num};

  std::vector<Scalar> rem(num.coefficients());
  const int dq = num.degree() - den.degree();
  std::vector<Scalar> quo(static_cast<std::size_t>(dq) + 1, Scalar(0));
  const Scalar lead_inv = Scalar(1) / den.leading();
  for (int k = dq; k >= 0; --k) {
    Scalar q = rem[static_cast<std::size_t>(k + den.degree())] * lead_inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == Scalar(0)) continue;
    for (int j = 0; j <= den.degree(); ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(den.degree() > 0 ? den.degree() : 0));
  return {DensePolynomial<Scalar>(std::move(quo)), DensePolynomial<Scalar>(std::move(rem))};
}

// Unique polynomial of degree < |points| through all points (Lagrange, exact).
template <class Scalar>
DensePolynomial<Scalar> interpolate(const std::vector<std::pair<Scalar, Scalar>>& points) {
  if (points.empty()) throw std::invalid_argument("interpolate: need at least one point");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        fail(Errc::duplicate_abscissa, "abscissae " + std::to_string(i) + " and " +
                                           std::to_string(j) + " coincide");

  DensePolynomial<Scalar> acc;
  for (std::size_t i = 0; i < points.size(); ++i) {
    DensePolynomial<Scalar> basis = DensePolynomial<Scalar>::constant(Scalar(1));
    Scalar denom(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * DensePolynomial<Scalar>({-points[j].first, Scalar(1)});
      denom *= points[i].first - points[j].first;
    }
    acc = acc + (points[i].second / denom) * basis;
  }
  return acc;
}

// The trace polynomial of the n-th symmetric power on determinant-one input:
// T_0 = 1, T_1 = t, T_n = t*T_{n-1} - T_{n-2}. Monic of degree n over Z.
inline DensePolynomial<Rational> trace_poly(int n) {
  if (n < 0) throw std::invalid_argument("trace_poly: negative index");
  DensePolynomial<Rational> prev = DensePolynomial<Rational>::constant(Rational(1));
  if (n == 0) return prev;
  DensePolynomial<Rational> cur = DensePolynomial<Rational>::variable();
  const DensePolynomial<Rational> t = cur;
  for (int k = 2; k <= n; ++k) {
    DensePolynomial<Rational> next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Determinant-twisted trace value S_n(t, d): the trace of the n-th symmetric
// power of any 2x2 matrix with trace t and determinant d.
// S_0 = 1, S_1 = t, S_n = t*S_{n-1} - d*S_{n-2}.
inline Rational hom_trace(int n, const Rational& t, const Rational& d) {
  if (n < 0) throw std::invalid_argument("hom_trace: negative index");
  Rational prev(1);
  if (n == 0) return prev;
  Rational cur = t;
  for (int k = 2; k <= n; ++k) {
    Rational next = t * cur - d * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline std::string to_string(const DensePolynomial<Rational>& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (c == 0) continue;
    const bool first = out.empty();
    if (!first) out += (c < 0) ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational a = abs(c);
    const bool unit = (a == 1);
    if (!unit || k == 0) out += format_rational(a);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace symtrace
