#include "symtrace/decode.hpp"

#include <set>
#include <string>
#include <utility>

#include "symtrace/rng.hpp"

namespace symtrace {

namespace {

Rational twisted_product(const std::vector<int>& factors, const Rational& t, const Rational& d,
                         int weight) {
  Rational acc = rational_pow(d, static_cast<unsigned long>(weight));
  for (int n : factors) acc *= hom_trace(n, t, d);
  return acc;
}

}  // namespace

std::vector<FamilySample> simulate_family(const RepSpec& spec, int det1_count, int twist_count,
                                          std::uint64_t seed) {
  if (det1_count < 0 || twist_count < 0)
    throw std::invalid_argument("simulate_family: negative sample count");
  SplitMix64 rng(seed);
  std::vector<FamilySample> out;
  out.reserve(static_cast<std::size_t>(det1_count + twist_count));

  // Pairwise-distinct traces with 20x headroom in the draw range.
  const long long bound1 = 10LL * std::max(det1_count, 1);
  std::set<long long> used_traces;
  while (static_cast<int>(used_traces.size()) < det1_count) {
    long long t = rng.in_range(-bound1, bound1);
    if (!used_traces.insert(t).second) continue;
    FamilySample s;
    s.t = Rational(static_cast<long>(t));
    s.d = 1;
    s.v = rep_trace(spec, s.t, s.d);
    out.push_back(std::move(s));
  }

  // Twist samples: distinct integer determinants >= 2; pairs where the
  // symmetric-power product vanishes are redrawn so the weight stays readable.
  const long long bound2 = 10LL * std::max(twist_count, 1);
  std::set<long long> used_dets;
  while (static_cast<int>(used_dets.size()) < twist_count) {
    long long t = rng.in_range(-bound2, bound2);
    long long d = rng.in_range(2, 2 + bound2);
    if (used_dets.count(d)) continue;
    FamilySample s;
    s.t = Rational(static_cast<long>(t));
    s.d = Rational(static_cast<long>(d));
    Rational denom(1);
    for (int n : spec.factors) denom *= hom_trace(n, s.t, s.d);
    if (denom == 0) continue;
    used_dets.insert(d);
    s.v = rep_trace(spec, s.t, s.d);
    out.push_back(std::move(s));
  }
  return out;
}

DensePolynomial<Rational> recover_product_poly(const std::vector<FamilySample>& samples) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& s : samples)
    if (s.d == 1) pts.emplace_back(s.t, s.v);

  const std::size_t k = pts.size();
  if (k < 2) fail(Errc::insufficient_samples, "need at least 2 det-1 samples");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (pts[i].first == pts[j].first)
        fail(Errc::duplicate_abscissa, "det-1 samples share a trace value");

  // Grow the window until the interpolant predicts every held-out sample;
  // at least one held-out sample is always required.
  DensePolynomial<Rational> poly;
  bool stable = false;
  for (std::size_t w = 1; w + 1 <= k; ++w) {
    std::vector<std::pair<Rational, Rational>> window(pts.begin(),
                                                      pts.begin() + static_cast<long>(w));
    DensePolynomial<Rational> candidate = interpolate(window);
    bool ok = true;
    for (std::size_t j = w; j < k; ++j)
      if (candidate(pts[j].first) != pts[j].second) {
        ok = false;
        break;
      }
    if (ok) {
      poly = std::move(candidate);
      stable = true;
      break;
    }
  }
  if (!stable)
    fail(Errc::insufficient_samples, "no stable degree with " + std::to_string(k) +
                                         " det-1 samples; supply more");

  if (poly.is_zero() || !poly.is_monic())
    fail(Errc::not_monic, "recovered polynomial is not monic: " + to_string(poly));
  const Rational dim = poly(Rational(2));
  if (!is_integer(dim) || dim <= 0)
    fail(Errc::non_integer_dimension,
         "value at t = 2 is not a positive integer: " + format_rational(dim));
  return poly;
}

std::vector<int> factor_into_trace_basis(const DensePolynomial<Rational>& p) {
  if (p.is_zero() || !p.is_monic())
    fail(Errc::not_monic, "trace-basis factorization expects a monic polynomial");

  // Greedy largest-first: the largest a with T_a | P must belong to the
  // multiset (each root 2cos(pi u/(a+1)) of T_a is a root of some factor
  // T_{n_i}, forcing (a+1) | (n_i+1) and hence n_i >= a).
  std::vector<int> factors;
  DensePolynomial<Rational> rest = p;
  for (int a = rest.degree(); a >= 1; --a) {
    while (rest.degree() >= a) {
      auto [q, r] = poly_divrem(rest, trace_poly(a));
      if (!r.is_zero()) break;
      factors.push_back(a);
      rest = std::move(q);
    }
  }
  if (!(rest == DensePolynomial<Rational>::constant(Rational(1))))
    fail(Errc::not_a_product,
         "not a product of trace polynomials; residual " + to_string(rest));
  std::sort(factors.begin(), factors.end());
  return factors;
}

int recover_det_weight(const std::vector<FamilySample>& samples,
                       const std::vector<int>& factors) {
  std::vector<const FamilySample*> twists;
  for (const auto& s : samples)
    if (is_integer(s.d) && s.d >= 2) twists.push_back(&s);
  if (twists.size() < 2)
    fail(Errc::insufficient_samples, "need at least 2 twist samples with integer d >= 2");

  int weight = -1;
  for (const FamilySample* s : twists) {
    Rational denom(1);
    for (int n : factors) denom *= hom_trace(n, s->t, s->d);
    if (denom == 0)
      fail(Errc::zero_divisor, "symmetric-power product vanishes at t = " +
                                   format_rational(s->t) + ", d = " + format_rational(s->d) +
                                   "; supply more twist samples");
    const Rational f = s->v / denom;
    // f must be an exact non-negative power of d.
    int w = -1;
    if (f == 1) {
      w = 0;
    } else if (is_integer(f) && f > 1) {
      Rational acc(1);
      for (int cand = 1; acc < f; ++cand) {
        acc *= s->d;
        if (acc == f) {
          w = cand;
          break;
        }
      }
    }
    if (w < 0)
      fail(Errc::non_power_twist, "f(" + format_rational(s->d) +
                                      ") = " + format_rational(f) +
                                      " is not a power of the determinant");
    if (weight < 0) weight = w;
    else if (weight != w)
      fail(Errc::inconsistent_twist, "twist samples disagree: d^" + std::to_string(weight) +
                                         " vs d^" + std::to_string(w));
  }
  return weight;
}

DecodeResult decode(const std::vector<FamilySample>& samples) {
  DecodeResult out;
  out.product_poly = recover_product_poly(samples);
  out.factors = factor_into_trace_basis(out.product_poly);
  out.det_weight = recover_det_weight(samples, out.factors);

  for (const auto& s : samples) {
    if (twisted_product(out.factors, s.t, s.d, out.det_weight) != s.v)
      fail(Errc::cross_validation_failed,
           "sample (t = " + format_rational(s.t) + ", d = " + format_rational(s.d) +
               ") disagrees with the recovered parameters");
  }

  out.diagnostics.degree_sum = out.product_poly.degree();
  Integer dim = 1;
  for (int n : out.factors) dim *= n + 1;
  out.diagnostics.dim_product = dim;
  out.diagnostics.samples_used = static_cast<long long>(samples.size());
  return out;
}

}  // namespace symtrace
