#pragma once

#include <cstdint>
#include <vector>

#include "symtrace/polynomial.hpp"
#include "symtrace/rational.hpp"
#include "symtrace/symrep.hpp"

namespace symtrace {

// One simulated Frobenius datum: trace and determinant of the two-dimensional
// factor, and the trace of the composed representation at the same element.
struct FamilySample {
  Rational t;
  Rational d;
  Rational v;
};

struct DecodeDiagnostics {
  long long degree_sum = 0;
  Integer dim_product = 1;
  long long samples_used = 0;
};

struct DecodeResult {
  std::vector<int> factors;  // sorted ascending; may be empty (trivial data)
  int det_weight = 0;
  DensePolynomial<Rational> product_poly;
  DecodeDiagnostics diagnostics;
};

// Deterministic sample generator for a hidden spec: det1_count samples with
// d = 1 and pairwise-distinct integer traces, then twist_count samples with
// pairwise-distinct integer d >= 2. Every v is exact.
std::vector<FamilySample> simulate_family(const RepSpec& spec, int det1_count, int twist_count,
                                          std::uint64_t seed);

// Unique monic polynomial through the d = 1 samples, found by growing a
// prefix window until the interpolant predicts every held-out sample.
DensePolynomial<Rational> recover_product_poly(const std::vector<FamilySample>& samples);

// Factor P = prod T_{n_i} by greedy largest-first exact division; returns the
// multiset {n_i} sorted ascending.
std::vector<int> factor_into_trace_basis(const DensePolynomial<Rational>& p);

// Recover w with f(d) = d^w from the integer d >= 2 samples, verified across
// all of them.
int recover_det_weight(const std::vector<FamilySample>& samples, const std::vector<int>& factors);

// Full pipeline with exact cross-validation of every sample.
DecodeResult decode(const std::vector<FamilySample>& samples);

}  // namespace symtrace
