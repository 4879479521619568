#include "symtrace/chardeg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace symtrace {

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 acc = 1;
  base %= p;
  while (exp) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return acc;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a % p, p - 2, p); }

// Dense matrix over F_p, column-major use: columns of `basis` matrices are
// the spanning vectors.
struct FpMat {
  int rows = 0, cols = 0;
  std::vector<u64> a;

  FpMat() = default;
  FpMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  u64& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  u64 at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

FpMat fp_mul(const FpMat& x, const FpMat& y, u64 p) {
  FpMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const u64 v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j)
        out.at(i, j) = (out.at(i, j) + v * y.at(k, j)) % p;
    }
  return out;
}

// Row-reduce in place; returns pivot columns.
std::vector<int> fp_rref(FpMat& m, u64 p) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col)) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
    const u64 inv = inv_mod(m.at(row, col), p);
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * inv % p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || !m.at(r, col)) continue;
      const u64 f = m.at(r, col);
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = (m.at(r, c) + (p - f) * m.at(row, c)) % p;
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis (columns) of the nullspace of m.
FpMat fp_nullspace(const FpMat& m, u64 p) {
  FpMat r = m;
  std::vector<int> pivots = fp_rref(r, p);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;

  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  FpMat out(m.cols, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    out.at(fc, static_cast<int>(k)) = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
      const u64 v = r.at(static_cast<int>(pi), fc);
      if (v) out.at(pivots[pi], static_cast<int>(k)) = (p - v) % p;
    }
  }
  return out;
}

// X with basis * X = y, where basis has full column rank and y's columns lie
// in the span. Throws SplitFailure on inconsistency.
FpMat fp_solve_in_basis(const FpMat& basis, const FpMat& y, u64 p) {
  FpMat aug(basis.rows, basis.cols + y.cols);
  for (int r = 0; r < basis.rows; ++r) {
    for (int c = 0; c < basis.cols; ++c) aug.at(r, c) = basis.at(r, c);
    for (int c = 0; c < y.cols; ++c) aug.at(r, basis.cols + c) = y.at(r, c);
  }
  std::vector<int> pivots = fp_rref(aug, p);
  for (int c : pivots)
    if (c >= basis.cols) fail(Errc::split_failure, "solve left the span");
  if (static_cast<int>(pivots.size()) != basis.cols)
    fail(Errc::split_failure, "basis lost rank");

  FpMat x(basis.cols, y.cols);
  for (int r = 0; r < basis.cols; ++r)
    for (int c = 0; c < y.cols; ++c) x.at(r, c) = aug.at(r, basis.cols + c);
  return x;
}

struct ClassData {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<int> reps;      // min element index per class
  std::vector<int> inv_class; // class of the inverses
};

// M_i[j][m] = #{ x in C_i : x^{-1} z_m in C_j }, the class multiplication
// coefficients a_{ijm}.
FpMat class_matrix(const GroupSet& g, const ClassData& cd, int i, u64 p) {
  const int k = static_cast<int>(cd.classes.size());
  FpMat m(k, k);
  for (int mi = 0; mi < k; ++mi) {
    const int z = cd.reps[static_cast<std::size_t>(mi)];
    for (int x : cd.classes[static_cast<std::size_t>(i)]) {
      const int j = cd.class_of[static_cast<std::size_t>(g.mul(g.inverse_index(x), z))];
      m.at(j, mi) = (m.at(j, mi) + 1) % p;
    }
  }
  return m;
}

std::vector<long long> degrees_with_prime(const GroupSet& g, const ClassData& cd, u64 p,
                                          long long linear_count) {
  const int k = static_cast<int>(cd.classes.size());
  const long long order = static_cast<long long>(g.size());

  // simultaneous eigenspace refinement
  std::vector<FpMat> spaces;
  {
    FpMat full(k, k);
    for (int i = 0; i < k; ++i) full.at(i, i) = 1;
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < k; ++i) {
    bool all_split = true;
    for (const auto& w : spaces)
      if (w.cols > 1) all_split = false;
    if (all_split) break;

    const FpMat mi = class_matrix(g, cd, i, p);
    std::vector<FpMat> next;
    for (auto& w : spaces) {
      if (w.cols <= 1) {
        next.push_back(std::move(w));
        continue;
      }
      const FpMat x = fp_solve_in_basis(w, fp_mul(mi, w, p), p);
      int found = 0;
      for (u64 lambda = 0; lambda < p; ++lambda) {
        FpMat shifted = x;
        for (int r = 0; r < x.rows; ++r)
          shifted.at(r, r) = (shifted.at(r, r) + p - lambda) % p;
        FpMat null = fp_nullspace(shifted, p);
        if (null.cols == 0) continue;
        next.push_back(fp_mul(w, null, p));
        found += null.cols;
        if (found == w.cols) break;
      }
      if (found != w.cols) fail(Errc::split_failure, "class matrix did not split over F_p");
    }
    spaces = std::move(next);
  }
  for (const auto& w : spaces)
    if (w.cols != 1) fail(Errc::split_failure, "common eigenspaces not one-dimensional");
  if (static_cast<int>(spaces.size()) != k)
    fail(Errc::split_failure, "wrong number of common eigenspaces");

  // central character values, normalized at the identity class
  std::vector<std::vector<u64>> omegas;
  for (const auto& w : spaces) {
    if (!w.at(0, 0)) fail(Errc::split_failure, "eigenvector vanishes on the identity class");
    const u64 scale = inv_mod(w.at(0, 0), p);
    std::vector<u64> omega(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) omega[static_cast<std::size_t>(j)] = w.at(j, 0) * scale % p;
    omegas.push_back(std::move(omega));
  }

  // degrees from d^2 = |G| / sum_j omega_j omega_{j*} / |C_j|
  std::vector<long long> divisors;
  for (long long d = 1; d * d <= order; ++d)
    if (order % d == 0) divisors.push_back(d);

  std::vector<long long> degrees;
  for (const auto& omega : omegas) {
    u64 s = 0;
    for (int j = 0; j < k; ++j) {
      const u64 t = omega[static_cast<std::size_t>(j)] *
                    omega[static_cast<std::size_t>(cd.inv_class[static_cast<std::size_t>(j)])] % p;
      s = (s + t * inv_mod(static_cast<u64>(cd.classes[static_cast<std::size_t>(j)].size()), p)) % p;
    }
    if (!s) fail(Errc::split_failure, "degenerate orthogonality sum");
    const u64 d2 = static_cast<u64>(order % static_cast<long long>(p)) * inv_mod(s, p) % p;
    long long found = -1;
    for (long long d : divisors)
      if (static_cast<u64>((d * d) % static_cast<long long>(p)) == d2) {
        if (found >= 0) fail(Errc::split_failure, "ambiguous degree lift");
        found = d;
      }
    if (found < 0) fail(Errc::split_failure, "no divisor matches the degree relation");
    degrees.push_back(found);
  }

  long long sum_sq = 0, ones = 0;
  for (long long d : degrees) {
    sum_sq += d * d;
    if (d == 1) ++ones;
  }
  if (sum_sq != order) fail(Errc::split_failure, "sum of squared degrees misses |G|");
  if (ones != linear_count) fail(Errc::split_failure, "linear character count mismatch");

  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace

std::vector<long long> character_degrees(const GroupSet& g, const CharacterDegreeOptions& opts) {
  if (g.size() == 0) throw std::invalid_argument("character_degrees: empty group");
  if (g.size() == 1) return {1};

  ClassData cd;
  {
    ConjugacyClasses cc = conjugacy_classes(g);
    cd.classes = std::move(cc.classes);
    cd.class_of = std::move(cc.class_of);
  }
  for (const auto& cls : cd.classes) cd.reps.push_back(cls.front());
  for (std::size_t i = 0; i < cd.classes.size(); ++i)
    cd.inv_class.push_back(
        cd.class_of[static_cast<std::size_t>(g.inverse_index(cd.reps[i]))]);

  const unsigned long long exponent = g.exponent();
  const long long order = static_cast<long long>(g.size());
  const long long linear_count =
      order / static_cast<long long>(commutator_subgroup_indices(g).size());

  // smallest prime p = 1 (mod exponent) with p^2 > 4|G|
  u64 p = 1;
  auto advance_prime = [&]() {
    do {
      p += exponent;
    } while (!(is_prime(p) && static_cast<long long>(p) * static_cast<long long>(p) > 4 * order));
  };
  advance_prime();

  for (int attempt = 0; attempt < opts.max_prime_retries; ++attempt, advance_prime()) {
    try {
      return degrees_with_prime(g, cd, p, linear_count);
    } catch (const Error& e) {
      if (e.code() != Errc::split_failure) throw;
    }
  }
  fail(Errc::split_failure, "no auxiliary prime split after " +
                                std::to_string(opts.max_prime_retries) + " attempts");
}

}  // namespace symtrace
