#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "symtrace/errors.hpp"

namespace symtrace {

using ModEntries = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Square matrix over Z/modulus with entries kept reduced. Moduli in play are
// small prime powers, so plain uint64 products never overflow.
struct ModMatrix {
  std::uint64_t modulus = 0;
  ModEntries entries;

  int n() const { return static_cast<int>(entries.rows()); }
};

bool is_prime(std::uint64_t x);
std::uint64_t mod_inverse_scalar(std::uint64_t a, std::uint64_t modulus);  // NonUnit if none

ModMatrix mod_identity(int n, std::uint64_t modulus);
ModMatrix mod_reduce(const ModMatrix& g, std::uint64_t new_modulus);
ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b);
ModMatrix mod_pow(const ModMatrix& g, unsigned long long e);
std::uint64_t mod_det(const ModMatrix& g);  // n <= 3
ModMatrix mod_inverse(const ModMatrix& g);  // adjugate route, n <= 3
std::uint64_t mod_trace(const ModMatrix& g);

bool mod_equal(const ModMatrix& a, const ModMatrix& b);
bool mod_is_identity(const ModMatrix& g);
bool mod_is_scalar(const ModMatrix& g);
bool mod_less(const ModMatrix& a, const ModMatrix& b);  // lexicographic, row-major
std::string mod_key(const ModMatrix& g);                // hashing/order key

// Elementary matrices, 1-based indices: the identity with entry (i,i)
// replaced by a unit alpha, and the identity with beta added at (i,j).
ModMatrix elem_diag(int n, int i, std::uint64_t alpha, std::uint64_t modulus);
ModMatrix elem_transvection(int n, int i, int j, std::uint64_t beta, std::uint64_t modulus);

struct ConjTransvectionResult {
  ModMatrix result;       // A_i(alpha) B_ij(beta) A_i(alpha)^{-1}
  std::uint64_t scale;    // s with result = B_ij(s * beta); computed, not assumed
};

ConjTransvectionResult conj_transvection(int n, int i, int j, std::uint64_t alpha,
                                         std::uint64_t beta, std::uint64_t modulus);

struct OrderProfile {
  long long order = 0;
  bool semisimple = false;  // minimal polynomial squarefree over the prime field
};

// Prime modulus only: multiplicative order plus the semisimplicity flag.
OrderProfile order_profile(const ModMatrix& g);

}  // namespace symtrace
