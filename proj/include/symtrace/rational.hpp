#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cctype>
#include <string>

#include "symtrace/errors.hpp"

namespace symtrace {

// Exact scalars. mpq_class keeps every value canonical (reduced, positive
// denominator), which the decoding pipeline's zero-remainder tests rely on.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
  return out;  // canonical because base is
}

inline Integer integer_pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

// "p/q" or "p", canonical form (mpq_class::get_str yields exactly this).
inline std::string format_rational(const Rational& x) { return x.get_str(); }

// Strict inverse of format_rational: optional sign, digits, optional /digits.
// Anything else — including floats — is a parse error (non-rational inputs
// are rejected at the ingestion boundary).
inline Rational parse_rational(const std::string& s) {
  std::size_t i = 0;
  auto digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i > start;
  };
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (!digits()) fail(Errc::parse_error, "not an exact rational: '" + s + "'");
  if (i < s.size() && s[i] == '/') {
    ++i;
    if (!digits()) fail(Errc::parse_error, "not an exact rational: '" + s + "'");
  }
  if (i != s.size()) fail(Errc::parse_error, "not an exact rational: '" + s + "'");
  Rational out(s);
  if (out.get_den() == 0) fail(Errc::parse_error, "zero denominator: '" + s + "'");
  out.canonicalize();
  return out;
}

}  // namespace symtrace

namespace Eigen {

// Custom-scalar adapter so exact rationals can be used as Eigen entries.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen
