#pragma once

#include <stdexcept>
#include <string>

namespace symtrace {

enum class Errc {
  duplicate_abscissa,
  division_by_zero_polynomial,
  wrong_shape,
  singular_input,
  insufficient_samples,
  not_monic,
  non_integer_dimension,
  not_a_product,
  zero_divisor,
  inconsistent_twist,
  non_power_twist,
  cross_validation_failed,
  malformed_type,
  not_divisible,
  even_dimension,
  non_unit,
  index_clash,
  cap_exceeded,
  not_normal,
  not_abelian,
  split_failure,
  parse_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_abscissa: return "DuplicateAbscissa";
    case Errc::division_by_zero_polynomial: return "DivisionByZeroPolynomial";
    case Errc::wrong_shape: return "WrongShape";
    case Errc::singular_input: return "SingularInput";
    case Errc::insufficient_samples: return "InsufficientSamples";
    case Errc::not_monic: return "NotMonic";
    case Errc::non_integer_dimension: return "NonIntegerDimension";
    case Errc::not_a_product: return "NotAProduct";
    case Errc::zero_divisor: return "ZeroDivisor";
    case Errc::inconsistent_twist: return "InconsistentTwist";
    case Errc::non_power_twist: return "NonPowerTwist";
    case Errc::cross_validation_failed: return "CrossValidationFailed";
    case Errc::malformed_type: return "MalformedType";
    case Errc::not_divisible: return "NotDivisible";
    case Errc::even_dimension: return "EvenDimension";
    case Errc::non_unit: return "NonUnit";
    case Errc::index_clash: return "IndexClash";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::not_normal: return "NotNormal";
    case Errc::not_abelian: return "NotAbelian";
    case Errc::split_failure: return "SplitFailure";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace symtrace
