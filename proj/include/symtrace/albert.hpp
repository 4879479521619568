#pragma once

#include <optional>
#include <string>
#include <vector>

namespace symtrace {

// The four-type taxonomy of endomorphism algebras of simple polarized complex
// Abelian varieties, with the divisibility data ([E:K] = delta^2, [K:Q] = e,
// [K_0:Q] = e0) that the admissibility table constrains.
enum class EndoKind {
  totally_real_field,
  totally_indefinite_quaternion,
  totally_definite_quaternion,
  second_kind,
};

const char* endo_kind_name(EndoKind k);

struct EndoType {
  EndoKind kind;
  int delta = 1;
  int e = 1;
  int e0 = 1;

  static EndoType totally_real(int e);
  static EndoType indefinite_quaternion(int e);
  static EndoType definite_quaternion(int e);
  static EndoType second_kind(int delta, int e0);
};

// Throws MalformedType when the fields violate the kind's own invariants.
void validate(const EndoType& ty);

struct ParityData {
  long long r_plus_s = 0;
  bool odd = false;
};

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<std::string> violated_constraints;
  std::optional<ParityData> parity_data;
  std::vector<std::string> notes;
};

// Checks the global divisibility delta^2 e | 2 dim plus the kind-specific
// restriction; every violated constraint is listed by name.
AdmissibilityReport admissible(long long dim_a, const EndoType& ty);

struct SecondKindParity {
  long long r_plus_s = 0;
  bool excluded = false;
  std::vector<std::string> reasoning;  // audit trail for the exclusion
};

// Multiplicity-sum computation for second-kind candidates in odd dimension:
// r + s = dim / (delta * e0); odd r + s forces unequal conjugate multiplicities,
// whose trace witness is non-real, so the type cannot occur over a totally
// real base.
SecondKindParity second_kind_parity(long long dim_a, int delta, int e0);

struct ClassifiedCandidate {
  EndoType type;
  AdmissibilityReport report;
};

struct OddClassification {
  std::vector<EndoType> admissible_types;        // exactly the totally real fields of degree | d
  std::vector<ClassifiedCandidate> candidates;   // full survey, rejections included
};

OddClassification classify_odd_totally_real(long long dim_a);

}  // namespace symtrace
