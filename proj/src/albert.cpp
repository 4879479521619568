#include "symtrace/albert.hpp"

#include <string>

#include "symtrace/errors.hpp"

namespace symtrace {

const char* endo_kind_name(EndoKind k) {
  switch (k) {
    case EndoKind::totally_real_field: return "totally_real_field";
    case EndoKind::totally_indefinite_quaternion: return "totally_indefinite_quaternion";
    case EndoKind::totally_definite_quaternion: return "totally_definite_quaternion";
    case EndoKind::second_kind: return "second_kind";
  }
  return "unknown";
}

EndoType EndoType::totally_real(int e) { return {EndoKind::totally_real_field, 1, e, e}; }
EndoType EndoType::indefinite_quaternion(int e) {
  return {EndoKind::totally_indefinite_quaternion, 2, e, e};
}
EndoType EndoType::definite_quaternion(int e) {
  return {EndoKind::totally_definite_quaternion, 2, e, e};
}
EndoType EndoType::second_kind(int delta, int e0) {
  return {EndoKind::second_kind, delta, 2 * e0, e0};
}

void validate(const EndoType& ty) {
  if (ty.delta < 1 || ty.e < 1 || ty.e0 < 1)
    fail(Errc::malformed_type, "delta, e, e0 must be positive");
  switch (ty.kind) {
    case EndoKind::totally_real_field:
      if (ty.delta != 1) fail(Errc::malformed_type, "totally real field requires delta = 1");
      if (ty.e0 != ty.e) fail(Errc::malformed_type, "first-kind types require e0 = e");
      break;
    case EndoKind::totally_indefinite_quaternion:
    case EndoKind::totally_definite_quaternion:
      if (ty.delta != 2) fail(Errc::malformed_type, "quaternion algebras require delta = 2");
      if (ty.e0 != ty.e) fail(Errc::malformed_type, "first-kind types require e0 = e");
      break;
    case EndoKind::second_kind:
      if (ty.e != 2 * ty.e0) fail(Errc::malformed_type, "second kind requires e = 2 e0");
      break;
  }
}

AdmissibilityReport admissible(long long dim_a, const EndoType& ty) {
  if (dim_a < 1) throw std::invalid_argument("admissible: dimension must be positive");
  validate(ty);

  AdmissibilityReport report;
  const long long d2e = static_cast<long long>(ty.delta) * ty.delta * ty.e;
  if ((2 * dim_a) % d2e != 0) report.violated_constraints.push_back("delta^2*e_divides_2dim");

  switch (ty.kind) {
    case EndoKind::totally_real_field:
      if (dim_a % ty.e != 0) report.violated_constraints.push_back("e_divides_dim");
      break;
    case EndoKind::totally_indefinite_quaternion:
    case EndoKind::totally_definite_quaternion:
      if (dim_a % (2LL * ty.e) != 0) report.violated_constraints.push_back("2e_divides_dim");
      break;
    case EndoKind::second_kind:
      if (dim_a % (static_cast<long long>(ty.e0) * ty.delta * ty.delta) != 0)
        report.violated_constraints.push_back("e0*delta^2_divides_dim");
      break;
  }

  if (static_cast<long long>(ty.e) == 2 * dim_a)
    report.notes.push_back("e = 2 dim: the center is a CM field");

  report.admissible = report.violated_constraints.empty();
  return report;
}

SecondKindParity second_kind_parity(long long dim_a, int delta, int e0) {
  if (dim_a < 1) throw std::invalid_argument("second_kind_parity: dimension must be positive");
  if (dim_a % 2 == 0) fail(Errc::even_dimension, "parity argument needs an odd dimension");
  if (delta < 1 || e0 < 1)
    throw std::invalid_argument("second_kind_parity: delta and e0 must be positive");
  const long long de0 = static_cast<long long>(delta) * e0;
  if (dim_a % de0 != 0)
    fail(Errc::not_divisible, "delta*e0 = " + std::to_string(de0) + " does not divide dim = " +
                                  std::to_string(dim_a));

  SecondKindParity out;
  out.r_plus_s = dim_a / de0;
  out.excluded = (out.r_plus_s % 2 != 0);
  out.reasoning.push_back("r + s = dim/(delta*e0) = " + std::to_string(dim_a) + "/" +
                          std::to_string(de0) + " = " + std::to_string(out.r_plus_s));
  if (out.excluded) {
    out.reasoning.push_back("r + s is odd, so r != s for every conjugate pair");
    out.reasoning.push_back(
        "unequal conjugate multiplicities admit an endomorphism whose moduli trace is "
        "non-real, while the field of moduli embeds in the (totally real) base field");
  } else {
    out.reasoning.push_back("r + s is even; the parity argument gives no exclusion");
  }
  return out;
}

OddClassification classify_odd_totally_real(long long dim_a) {
  if (dim_a < 1) throw std::invalid_argument("classify: dimension must be positive");
  if (dim_a % 2 == 0) fail(Errc::even_dimension, "classification covers odd dimensions only");

  OddClassification out;
  auto survey = [&](const EndoType& ty) -> ClassifiedCandidate& {
    out.candidates.push_back({ty, admissible(dim_a, ty)});
    return out.candidates.back();
  };

  for (int e = 1; e <= dim_a; ++e) {
    auto& real = survey(EndoType::totally_real(e));
    if (real.report.admissible) out.admissible_types.push_back(real.type);
    survey(EndoType::indefinite_quaternion(e));
    survey(EndoType::definite_quaternion(e));
  }

  // Second-kind candidates with parameters bounded by the dimension; anything
  // with delta*e0 > dim already fails e0 delta^2 | dim.
  for (int delta = 1; delta <= dim_a; ++delta) {
    for (int e0 = 1; static_cast<long long>(delta) * e0 <= dim_a; ++e0) {
      auto& cand = survey(EndoType::second_kind(delta, e0));
      if (!cand.report.admissible) continue;
      SecondKindParity parity = second_kind_parity(dim_a, delta, e0);
      cand.report.parity_data = ParityData{parity.r_plus_s, parity.r_plus_s % 2 != 0};
      for (const auto& line : parity.reasoning) cand.report.notes.push_back(line);
      if (parity.excluded) {
        cand.report.admissible = false;
        cand.report.violated_constraints.push_back("odd_multiplicity_sum_over_totally_real_base");
      } else {
        // Unreachable for odd dimensions: r + s divides the odd dim.
        out.admissible_types.push_back(cand.type);
      }
    }
  }
  return out;
}

}  // namespace symtrace
