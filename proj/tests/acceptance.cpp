// Acceptance suite: every check is exact (zero tolerance); one line per
// criterion. Invoked as: acceptance <path-to-symtrace-binary>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "symtrace/albert.hpp"
#include "symtrace/chardeg.hpp"
#include "symtrace/decode.hpp"
#include "symtrace/dualaction.hpp"
#include "symtrace/groupset.hpp"
#include "symtrace/io.hpp"
#include "symtrace/rng.hpp"
#include "symtrace/symrep.hpp"

using namespace symtrace;

namespace {

std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& command) {
  RunResult res;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ModMatrix> sl_transvection_generators(int n, std::uint64_t modulus) {
  std::vector<ModMatrix> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) gens.push_back(elem_transvection(n, i, j, 1, modulus));
  return gens;
}

void partitions_into(int total, int max_part, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    std::vector<int> sorted(cur);
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    return;
  }
  for (int part = std::min(total, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_into(total - part, part, cur, out);
    cur.pop_back();
  }
}

// criterion 1 — round-trip decoding of 100 seeded random specs in under 60 s
std::string criterion_roundtrip() {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(0x5EED);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + static_cast<int>(rng.below(3));
    std::vector<int> factors;
    for (int i = 0; i < r; ++i) factors.push_back(1 + static_cast<int>(rng.below(6)));
    RepSpec spec(factors, static_cast<int>(rng.below(6)));
    DecodeResult res = decode(simulate_family(spec, spec.degree_sum() + 2, 3, rng.next()));
    if (res.factors != spec.factors || res.det_weight != spec.det_weight)
      return "recovery failed at trial " + std::to_string(trial);
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - start);
  if (elapsed.count() >= 60) return "runtime budget exceeded";
  return "";
}

// criterion 2 — products of trace polynomials pairwise distinct, degree sums <= 8
std::string criterion_uniqueness() {
  std::map<DensePolynomial<Rational>, std::vector<int>> seen;
  for (int total = 0; total <= 8; ++total) {
    std::vector<std::vector<int>> multisets;
    if (total == 0) {
      multisets.push_back({});
    } else {
      std::vector<int> cur;
      partitions_into(total, total, cur, multisets);
    }
    for (const auto& ms : multisets) {
      DensePolynomial<Rational> p = DensePolynomial<Rational>::constant(Rational(1));
      for (int n : ms) p = p * trace_poly(n);
      if (!seen.emplace(p, ms).second) return "collision between distinct multisets";
    }
  }
  return "";
}

// criterion 3 — trace identity for symmetric powers, det-1 and general
std::string criterion_trace_identity() {
  SplitMix64 rng(0x7ACE);
  auto upper = [](long long b) {
    RationalMatrix m = rational_identity(2);
    m(0, 1) = Rational(static_cast<long>(b));
    return m;
  };
  auto lower = [](long long b) {
    RationalMatrix m = rational_identity(2);
    m(1, 0) = Rational(static_cast<long>(b));
    return m;
  };
  for (int trial = 0; trial < 200; ++trial) {
    RationalMatrix g = upper(rng.in_range(-9, 9)) * lower(rng.in_range(-9, 9)) *
                       upper(rng.in_range(-9, 9));
    if (rng.below(2)) g = (-g).eval();
    if (det2(g) != 1) return "det-1 sampler broke";
    for (int n = 0; n <= 10; ++n)
      if (sym_power(g, n).trace() != trace_poly(n)(trace2(g)))
        return "T_n missed a det-1 trace";
  }
  for (int trial = 0; trial < 200; ++trial) {
    RationalMatrix g(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = Rational(static_cast<long>(rng.in_range(-9, 9)));
    for (int n = 0; n <= 10; ++n)
      if (sym_power(g, n).trace() != hom_trace(n, trace2(g), det2(g)))
        return "S_n missed a general trace";
  }
  return "";
}

// criterion 4 — symmetric square with one determinant twist (dimension 3)
std::string criterion_twisted_square() {
  RepSpec spec({2}, 1);
  DecodeResult res = decode(simulate_family(spec, 20, 4, 0x5EED));
  if (res.factors != std::vector<int>{2}) return "factors wrong";
  if (res.det_weight != 1) return "weight wrong";
  if (res.diagnostics.dim_product != 3) return "dim_product wrong";
  return "";
}

// criterion 5 — odd-dimension classification up to 99
std::string criterion_classification() {
  for (long long d = 1; d <= 99; d += 2) {
    OddClassification cls = classify_odd_totally_real(d);
    std::vector<int> got;
    for (const auto& ty : cls.admissible_types) {
      if (ty.kind != EndoKind::totally_real_field) return "non-real admissible type";
      got.push_back(ty.e);
    }
    std::sort(got.begin(), got.end());
    std::vector<int> want;
    for (int e = 1; e <= d; ++e)
      if (d % e == 0) want.push_back(e);
    if (got != want) return "degrees mismatch at d = " + std::to_string(d);

    for (const auto& cand : cls.candidates) {
      const bool quaternion = cand.type.kind == EndoKind::totally_indefinite_quaternion ||
                              cand.type.kind == EndoKind::totally_definite_quaternion;
      if (quaternion) {
        bool named = false;
        for (const auto& v : cand.report.violated_constraints)
          if (v == "2e_divides_dim") named = true;
        if (!named || cand.report.admissible) return "quaternion kind not rejected by 2e | dim";
      }
      if (cand.type.kind == EndoKind::second_kind && cand.report.admissible)
        return "second kind survived";
      if (cand.type.kind == EndoKind::second_kind && cand.report.parity_data &&
          !(cand.report.parity_data->odd && cand.report.parity_data->r_plus_s % 2 == 1))
        return "missing odd multiplicity witness";
    }
  }
  return "";
}

// criterion 6 — transvection closures against the computed order formula
std::string criterion_generation() {
  const std::tuple<int, std::uint64_t, unsigned long> cases[] = {
      {2, 5, 120ul}, {2, 7, 336ul}, {3, 2, 168ul}, {3, 3, 5616ul}};
  for (auto [n, l, expect] : cases) {
    GroupSet g = GroupSet::closure(sl_transvection_generators(n, l), kDefaultGroupCap);
    if (g.size() != expect) return "closure size wrong";
    if (Integer(static_cast<unsigned long>(g.size())) != group_order(n, l, 1))
      return "order formula disagrees";
  }
  return "";
}

// criterion 7 — normal subgroups of SL_2(F_5) and SL_2(F_7)
std::string criterion_normal_subgroups() {
  for (std::uint64_t l : {5ull, 7ull}) {
    GroupSet g = GroupSet::closure(sl_transvection_generators(2, l), kDefaultGroupCap);
    auto normals = normal_subgroups(g);
    if (normals.size() != 3) return "unexpected normal subgroup count";
    if (normals[0].size() != 1 || normals[1].size() != 2 || normals[2].size() != g.size())
      return "unexpected normal subgroup orders";
    for (std::size_t i = 0; i < normals[1].size(); ++i)
      if (!mod_is_scalar(normals[1].at(i))) return "middle subgroup is not the center";
  }
  return "";
}

// criterion 8 — congruence-kernel dichotomy and orders
std::string criterion_kernel_dichotomy() {
  for (std::uint64_t l : {3ull, 5ull})
    for (int m = 1; m <= 3; ++m) {
      auto res = congruence_kernel(2, l, m);
      Integer expect = integer_pow(Integer(static_cast<long>(l)),
                                   static_cast<unsigned long>(3 * (m - 1)));
      if (Integer(static_cast<unsigned long>(res.kernel.size())) != expect)
        return "kernel order wrong";
      if (res.abelian != (m <= 2)) return "abelian dichotomy wrong";
    }
  return "";
}

// criterion 9 — order/semisimplicity dichotomy over GL_2(F_5)
std::string criterion_order_dichotomy() {
  const std::uint64_t l = 5;
  int checked = 0;
  for (std::uint64_t a = 0; a < l; ++a)
    for (std::uint64_t b = 0; b < l; ++b)
      for (std::uint64_t c = 0; c < l; ++c)
        for (std::uint64_t d = 0; d < l; ++d) {
          ModMatrix g;
          g.modulus = l;
          g.entries = ModEntries::Zero(2, 2);
          g.entries(0, 0) = a;
          g.entries(0, 1) = b;
          g.entries(1, 0) = c;
          g.entries(1, 1) = d;
          std::uint64_t det = mod_det(g);
          if (det == 0) continue;
          ++checked;
          OrderProfile profile = order_profile(g);
          if ((profile.order % 5 == 0) == profile.semisimple) return "dichotomy violated";
          if (profile.order % 25 == 0) return "l^2 divides an element order";
        }
  if (checked != 480) return "GL_2(F_5) enumeration wrong";
  return "";
}

// criterion 10 — character degrees via the class-algebra method
std::string criterion_character_degrees() {
  GroupSet g3 = GroupSet::closure(sl_transvection_generators(2, 3), kDefaultGroupCap);
  auto deg3 = character_degrees(g3);
  if (deg3 != std::vector<long long>{1, 1, 1, 2, 2, 2, 3}) return "SL_2(F_3) degrees wrong";
  long long sum3 = 0;
  for (long long d : deg3) sum3 += d * d;
  if (sum3 != 24) return "square sum wrong for SL_2(F_3)";

  long long prev = 0;
  for (std::uint64_t l : {5ull, 7ull, 11ull, 13ull}) {
    GroupSet g = GroupSet::closure(sl_transvection_generators(2, l), kDefaultGroupCap);
    auto degrees = character_degrees(g);
    long long sum = 0;
    for (long long d : degrees) sum += d * d;
    if (sum != static_cast<long long>(g.size()))
      return "square sum missed |G| at l = " + std::to_string(l);
    long long min_nonlinear = 0;
    for (long long d : degrees)
      if (d > 1) {
        min_nonlinear = d;
        break;
      }
    if (min_nonlinear <= prev) return "minimal degrees not strictly increasing";
    prev = min_nonlinear;
  }
  return "";
}

// criterion 11 — conjugation by the congruence kernel fixes its dual
std::string criterion_dual_triviality() {
  GroupSet g = GroupSet::closure(sl_transvection_generators(2, 25), kDefaultGroupCap);
  auto kernel = congruence_kernel(2, 5, 2);
  DualActionResult res = dual_action(g, kernel.kernel);
  if (!res.s_acts_trivially) return "kernel moved one of its own characters";
  std::size_t chars = 0;
  for (const auto& orbit : res.orbits) chars += orbit.size();
  if (chars != 125) return "dual group size wrong";
  return "";
}

// criterion 12 — CLI determinism: identical flags and seed, identical bytes
std::string criterion_cli_determinism() {
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "symtrace_acceptance";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  const std::string f1 = (tmp / "a.jsonl").string(), f2 = (tmp / "b.jsonl").string();

  auto s1 = run(g_cli + " simulate --factors 3,1 --weight 2 --det1 12 --twists 3 --seed 42 --out " + f1);
  auto s2 = run(g_cli + " simulate --factors 3,1 --weight 2 --det1 12 --twists 3 --seed 42 --out " + f2);
  if (s1.exit_code != 0 || s2.exit_code != 0) return "simulate failed";
  if (slurp(f1) != slurp(f2)) return "sample files differ";

  const std::string commands[] = {
      " decode --in " + f1,
      " classify --dim 9",
      " grouplab kernel --n 2 --l 5 --m 2",
      " grouplab degrees --n 2 --l 5 --m 1",
      " grouplab closure --n 3 --l 3 --m 1",
      " grouplab dichotomy --l 5",
      " selftest",
  };
  for (const auto& cmd : commands) {
    auto a = run(g_cli + cmd);
    auto b = run(g_cli + cmd);
    if (a.exit_code != 0 || b.exit_code != 0) return "command failed:" + cmd;
    if (a.out != b.out) return "non-deterministic output:" + cmd;
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <symtrace-binary>\n";
    return 2;
  }
  g_cli = argv[1];

  const std::pair<std::string, std::function<std::string()>> criteria[] = {
      {"1 round-trip decoding of 100 seeded random specs", criterion_roundtrip},
      {"2 trace-product uniqueness for degree sums up to 8", criterion_uniqueness},
      {"3 symmetric-power trace identity, det-1 and twisted", criterion_trace_identity},
      {"4 twisted symmetric square decodes to dimension 3", criterion_twisted_square},
      {"5 odd-dimension endomorphism classification to 99", criterion_classification},
      {"6 transvection closures match the order formula", criterion_generation},
      {"7 normal subgroups are 1, center, whole group", criterion_normal_subgroups},
      {"8 congruence-kernel dichotomy and orders", criterion_kernel_dichotomy},
      {"9 order/semisimplicity dichotomy over GL_2(F_5)", criterion_order_dichotomy},
      {"10 character degrees and their growth in l", criterion_character_degrees},
      {"11 kernel fixes every character of itself", criterion_dual_triviality},
      {"12 CLI determinism under fixed flags and seed", criterion_cli_determinism},
  };

  int failures = 0;
  for (const auto& [name, body] : criteria) {
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::cout << "PASS criterion " << name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL criterion " << name << " — " << detail << "\n";
    }
  }
  std::cout << (failures ? "acceptance: FAILURES\n" : "acceptance: all criteria passed\n");
  return failures ? 1 : 0;
}
