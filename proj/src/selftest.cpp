#include "symtrace/selftest.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "symtrace/albert.hpp"
#include "symtrace/chardeg.hpp"
#include "symtrace/decode.hpp"
#include "symtrace/dualaction.hpp"
#include "symtrace/groupset.hpp"
#include "symtrace/rng.hpp"
#include "symtrace/symrep.hpp"

namespace symtrace {

namespace {

RationalMatrix random_matrix2(SplitMix64& rng, long long bound) {
  RationalMatrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Rational(static_cast<long>(rng.in_range(-bound, bound)));
  return g;
}

// Random element of SL_2(Z) as a short product of transvections and -I.
RationalMatrix random_det1_matrix(SplitMix64& rng, long long bound) {
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
  RationalMatrix g = upper(rng.in_range(-bound, bound)) * lower(rng.in_range(-bound, bound));
  g = (g * upper(rng.in_range(-bound, bound))).eval();
  if (rng.below(2)) g = (-g).eval();
  return g;
}

RepSpec random_spec(SplitMix64& rng, int max_r, int max_n, int max_w) {
  const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_r))) + 1;
  std::vector<int> factors;
  for (int i = 0; i < r; ++i)
    factors.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n))) + 1);
  return RepSpec(factors, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_w + 1))));
}

// All multisets of positive integers with the given sum (partitions).
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

std::vector<std::vector<int>> all_multisets_with_sum_up_to(int max_sum) {
  std::vector<std::vector<int>> out;
  out.push_back({});  // empty product
  for (int total = 1; total <= max_sum; ++total) {
    std::vector<int> cur;
    partitions_into(total, total, cur, out);
  }
  return out;
}

DensePolynomial<Rational> trace_product(const std::vector<int>& factors) {
  DensePolynomial<Rational> acc = DensePolynomial<Rational>::constant(Rational(1));
  for (int n : factors) acc = acc * trace_poly(n);
  return acc;
}

std::vector<ModMatrix> sl_transvection_generators(int n, std::uint64_t modulus) {
  std::vector<ModMatrix> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) gens.push_back(elem_transvection(n, i, j, 1, modulus));
  return gens;
}

struct Runner {
  SelftestReport report;

  void check(const std::string& name, const std::function<std::string()>& body) {
    SelftestCheck c;
    c.name = name;
    try {
      c.detail = body();  // empty string means pass
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  }
};

}  // namespace

SelftestReport run_selftest(std::uint64_t seed, const std::string& inject_fault) {
  Runner r;
  const bool fault_trace_poly = (inject_fault == "trace-poly-recurrence");

  r.check("trace-poly-boundary-values", [&]() -> std::string {
    for (int n = 0; n <= 50; ++n) {
      Rational at2 = trace_poly(n)(Rational(2));
      if (fault_trace_poly) at2 += 1;  // deliberate corruption for harness sanity
      if (at2 != n + 1) return "T_n(2) != n+1 at n = " + std::to_string(n);
      Rational expect = (n % 2 == 0) ? Rational(n + 1) : Rational(-(n + 1));
      if (trace_poly(n)(Rational(-2)) != expect)
        return "T_n(-2) mismatch at n = " + std::to_string(n);
    }
    return "";
  });

  r.check("trace-poly-monic-integer", [&]() -> std::string {
    for (int n = 0; n <= 50; ++n) {
      auto p = trace_poly(n);
      if (p.degree() != n || !p.is_monic()) return "T_n shape wrong at n = " + std::to_string(n);
      for (int k = 0; k <= n; ++k)
        if (!is_integer(p.coeff(k))) return "non-integer coefficient in T_" + std::to_string(n);
    }
    return "";
  });

  r.check("interpolate-left-inverse-of-eval", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x11);
    for (int trial = 0; trial < 40; ++trial) {
      const int deg = static_cast<int>(rng.below(9));
      std::vector<Rational> coeffs;
      for (int k = 0; k <= deg; ++k)
        coeffs.emplace_back(static_cast<long>(rng.in_range(-9, 9)));
      DensePolynomial<Rational> p(coeffs);
      const int points = deg + 1 + static_cast<int>(rng.below(3));
      std::vector<std::pair<Rational, Rational>> data;
      std::set<long long> used;
      while (static_cast<int>(data.size()) < points) {
        long long t = rng.in_range(-60, 60);
        if (!used.insert(t).second) continue;
        Rational tt(static_cast<long>(t));
        data.emplace_back(tt, p(tt));
      }
      if (interpolate(data) != p) return "interpolation failed to recover a random polynomial";
    }
    return "";
  });

  r.check("divrem-roundtrip", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x22);
    for (int trial = 0; trial < 60; ++trial) {
      auto random_poly = [&](int max_deg) {
        std::vector<Rational> c;
        const int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg + 1)));
        for (int k = 0; k <= deg; ++k) c.emplace_back(static_cast<long>(rng.in_range(-9, 9)));
        return DensePolynomial<Rational>(c);
      };
      DensePolynomial<Rational> num = random_poly(8), den = random_poly(5);
      if (den.is_zero()) den = DensePolynomial<Rational>::variable();
      auto [q, rem] = poly_divrem(num, den);
      if (!(den * q + rem == num)) return "num != den*q + r";
      if (!rem.is_zero() && rem.degree() >= den.degree()) return "remainder too large";
    }
    return "";
  });

  r.check("hom-trace-matches-sym-power", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x33);
    for (int trial = 0; trial < 200; ++trial) {
      RationalMatrix g = random_matrix2(rng, 9);
      const int n = static_cast<int>(rng.below(9));
      if (sym_power(g, n).trace() != hom_trace(n, trace2(g), det2(g)))
        return "trace(Sym^n g) != S_n(tr g, det g)";
    }
    return "";
  });

  r.check("trace-poly-matches-sym-power-det1", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x3A);
    for (int trial = 0; trial < 100; ++trial) {
      RationalMatrix g = random_det1_matrix(rng, 9);
      if (det2(g) != 1) return "det-1 sampler broke";
      const int n = static_cast<int>(rng.below(11));
      if (sym_power(g, n).trace() != trace_poly(n)(trace2(g)))
        return "trace(Sym^n g) != T_n(tr g) on a det-1 matrix";
    }
    return "";
  });

  r.check("sym-power-det-identity", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x44);
    for (int trial = 0; trial < 40; ++trial) {
      RationalMatrix g = random_matrix2(rng, 6);
      const int n = static_cast<int>(rng.below(7));
      if (exact_det(sym_power(g, n)) !=
          rational_pow(det2(g), static_cast<unsigned long>(n * (n + 1) / 2)))
        return "det(Sym^n g) != det(g)^{n(n+1)/2}";
    }
    return "";
  });

  r.check("build-rep-respects-inverse", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x55);
    for (int trial = 0; trial < 25; ++trial) {
      RationalMatrix g = random_matrix2(rng, 5);
      if (det2(g) == 0) continue;
      RepSpec spec = random_spec(rng, 2, 3, 3);
      RationalMatrix prod = build_rep(spec, g) * build_rep(spec, inverse2(g));
      if (!exact_equal(prod, rational_identity(static_cast<int>(prod.rows()))))
        return "rep(g) rep(g^{ -1}) != identity";
    }
    return "";
  });

  r.check("rep-trace-matches-build-rep", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x66);
    for (int trial = 0; trial < 200; ++trial) {
      RepSpec spec = random_spec(rng, 3, 5, 4);
      RationalMatrix g = random_matrix2(rng, 4);
      if (det2(g) == 0) continue;
      if (build_rep(spec, g).trace() != rep_trace(spec, trace2(g), det2(g)))
        return "matrix trace disagrees with the polynomial route";
    }
    return "";
  });

  r.check("decode-roundtrip-100-random-specs", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x77);
    for (int trial = 0; trial < 100; ++trial) {
      RepSpec spec = random_spec(rng, 3, 6, 5);
      auto samples = simulate_family(spec, spec.degree_sum() + 2, 3, rng.next());
      DecodeResult res = decode(samples);
      if (res.factors != spec.factors || res.det_weight != spec.det_weight)
        return "round trip failed at trial " + std::to_string(trial);
      if (res.product_poly(Rational(2)) != Rational(res.diagnostics.dim_product))
        return "dimension diagnostics disagree with the product polynomial";
    }
    return "";
  });

  r.check("trace-product-uniqueness-sum8", [&]() -> std::string {
    auto multisets = all_multisets_with_sum_up_to(8);
    std::map<DensePolynomial<Rational>, std::vector<int>> seen;
    for (const auto& ms : multisets) {
      auto [it, fresh] = seen.emplace(trace_product(ms), ms);
      if (!fresh) return "two multisets share a product polynomial";
    }
    return "";
  });

  r.check("greedy-factorization-vs-bruteforce", [&]() -> std::string {
    auto multisets = all_multisets_with_sum_up_to(8);
    for (const auto& ms : multisets) {
      const auto product = trace_product(ms);
      if (product.degree() == 0) continue;  // empty multiset
      if (factor_into_trace_basis(product) != ms) return "greedy factorization wrong";
      // exhaustive search over candidate multisets of the same degree
      std::vector<std::vector<int>> candidates;
      std::vector<int> cur;
      partitions_into(product.degree(), product.degree(), cur, candidates);
      int matches = 0;
      for (const auto& cand : candidates)
        if (trace_product(cand) == product) ++matches;
      if (matches != 1) return "brute-force factorization not unique";
    }
    return "";
  });

  r.check("decode-place-independence", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x88);
    for (int trial = 0; trial < 20; ++trial) {
      RepSpec spec = random_spec(rng, 3, 5, 4);
      DecodeResult a = decode(simulate_family(spec, spec.degree_sum() + 4, 3, rng.next()));
      DecodeResult b = decode(simulate_family(spec, spec.degree_sum() + 4, 3, rng.next()));
      if (a.factors != b.factors || a.det_weight != b.det_weight)
        return "independently sampled families decoded differently";
    }
    return "";
  });

  r.check("decode-sample-count-robustness", [&]() -> std::string {
    SplitMix64 rng(seed ^ 0x99);
    for (int trial = 0; trial < 20; ++trial) {
      RepSpec spec = random_spec(rng, 3, 5, 4);
      auto enough = simulate_family(spec, spec.degree_sum() + 2, 2, rng.next());
      DecodeResult res = decode(enough);
      if (res.factors != spec.factors) return "decode failed at the guaranteed sample count";
    }
    return "";
  });

  r.check("classify-odd-dimensions-up-to-99", [&]() -> std::string {
    for (long long d = 1; d <= 99; d += 2) {
      OddClassification cls = classify_odd_totally_real(d);
      std::vector<int> got;
      for (const auto& ty : cls.admissible_types) {
        if (ty.kind != EndoKind::totally_real_field) return "non-real type classified admissible";
        got.push_back(ty.e);
      }
      std::vector<int> want;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) want.push_back(e);
      std::sort(got.begin(), got.end());
      if (got != want) return "admissible degrees != divisors at d = " + std::to_string(d);
      for (const auto& cand : cls.candidates) {
        if (cand.report.admissible !=
            cand.report.violated_constraints.empty())
          return "report admissibility does not match its violation list";
        if (cand.type.kind == EndoKind::second_kind && cand.report.parity_data &&
            !cand.report.parity_data->odd)
          return "second-kind survivor has even multiplicity sum";
      }
    }
    return "";
  });

  r.check("second-kind-parity-always-odd", [&]() -> std::string {
    for (long long d = 1; d <= 99; d += 2)
      for (int delta = 1; delta <= d; ++delta)
        for (int e0 = 1; static_cast<long long>(delta) * e0 <= d; ++e0) {
          if (d % (static_cast<long long>(delta) * e0) != 0) continue;
          if (second_kind_parity(d, delta, e0).r_plus_s % 2 == 0)
            return "even multiplicity sum for an odd dimension";
        }
    return "";
  });

  r.check("transvection-closures-match-order-formula", [&]() -> std::string {
    const std::pair<int, std::uint64_t> cases[] = {{2, 5}, {2, 7}, {3, 2}, {3, 3}};
    for (auto [n, l] : cases) {
      GroupSet g = GroupSet::closure(sl_transvection_generators(n, l), kDefaultGroupCap);
      if (Integer(static_cast<unsigned long>(g.size())) != group_order(n, l, 1))
        return "closure size mismatch for SL_" + std::to_string(n) + " mod " + std::to_string(l);
    }
    return "";
  });

  r.check("conj-transvection-computed-scale", [&]() -> std::string {
    // both orientations give scale alpha when conjugating by A_i
    auto c1 = conj_transvection(2, 1, 2, 2, 1, 7);
    auto c2 = conj_transvection(2, 2, 1, 2, 1, 7);
    auto c3 = conj_transvection(3, 3, 1, 3, 2, 5);
    if (c1.scale != 2 || c2.scale != 2 || c3.scale != 3) return "unexpected conjugation scale";
    if (conj_transvection(2, 1, 2, 1, 4, 7).scale != 1) return "alpha = 1 must give scale 1";
    return "";
  });

  r.check("normal-subgroups-desk-instances", [&]() -> std::string {
    for (std::uint64_t l : {5ull, 7ull}) {
      GroupSet g = GroupSet::closure(sl_transvection_generators(2, l), kDefaultGroupCap);
      auto normals = normal_subgroups(g);
      if (normals.size() != 3) return "SL_2 mod " + std::to_string(l) + ": expected 3 normals";
      if (normals[0].size() != 1 || normals[1].size() != 2 || normals[2].size() != g.size())
        return "SL_2 mod " + std::to_string(l) + ": wrong normal subgroup orders";
      for (std::size_t i = 0; i < normals[1].size(); ++i)
        if (!mod_is_scalar(normals[1].at(i))) return "center is not scalar";
    }
    return "";
  });

  r.check("congruence-kernel-dichotomy", [&]() -> std::string {
    for (std::uint64_t l : {3ull, 5ull})
      for (int m = 1; m <= 3; ++m) {
        auto res = congruence_kernel(2, l, m);
        Integer expect = integer_pow(Integer(static_cast<unsigned long>(l)),
                                     static_cast<unsigned long>(3 * (m - 1)));
        if (Integer(static_cast<unsigned long>(res.kernel.size())) != expect)
          return "kernel order wrong at l = " + std::to_string(l) + ", m = " + std::to_string(m);
        if (res.abelian != (m <= 2))
          return "abelian flag wrong at l = " + std::to_string(l) + ", m = " + std::to_string(m);
      }
    return "";
  });

  r.check("order-semisimplicity-dichotomy-gl2f5", [&]() -> std::string {
    const std::uint64_t l = 5;
    int checked = 0;
    for (std::uint64_t a = 0; a < l; ++a)
      for (std::uint64_t b = 0; b < l; ++b)
        for (std::uint64_t c = 0; c < l; ++c)
          for (std::uint64_t d = 0; d < l; ++d) {
            ModMatrix g;
            g.modulus = l;
            g.entries = ModEntries::Zero(2, 2);
            g.entries << a, b, c, d;
            if (std::gcd(mod_det(g), l) != 1) continue;
            ++checked;
            OrderProfile profile = order_profile(g);
            const bool l_divides = (profile.order % static_cast<long long>(l) == 0);
            if (l_divides == profile.semisimple) return "dichotomy violated";
            if (profile.order % static_cast<long long>(l * l) == 0)
              return "l^2 divides an element order";
          }
    if (checked != 480) return "GL_2(F_5) enumeration miscounted";
    return "";
  });

  r.check("nilpotent-kernel-linear-degrees", [&]() -> std::string {
    auto res = congruence_kernel(2, 5, 2);
    auto degrees = character_degrees(res.kernel);
    if (degrees.size() != 125) return "abelian kernel should have 125 characters";
    for (long long d : degrees)
      if (d != 1) return "non-linear character on an abelian l-group";
    return "";
  });

  r.check("dual-action-trivial-on-kernel-sl2-z25", [&]() -> std::string {
    GroupSet g = GroupSet::closure(sl_transvection_generators(2, 25), kDefaultGroupCap);
    auto kern = congruence_kernel(2, 5, 2);
    DualActionResult res = dual_action(g, kern.kernel);
    if (!res.s_acts_trivially) return "kernel conjugation moved one of its own characters";
    std::size_t total = 0;
    for (const auto& orbit : res.orbits) total += orbit.size();
    if (total != 125) return "dual group size wrong";
    return "";
  });

  r.check("dual-action-nontrivial-orbit-exists", [&]() -> std::string {
    // monomial subgroup of GL_2(F_5) permuting the diagonal torus
    ModMatrix swap_mat;
    swap_mat.modulus = 5;
    swap_mat.entries = ModEntries::Zero(2, 2);
    swap_mat.entries << 0, 1, 1, 0;
    std::vector<ModMatrix> gens = {elem_diag(2, 1, 2, 5), elem_diag(2, 2, 2, 5), swap_mat};
    GroupSet g = GroupSet::closure(gens, kDefaultGroupCap);
    GroupSet s = GroupSet::closure({elem_diag(2, 1, 2, 5), elem_diag(2, 2, 2, 5)}, kDefaultGroupCap);
    DualActionResult res = dual_action(g, s);
    bool moved = false;
    for (const auto& orbit : res.orbits)
      if (orbit.size() > 1) moved = true;
    if (!moved) return "expected a non-singleton character orbit";
    return "";
  });

  r.check("character-degrees-sl2f3", [&]() -> std::string {
    GroupSet g = GroupSet::closure(sl_transvection_generators(2, 3), kDefaultGroupCap);
    auto degrees = character_degrees(g);
    const std::vector<long long> expect = {1, 1, 1, 2, 2, 2, 3};
    if (degrees != expect) return "SL_2(F_3) degrees wrong";
    // independent arithmetic determination: 7 classes, 3 linear characters,
    // remaining squares must sum to 21 with degrees >= 2 — unique solution
    int solutions = 0;
    std::function<void(int, int, int)> enumerate = [&](int remaining, int budget, int min_d) {
      if (remaining == 0) {
        if (budget == 0) ++solutions;
        return;
      }
      for (int d = min_d; d * d <= budget; ++d) enumerate(remaining - 1, budget - d * d, d);
    };
    enumerate(4, 21, 2);
    if (solutions != 1) return "degree multiset is not arithmetically forced";
    return "";
  });

  r.check("minimal-nonlinear-degree-grows-with-l", [&]() -> std::string {
    long long prev = 0;
    for (std::uint64_t l : {5ull, 7ull, 11ull, 13ull}) {
      GroupSet g = GroupSet::closure(sl_transvection_generators(2, l), kDefaultGroupCap);
      auto degrees = character_degrees(g);
      long long sum_sq = 0;
      for (long long d : degrees) sum_sq += d * d;
      if (sum_sq != static_cast<long long>(g.size())) return "sum of squares misses |G|";
      long long min_nonlinear = 0;
      for (long long d : degrees)
        if (d > 1) {
          min_nonlinear = d;
          break;
        }
      if (min_nonlinear <= prev) return "minimal non-linear degree not increasing at l = " +
                                        std::to_string(l);
      prev = min_nonlinear;
    }
    return "";
  });

  r.check("new-level-degrees-exceed-quotient", [&]() -> std::string {
    GroupSet g9 = GroupSet::closure(sl_transvection_generators(2, 9), kDefaultGroupCap);
    GroupSet g3 = GroupSet::closure(sl_transvection_generators(2, 3), kDefaultGroupCap);
    auto deg9 = character_degrees(g9);
    auto deg3 = character_degrees(g3);
    // characters inflated from the level-3 quotient contribute exactly deg3;
    // remove them as a multiset and look at what is new at level 9
    std::multiset<long long> fresh(deg9.begin(), deg9.end());
    for (long long d : deg3) {
      auto it = fresh.find(d);
      if (it == fresh.end()) return "quotient degrees not contained in the lift";
      fresh.erase(it);
    }
    if (fresh.empty()) return "no new characters at level 9";
    long long min_new = *fresh.begin();
    long long min_nonlinear3 = 0;
    for (long long d : deg3)
      if (d > 1) {
        min_nonlinear3 = d;
        break;
      }
    if (min_new <= min_nonlinear3) return "new degrees do not exceed the quotient minimum";
    return "";
  });

  return r.report;
}

}  // namespace symtrace
