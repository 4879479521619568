#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "symtrace/decode.hpp"
#include "symtrace/rng.hpp"

using namespace symtrace;

namespace {

DensePolynomial<Rational> poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return DensePolynomial<Rational>(c);
}

std::vector<std::vector<int>> partitions_of(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      std::vector<int> sorted(cur);
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  rec(total, total);
  return out;
}

DensePolynomial<Rational> trace_product(const std::vector<int>& factors) {
  DensePolynomial<Rational> acc = DensePolynomial<Rational>::constant(Rational(1));
  for (int n : factors) acc = acc * trace_poly(n);
  return acc;
}

}  // namespace

TEST_CASE("simulate_family contract") {
  RepSpec spec({2}, 1);
  auto samples = simulate_family(spec, 20, 4, 0x5EED);
  REQUIRE(samples.size() == 24);

  std::set<Rational> det1_traces;
  int det1 = 0, twists = 0;
  for (const auto& s : samples) {
    if (s.d == 1) {
      ++det1;
      CHECK(det1_traces.insert(s.t).second);  // pairwise distinct traces
      CHECK(s.v == s.t * s.t - 1);            // v = T_2(t) on det-1 samples
    } else {
      ++twists;
      CHECK(is_integer(s.d));
      CHECK(s.d >= 2);
      CHECK(s.v == rep_trace(spec, s.t, s.d));
    }
  }
  CHECK(det1 == 20);
  CHECK(twists == 4);

  // determinism: same seed, same samples
  auto again = simulate_family(spec, 20, 4, 0x5EED);
  REQUIRE(again.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(again[i].t == samples[i].t);
    CHECK(again[i].d == samples[i].d);
    CHECK(again[i].v == samples[i].v);
  }
}

TEST_CASE("standard representation simulates to v = t") {
  auto samples = simulate_family(RepSpec({1}, 0), 10, 2, 7);
  for (const auto& s : samples)
    if (s.d == 1) CHECK(s.v == s.t);
}

TEST_CASE("recover_product_poly on clean families") {
  auto t2 = recover_product_poly(simulate_family(RepSpec({2}, 0), 10, 2, 11));
  CHECK(t2 == poly({-1, 0, 1}));

  auto t1sq = recover_product_poly(simulate_family(RepSpec({1, 1}, 0), 10, 2, 12));
  CHECK(t1sq == poly({0, 0, 1}));
}

TEST_CASE("recover_product_poly accepts constant data") {
  std::vector<FamilySample> samples;
  for (long t = 0; t < 4; ++t) samples.push_back({Rational(t), Rational(1), Rational(1)});
  CHECK(recover_product_poly(samples) == poly({1}));
}

TEST_CASE("recover_product_poly error paths") {
  // not enough samples for any held-out check
  std::vector<FamilySample> one = {{Rational(0), Rational(1), Rational(1)}};
  CHECK_THROWS_WITH_AS(recover_product_poly(one), doctest::Contains("InsufficientSamples"),
                       Error);

  // no stable window on data from a degree-2 polynomial with only 3 samples
  RepSpec spec({2}, 0);
  auto samples = simulate_family(spec, 3, 2, 5);
  CHECK_THROWS_WITH_AS(recover_product_poly(samples), doctest::Contains("InsufficientSamples"),
                       Error);

  // non-monic data
  std::vector<FamilySample> scaled;
  for (long t = 0; t < 8; ++t)
    scaled.push_back({Rational(t), Rational(1), Rational(2 * t * t)});
  CHECK_THROWS_WITH_AS(recover_product_poly(scaled), doctest::Contains("NotMonic"), Error);

  // monic but impossible dimension at t = 2 (P(2) = 0)
  std::vector<FamilySample> zero_dim;
  for (long t = 0; t < 8; ++t)
    zero_dim.push_back({Rational(t), Rational(1), Rational(t - 2)});
  CHECK_THROWS_WITH_AS(recover_product_poly(zero_dim),
                       doctest::Contains("NonIntegerDimension"), Error);

  // repeated trace values
  std::vector<FamilySample> dup = {{Rational(1), Rational(1), Rational(1)},
                                   {Rational(1), Rational(1), Rational(1)},
                                   {Rational(2), Rational(1), Rational(2)}};
  CHECK_THROWS_WITH_AS(recover_product_poly(dup), doctest::Contains("DuplicateAbscissa"), Error);
}

TEST_CASE("factor_into_trace_basis worked examples") {
  CHECK(factor_into_trace_basis(poly({0, -1, 0, 1})) == std::vector<int>{1, 2});  // t^3 - t
  CHECK(factor_into_trace_basis(poly({1})) == std::vector<int>{});
  // adversarial divisibility: T_1 | T_3, greedy must still return {3}
  CHECK(factor_into_trace_basis(poly({0, -2, 0, 1})) == std::vector<int>{3});
}

TEST_CASE("factor_into_trace_basis rejects non-products") {
  CHECK_THROWS_WITH_AS(factor_into_trace_basis(poly({1, 0, 1})),  // t^2 + 1
                       doctest::Contains("NotAProduct"), Error);
  CHECK_THROWS_WITH_AS(factor_into_trace_basis(poly({0, 2, 1})),  // not monic in the basis
                       doctest::Contains("NotAProduct"), Error);
  CHECK_THROWS_WITH_AS(factor_into_trace_basis(poly({2})), doctest::Contains("NotMonic"), Error);
  CHECK_THROWS_WITH_AS(factor_into_trace_basis(DensePolynomial<Rational>::zero()),
                       doctest::Contains("NotMonic"), Error);
}

TEST_CASE("greedy factorization agrees with exhaustive search up to degree 8") {
  for (int total = 0; total <= 8; ++total) {
    for (const auto& ms : partitions_of(total)) {
      const auto product = trace_product(ms);
      if (!ms.empty()) CHECK(factor_into_trace_basis(product) == ms);
      int matches = 0;
      for (const auto& cand : partitions_of(total))
        if (trace_product(cand) == product) ++matches;
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("trace products are pairwise distinct for degree sums up to 8") {
  std::map<DensePolynomial<Rational>, std::vector<int>> seen;
  int count = 0;
  for (int total = 0; total <= 8; ++total)
    for (const auto& ms : partitions_of(total)) {
      ++count;
      CHECK(seen.emplace(trace_product(ms), ms).second);
    }
  CHECK(count == 67);  // 1 + p(1) + ... + p(8)
}

TEST_CASE("recover_det_weight worked examples") {
  // v = d^2 * t on a weight-2 standard factor: f(2) = 12/3 = 4 -> w = 2
  std::vector<FamilySample> samples = {{Rational(3), Rational(2), Rational(12)},
                                       {Rational(5), Rational(3), Rational(45)}};
  CHECK(recover_det_weight(samples, {1}) == 2);

  // weight 0: f equals 1 on every twist sample
  auto zero_w = simulate_family(RepSpec({2, 2}, 0), 4, 3, 99);
  CHECK(recover_det_weight(zero_w, {2, 2}) == 0);
}

TEST_CASE("recover_det_weight error paths") {
  std::vector<FamilySample> one = {{Rational(3), Rational(2), Rational(12)}};
  CHECK_THROWS_WITH_AS(recover_det_weight(one, {1}), doctest::Contains("InsufficientSamples"),
                       Error);

  // S_2(t, d) = t^2 - d vanishes at (2, 4): zero divisor
  std::vector<FamilySample> zdiv = {{Rational(2), Rational(4), Rational(0)},
                                    {Rational(3), Rational(2), Rational(7)}};
  CHECK_THROWS_WITH_AS(recover_det_weight(zdiv, {2}), doctest::Contains("ZeroDivisor"), Error);

  // f not a determinant power
  std::vector<FamilySample> nonpow = {{Rational(3), Rational(2), Rational(9)},
                                      {Rational(5), Rational(3), Rational(5)}};
  CHECK_THROWS_WITH_AS(recover_det_weight(nonpow, {1}), doctest::Contains("NonPowerTwist"),
                       Error);

  // corrupt one v by an extra determinant factor: weights disagree
  auto samples = simulate_family(RepSpec({1}, 2), 4, 3, 123);
  for (auto& s : samples)
    if (s.d >= 2) {
      s.v *= s.d;
      break;
    }
  CHECK_THROWS_WITH_AS(recover_det_weight(samples, {1}), doctest::Contains("InconsistentTwist"),
                       Error);
}

TEST_CASE("decode round trip on the twisted symmetric square") {
  RepSpec spec({2}, 1);
  DecodeResult res = decode(simulate_family(spec, 20, 4, 0x5EED));
  CHECK(res.factors == std::vector<int>{2});
  CHECK(res.det_weight == 1);
  CHECK(res.diagnostics.dim_product == 3);
  CHECK(res.diagnostics.degree_sum == 2);
  CHECK(res.diagnostics.samples_used == 24);
  CHECK(res.product_poly == poly({-1, 0, 1}));
}

TEST_CASE("decode recovers the standard representation") {
  RepSpec spec({1}, 0);
  DecodeResult res = decode(simulate_family(spec, 5, 2, 3));
  CHECK(res.factors == std::vector<int>{1});
  CHECK(res.det_weight == 0);
}

TEST_CASE("decode handles a pure determinant character (empty tensor)") {
  // v = d^2 with no symmetric-power factor at all
  std::vector<FamilySample> samples;
  for (long t = 0; t < 4; ++t) samples.push_back({Rational(t), Rational(1), Rational(1)});
  samples.push_back({Rational(1), Rational(3), Rational(9)});
  samples.push_back({Rational(7), Rational(5), Rational(25)});
  DecodeResult res = decode(samples);
  CHECK(res.factors.empty());
  CHECK(res.det_weight == 2);
  CHECK(res.diagnostics.dim_product == 1);
  CHECK(res.diagnostics.degree_sum == 0);
}

TEST_CASE("decode: 100 random specs round-trip exactly") {
  SplitMix64 rng(0xACCE);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + static_cast<int>(rng.below(3));
    std::vector<int> factors;
    for (int i = 0; i < r; ++i) factors.push_back(1 + static_cast<int>(rng.below(6)));
    RepSpec spec(factors, static_cast<int>(rng.below(6)));
    DecodeResult res = decode(simulate_family(spec, spec.degree_sum() + 2, 3, rng.next()));
    CHECK(res.factors == spec.factors);
    CHECK(res.det_weight == spec.det_weight);
    CHECK(res.product_poly(Rational(2)) == Rational(res.diagnostics.dim_product));
  }
}

TEST_CASE("decode cross-validates every sample") {
  RepSpec spec({2}, 1);
  auto samples = simulate_family(spec, 12, 3, 17);
  samples.back().v += 1;  // corrupt a twist sample's value
  CHECK_THROWS_AS(decode(samples), Error);

  auto samples2 = simulate_family(spec, 12, 3, 18);
  // corrupt a det-1 sample that the stable window will not interpolate through
  samples2[10].v += 1;
  CHECK_THROWS_AS(decode(samples2), Error);

  // a sample with fractional determinant is invisible to the recovery steps
  // but must still be cross-validated
  auto samples3 = simulate_family(spec, 12, 3, 19);
  Rational half(1, 2);
  samples3.push_back({Rational(1), half, Rational(999)});
  CHECK_THROWS_WITH_AS(decode(samples3), doctest::Contains("CrossValidationFailed"), Error);
  samples3.back().v = rep_trace(spec, Rational(1), half);
  DecodeResult res = decode(samples3);
  CHECK(res.factors == std::vector<int>{2});
  CHECK(res.det_weight == 1);
}

TEST_CASE("place independence: different seeds, identical parameters") {
  SplitMix64 rng(0xB0B);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + static_cast<int>(rng.below(3));
    std::vector<int> factors;
    for (int i = 0; i < r; ++i) factors.push_back(1 + static_cast<int>(rng.below(5)));
    RepSpec spec(factors, static_cast<int>(rng.below(5)));
    DecodeResult a = decode(simulate_family(spec, spec.degree_sum() + 3, 2, rng.next()));
    DecodeResult b = decode(simulate_family(spec, spec.degree_sum() + 3, 2, rng.next()));
    CHECK(a.factors == b.factors);
    CHECK(a.det_weight == b.det_weight);
  }
}

TEST_CASE("sample-count boundary: degree sum + 2 suffices, + 1 does not") {
  SplitMix64 rng(0xC0);
  for (int trial = 0; trial < 10; ++trial) {
    const int r = 1 + static_cast<int>(rng.below(2));
    std::vector<int> factors;
    for (int i = 0; i < r; ++i) factors.push_back(1 + static_cast<int>(rng.below(4)));
    RepSpec spec(factors, static_cast<int>(rng.below(3)));
    const std::uint64_t seed = rng.next();

    DecodeResult ok = decode(simulate_family(spec, spec.degree_sum() + 2, 2, seed));
    CHECK(ok.factors == spec.factors);

    auto short_samples = simulate_family(spec, spec.degree_sum() + 1, 2, seed);
    CHECK_THROWS_WITH_AS(decode(short_samples), doctest::Contains("InsufficientSamples"), Error);
  }
}
