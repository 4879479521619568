#include <doctest.h>

#include <set>

#include "symtrace/chardeg.hpp"

using namespace symtrace;

namespace {

std::vector<ModMatrix> sl_transvection_generators(int n, std::uint64_t modulus) {
  std::vector<ModMatrix> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) gens.push_back(elem_transvection(n, i, j, 1, modulus));
  return gens;
}

long long min_nonlinear(const std::vector<long long>& degrees) {
  for (long long d : degrees)
    if (d > 1) return d;
  return 0;
}

}  // namespace

TEST_CASE("trivial group has the single trivial character") {
  GroupSet g = GroupSet::closure({mod_identity(2, 5)}, 10);
  CHECK(character_degrees(g) == std::vector<long long>{1});
}

TEST_CASE("SL_2(F_3): three linear characters and the forced multiset") {
  GroupSet g = GroupSet::closure(sl_transvection_generators(2, 3), kDefaultGroupCap);
  auto degrees = character_degrees(g);
  CHECK(degrees == std::vector<long long>{1, 1, 1, 2, 2, 2, 3});

  // independent arithmetic cross-check: 7 classes, |G/[G,G]| = 3 linear
  // characters, and the only multiset of four degrees >= 2 with squares
  // summing to 24 - 3 = 21 is {2,2,2,3}
  int solutions = 0;
  for (int a = 2; a * a <= 21; ++a)
    for (int b = a; a * a + b * b <= 21; ++b)
      for (int c = b; a * a + b * b + c * c <= 21; ++c)
        for (int d = c; a * a + b * b + c * c + d * d <= 21; ++d)
          if (a * a + b * b + c * c + d * d == 21) ++solutions;
  CHECK(solutions == 1);
}

TEST_CASE("abelian groups have all-linear degrees") {
  auto kernel = congruence_kernel(2, 5, 2);
  auto degrees = character_degrees(kernel.kernel);
  CHECK(degrees.size() == 125);
  for (long long d : degrees) CHECK(d == 1);
}

TEST_CASE("character degrees always satisfy the square-sum identity") {
  for (auto [n, l] : std::vector<std::pair<int, std::uint64_t>>{{2, 3}, {2, 5}, {2, 7}, {3, 2}}) {
    GroupSet g = GroupSet::closure(sl_transvection_generators(n, l), kDefaultGroupCap);
    auto degrees = character_degrees(g);
    long long sum = 0;
    for (long long d : degrees) sum += d * d;
    CHECK(sum == static_cast<long long>(g.size()));
    CHECK(degrees.size() == conjugacy_classes(g).classes.size());
  }
}

TEST_CASE("simple group of order 168 has the classical degree list") {
  GroupSet g = GroupSet::closure(sl_transvection_generators(3, 2), kDefaultGroupCap);
  CHECK(character_degrees(g) == std::vector<long long>{1, 3, 3, 6, 7, 8});
}

TEST_CASE("minimal non-linear degree grows with the prime") {
  long long prev = 0;
  for (std::uint64_t l : {5ull, 7ull, 11ull, 13ull}) {
    GroupSet g = GroupSet::closure(sl_transvection_generators(2, l), kDefaultGroupCap);
    long long cur = min_nonlinear(character_degrees(g));
    CHECK(cur == static_cast<long long>((l - 1) / 2));  // classical value for these primes
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("level-9 characters beyond the level-3 inflation are larger") {
  GroupSet g9 = GroupSet::closure(sl_transvection_generators(2, 9), kDefaultGroupCap);
  GroupSet g3 = GroupSet::closure(sl_transvection_generators(2, 3), kDefaultGroupCap);
  auto deg9 = character_degrees(g9);
  auto deg3 = character_degrees(g3);

  std::multiset<long long> fresh(deg9.begin(), deg9.end());
  for (long long d : deg3) {
    auto it = fresh.find(d);
    REQUIRE(it != fresh.end());  // inflation embeds the quotient's degrees
    fresh.erase(it);
  }
  REQUIRE_FALSE(fresh.empty());
  CHECK(*fresh.begin() > min_nonlinear(deg3));
}
