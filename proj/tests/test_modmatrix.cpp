#include <doctest.h>

#include "symtrace/modmatrix.hpp"

using namespace symtrace;

namespace {

ModMatrix m2(std::uint64_t modulus, std::uint64_t a, std::uint64_t b, std::uint64_t c,
             std::uint64_t d) {
  ModMatrix out;
  out.modulus = modulus;
  out.entries = ModEntries::Zero(2, 2);
  out.entries(0, 0) = a % modulus;
  out.entries(0, 1) = b % modulus;
  out.entries(1, 0) = c % modulus;
  out.entries(1, 1) = d % modulus;
  return out;
}

}  // namespace

TEST_CASE("elementary matrices") {
  CHECK(mod_is_identity(elem_diag(2, 1, 1, 5)));
  CHECK(mod_is_identity(elem_transvection(2, 1, 2, 0, 5)));

  ModMatrix a = elem_diag(3, 2, 4, 7);
  CHECK(a.entries(1, 1) == 4);
  CHECK(a.entries(0, 0) == 1);

  CHECK_THROWS_WITH_AS(elem_diag(2, 1, 5, 5), doctest::Contains("NonUnit"), Error);
  CHECK_THROWS_WITH_AS(elem_transvection(2, 1, 1, 1, 5), doctest::Contains("IndexClash"), Error);
}

TEST_CASE("transvections form one-parameter subgroups") {
  for (std::uint64_t beta = 0; beta < 7; ++beta)
    for (std::uint64_t gamma = 0; gamma < 7; ++gamma) {
      ModMatrix prod = mod_mul(elem_transvection(2, 1, 2, beta, 7),
                               elem_transvection(2, 1, 2, gamma, 7));
      CHECK(mod_equal(prod, elem_transvection(2, 1, 2, beta + gamma, 7)));
    }
}

TEST_CASE("modular inverse and determinant") {
  ModMatrix g = m2(7, 2, 3, 1, 4);
  CHECK(mod_det(g) == 5);
  ModMatrix inv = mod_inverse(g);
  CHECK(mod_is_identity(mod_mul(g, inv)));
  CHECK(mod_is_identity(mod_mul(inv, g)));

  ModMatrix singular = m2(7, 1, 2, 2, 4);
  CHECK_THROWS_WITH_AS(mod_inverse(singular), doctest::Contains("NonUnit"), Error);

  // 3x3 adjugate route (det = 26 = 1 mod 5)
  ModMatrix h;
  h.modulus = 5;
  h.entries = ModEntries::Zero(3, 3);
  h.entries << 1, 2, 0, 0, 1, 3, 4, 0, 2;
  CHECK(mod_is_identity(mod_mul(h, mod_inverse(h))));
  CHECK(mod_is_identity(mod_mul(mod_inverse(h), h)));
}

TEST_CASE("conjugating a transvection by a diagonal unit scales its parameter") {
  // worked 2x2 example mod 5: A_1(2) B_12(1) A_1(2)^{-1} = B_12(2)
  auto c = conj_transvection(2, 1, 2, 2, 1, 5);
  CHECK(mod_equal(c.result, elem_transvection(2, 1, 2, 2, 5)));
  CHECK(c.scale == 2);

  // alpha = 1 leaves everything fixed
  CHECK(conj_transvection(2, 1, 2, 1, 3, 7).scale == 1);

  // both orientations produce the computed scale alpha (conjugation by A_i
  // scales row i); the scale is read off the matrix, never off a formula
  auto lower = conj_transvection(2, 2, 1, 3, 1, 7);
  CHECK(lower.scale == 3);
  CHECK(mod_equal(lower.result, elem_transvection(2, 2, 1, 3, 7)));

  auto big = conj_transvection(3, 3, 1, 2, 4, 5);
  CHECK(big.scale == 2);
  CHECK(mod_equal(big.result, elem_transvection(3, 3, 1, 8, 5)));
}

TEST_CASE("conjugation identity against direct multiplication for all units") {
  const std::uint64_t p = 7;
  for (std::uint64_t alpha = 1; alpha < p; ++alpha)
    for (std::uint64_t beta = 0; beta < p; ++beta) {
      ModMatrix a = elem_diag(2, 1, alpha, p);
      ModMatrix direct = mod_mul(mod_mul(a, elem_transvection(2, 1, 2, beta, p)), mod_inverse(a));
      auto conj = conj_transvection(2, 1, 2, alpha, beta, p);
      CHECK(mod_equal(direct, conj.result));
      CHECK(conj.scale == alpha);
    }
}

TEST_CASE("order_profile on worked examples") {
  auto id = order_profile(mod_identity(2, 5));
  CHECK(id.order == 1);
  CHECK(id.semisimple);

  auto unipotent = order_profile(elem_transvection(2, 1, 2, 1, 5));
  CHECK(unipotent.order == 5);
  CHECK_FALSE(unipotent.semisimple);

  auto split = order_profile(m2(5, 2, 0, 0, 3));
  CHECK(split.order == 4);  // lcm of the unit orders of 2 and 3 mod 5
  CHECK(split.semisimple);

  // squarefree characteristic polynomial x^2 + 1 mod 5
  auto rotation = order_profile(m2(5, 0, 4, 1, 0));
  CHECK(rotation.semisimple);
  CHECK(rotation.order % 5 != 0);

  CHECK_THROWS_WITH_AS(order_profile(m2(5, 1, 2, 2, 4)), doctest::Contains("SingularInput"),
                       Error);
}

TEST_CASE("scalar detection and reduction") {
  CHECK(mod_is_scalar(m2(7, 3, 0, 0, 3)));
  CHECK_FALSE(mod_is_scalar(m2(7, 3, 0, 0, 4)));
  ModMatrix g = m2(25, 7, 10, 20, 24);
  ModMatrix red = mod_reduce(g, 5);
  CHECK(red.entries(0, 0) == 2);
  CHECK(red.entries(0, 1) == 0);
  CHECK(red.entries(1, 1) == 4);
}
