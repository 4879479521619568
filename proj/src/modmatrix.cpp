#include "symtrace/modmatrix.hpp"

#include <cstring>
#include <numeric>
#include <vector>

namespace symtrace {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p = 2; p * p <= x; ++p)
    if (x % p == 0) return false;
  return true;
}

std::uint64_t mod_inverse_scalar(std::uint64_t a, std::uint64_t modulus) {
  a %= modulus;
  if (std::gcd(a, modulus) != 1)
    fail(Errc::non_unit, std::to_string(a) + " is not a unit mod " + std::to_string(modulus));
  // extended Euclid
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(modulus), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<long long>(modulus);
  return static_cast<std::uint64_t>(t);
}

ModMatrix mod_identity(int n, std::uint64_t modulus) {
  ModMatrix out;
  out.modulus = modulus;
  out.entries = ModEntries::Zero(n, n);
  for (int i = 0; i < n; ++i) out.entries(i, i) = 1 % modulus;
  return out;
}

ModMatrix mod_reduce(const ModMatrix& g, std::uint64_t new_modulus) {
  ModMatrix out;
  out.modulus = new_modulus;
  out.entries = g.entries.unaryExpr([new_modulus](std::uint64_t x) { return x % new_modulus; });
  return out;
}

ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b) {
  if (a.modulus != b.modulus || a.n() != b.n())
    fail(Errc::wrong_shape, "modular product needs matching shape and modulus");
  ModMatrix out;
  out.modulus = a.modulus;
  const std::uint64_t m = a.modulus;
  out.entries = (a.entries * b.entries).unaryExpr([m](std::uint64_t x) { return x % m; });
  return out;
}

ModMatrix mod_pow(const ModMatrix& g, unsigned long long e) {
  ModMatrix acc = mod_identity(g.n(), g.modulus);
  ModMatrix base = g;
  while (e > 0) {
    if (e & 1ull) acc = mod_mul(acc, base);
    base = mod_mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t mod_trace(const ModMatrix& g) {
  std::uint64_t t = 0;
  for (int i = 0; i < g.n(); ++i) t = (t + g.entries(i, i)) % g.modulus;
  return t;
}

std::uint64_t mod_det(const ModMatrix& g) {
  const std::uint64_t m = g.modulus;
  const auto& a = g.entries;
  auto sub = [m](std::uint64_t x, std::uint64_t y) { return (x + m - y % m) % m; };
  switch (g.n()) {
    case 1:
      return a(0, 0) % m;
    case 2:
      return sub(a(0, 0) * a(1, 1) % m, a(0, 1) * a(1, 0) % m);
    case 3: {
      std::uint64_t pos = (a(0, 0) * a(1, 1) % m) * a(2, 2) % m;
      pos = (pos + (a(0, 1) * a(1, 2) % m) * a(2, 0)) % m;
      pos = (pos + (a(0, 2) * a(1, 0) % m) * a(2, 1)) % m;
      std::uint64_t neg = (a(0, 2) * a(1, 1) % m) * a(2, 0) % m;
      neg = (neg + (a(0, 0) * a(1, 2) % m) * a(2, 1)) % m;
      neg = (neg + (a(0, 1) * a(1, 0) % m) * a(2, 2)) % m;
      return sub(pos, neg);
    }
    default:
      throw std::invalid_argument("mod_det supports n <= 3");
  }
}

ModMatrix mod_inverse(const ModMatrix& g) {
  const std::uint64_t m = g.modulus;
  const std::uint64_t det = mod_det(g);
  const std::uint64_t det_inv = mod_inverse_scalar(det, m);  // NonUnit when singular
  const auto& a = g.entries;
  ModMatrix out;
  out.modulus = m;
  out.entries = ModEntries::Zero(g.n(), g.n());
  auto sub = [m](std::uint64_t x, std::uint64_t y) { return (x % m + m - y % m) % m; };
  if (g.n() == 1) {
    out.entries(0, 0) = det_inv;
    return out;
  }
  if (g.n() == 2) {
    out.entries(0, 0) = a(1, 1) % m * det_inv % m;
    out.entries(0, 1) = sub(0, a(0, 1)) * det_inv % m;
    out.entries(1, 0) = sub(0, a(1, 0)) * det_inv % m;
    out.entries(1, 1) = a(0, 0) % m * det_inv % m;
    return out;
  }
  if (g.n() == 3) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int r1 = (j + 1) % 3, r2 = (j + 2) % 3;  // adjugate: transposed cofactors
        const int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
        std::uint64_t val = sub(a(r1, c1) * a(r2, c2) % m, a(r1, c2) * a(r2, c1) % m);
        out.entries(i, j) = val * det_inv % m;
      }
    }
    return out;
  }
  throw std::invalid_argument("mod_inverse supports n <= 3");
}

bool mod_equal(const ModMatrix& a, const ModMatrix& b) {
  return a.modulus == b.modulus && a.entries.rows() == b.entries.rows() &&
         a.entries == b.entries;
}

bool mod_is_identity(const ModMatrix& g) { return mod_equal(g, mod_identity(g.n(), g.modulus)); }

bool mod_is_scalar(const ModMatrix& g) {
  const std::uint64_t c = g.entries(0, 0);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (g.entries(i, j) != (i == j ? c : 0)) return false;
  return true;
}

bool mod_less(const ModMatrix& a, const ModMatrix& b) {
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (a.entries(i, j) != b.entries(i, j)) return a.entries(i, j) < b.entries(i, j);
  return false;
}

std::string mod_key(const ModMatrix& g) {
  std::string key;
  key.resize(static_cast<std::size_t>(g.n()) * g.n() * sizeof(std::uint64_t));
  std::size_t off = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      std::uint64_t v = g.entries(i, j);
      std::memcpy(key.data() + off, &v, sizeof v);
      off += sizeof v;
    }
  return key;
}

ModMatrix elem_diag(int n, int i, std::uint64_t alpha, std::uint64_t modulus) {
  if (i < 1 || i > n) throw std::invalid_argument("elem_diag: index out of range");
  alpha %= modulus;
  if (std::gcd(alpha, modulus) != 1)
    fail(Errc::non_unit, "diagonal entry must be a unit mod " + std::to_string(modulus));
  ModMatrix out = mod_identity(n, modulus);
  out.entries(i - 1, i - 1) = alpha;
  return out;
}

ModMatrix elem_transvection(int n, int i, int j, std::uint64_t beta, std::uint64_t modulus) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::invalid_argument("elem_transvection: index out of range");
  if (i == j) fail(Errc::index_clash, "transvection needs i != j");
  ModMatrix out = mod_identity(n, modulus);
  out.entries(i - 1, j - 1) = beta % modulus;
  return out;
}

ConjTransvectionResult conj_transvection(int n, int i, int j, std::uint64_t alpha,
                                         std::uint64_t beta, std::uint64_t modulus) {
  const ModMatrix a = elem_diag(n, i, alpha, modulus);
  const ModMatrix a_inv = mod_inverse(a);

  auto conj = [&](std::uint64_t b) {
    return mod_mul(mod_mul(a, elem_transvection(n, i, j, b, modulus)), a_inv);
  };

  ConjTransvectionResult out;
  out.result = conj(beta);
  // The scale of the one-parameter subgroup map is independent of beta, so it
  // is read off the beta = 1 conjugation, where the (i,j) entry is the scale.
  out.scale = conj(1).entries(i - 1, j - 1);
  if (!mod_equal(out.result, elem_transvection(n, i, j, out.scale * (beta % modulus), modulus)))
    throw std::logic_error("conjugated transvection is not a transvection");
  return out;
}

namespace {

// Polynomial helpers over the prime field F_p, coefficients lowest first.
using PolyFp = std::vector<std::uint64_t>;

void poly_trim(PolyFp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyFp poly_derivative(const PolyFp& f, std::uint64_t p) {
  PolyFp out;
  for (std::size_t k = 1; k < f.size(); ++k) out.push_back(f[k] * (k % p) % p);
  poly_trim(out);
  return out;
}

PolyFp poly_rem(PolyFp num, const PolyFp& den, std::uint64_t p) {
  poly_trim(num);
  const std::uint64_t lead_inv = mod_inverse_scalar(den.back(), p);
  while (num.size() >= den.size()) {
    const std::uint64_t q = num.back() * lead_inv % p;
    const std::size_t shift = num.size() - den.size();
    for (std::size_t k = 0; k < den.size(); ++k)
      num[shift + k] = (num[shift + k] + p * p - q * den[k] % p) % p;
    poly_trim(num);  // leading term cancels, so the size strictly drops
  }
  return num;
}

PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    PolyFp r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = mod_inverse_scalar(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

PolyFp poly_divexact(const PolyFp& num, const PolyFp& den, std::uint64_t p) {
  PolyFp rem = num;
  PolyFp quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  const std::uint64_t lead_inv = mod_inverse_scalar(den.back(), p);
  while (rem.size() >= den.size() && !rem.empty()) {
    const std::uint64_t q = rem.back() * lead_inv % p;
    const std::size_t shift = rem.size() - den.size();
    quo[shift] = q;
    for (std::size_t k = 0; k < den.size(); ++k)
      rem[shift + k] = (rem[shift + k] + p * p - q * den[k] % p) % p;
    poly_trim(rem);
  }
  if (!rem.empty()) throw std::logic_error("poly_divexact: division was not exact");
  poly_trim(quo);
  return quo;
}

// Characteristic polynomial for n <= 3 by direct expansion.
PolyFp char_poly(const ModMatrix& g) {
  const std::uint64_t p = g.modulus;
  const auto& a = g.entries;
  auto neg = [p](std::uint64_t x) { return (p - x % p) % p; };
  switch (g.n()) {
    case 1:
      return {neg(a(0, 0)), 1};
    case 2:
      return {mod_det(g), neg(mod_trace(g)), 1};
    case 3: {
      // x^3 - tr x^2 + c2 x - det, c2 the sum of principal 2x2 minors
      std::uint64_t c2 = 0;
      auto minor2 = [&](int r, int s) {
        return (a(r, r) * a(s, s) % p + p - a(r, s) * a(s, r) % p) % p;
      };
      c2 = (minor2(0, 1) + minor2(0, 2) + minor2(1, 2)) % p;
      return {neg(mod_det(g)), c2, neg(mod_trace(g)), 1};
    }
    default:
      throw std::invalid_argument("char_poly supports n <= 3");
  }
}

bool poly_annihilates(const PolyFp& f, const ModMatrix& g) {
  ModMatrix acc;
  acc.modulus = g.modulus;
  acc.entries = ModEntries::Zero(g.n(), g.n());
  for (std::size_t k = f.size(); k-- > 0;) {
    acc = mod_mul(acc, g);
    for (int i = 0; i < g.n(); ++i)
      acc.entries(i, i) = (acc.entries(i, i) + f[k]) % g.modulus;
  }
  return acc.entries.maxCoeff() == 0;
}

}  // namespace

OrderProfile order_profile(const ModMatrix& g) {
  const std::uint64_t p = g.modulus;
  if (!is_prime(p)) throw std::invalid_argument("order_profile needs a prime modulus");
  if (std::gcd(mod_det(g), p) != 1) fail(Errc::singular_input, "matrix is singular mod p");

  OrderProfile out;

  // |GL_n(F_p)| bounds the order.
  unsigned long long cap = 1;
  for (int k = 0; k < g.n(); ++k) {
    unsigned long long pn = 1;
    for (int t = 0; t < g.n(); ++t) pn *= p;
    unsigned long long pk = 1;
    for (int t = 0; t < k; ++t) pk *= p;
    cap *= pn - pk;
  }
  ModMatrix h = g;
  long long order = 1;
  while (!mod_is_identity(h)) {
    h = mod_mul(h, g);
    ++order;
    if (static_cast<unsigned long long>(order) > cap)
      throw std::logic_error("order_profile: order exceeds |GL_n|");
  }
  out.order = order;

  // Semisimple iff the minimal polynomial is squarefree, iff the squarefree
  // part of the characteristic polynomial already annihilates the matrix.
  PolyFp c = char_poly(g);
  PolyFp cd = poly_derivative(c, p);
  PolyFp radical;
  if (cd.empty()) {
    // c = (x - a)^p-style degenerate derivative cannot occur for n < p;
    // fall back to testing c itself.
    radical = c;
  } else {
    radical = poly_divexact(c, poly_gcd(c, cd, p), p);
  }
  out.semisimple = poly_annihilates(radical, g);
  return out;
}

}  // namespace symtrace
