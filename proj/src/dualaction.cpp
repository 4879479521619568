#include "symtrace/dualaction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace symtrace {

namespace {

// Smith normal form bookkeeping for the relation lattice of a generating set.
// R is m x r over Z (columns generate the lattice); row operations on R are
// mirrored as column operations on V = U^{-1}, so that the new generators are
// h_j = prod_i g_i^{V(i,j)}.
struct SmithState {
  int m, r;
  std::vector<std::vector<Integer>> R;  // m x r
  std::vector<std::vector<Integer>> V;  // m x m

  SmithState(int m_, int r_) : m(m_), r(r_) {
    R.assign(static_cast<std::size_t>(m), std::vector<Integer>(static_cast<std::size_t>(r), 0));
    V.assign(static_cast<std::size_t>(m), std::vector<Integer>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i) V[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  }

  void swap_rows(int a, int b) {
    std::swap(R[static_cast<std::size_t>(a)], R[static_cast<std::size_t>(b)]);
    for (int i = 0; i < m; ++i)
      std::swap(V[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                V[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]);
  }
  void add_row(int a, int b, const Integer& q) {  // row_a -= q * row_b
    for (int c = 0; c < r; ++c)
      R[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] -=
          q * R[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
    for (int i = 0; i < m; ++i)  // V: col_b += q * col_a
      V[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] +=
          q * V[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  }
  void negate_row(int a) {
    for (int c = 0; c < r; ++c)
      R[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] =
          -R[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
    for (int i = 0; i < m; ++i)
      V[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
          -V[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  }
  void swap_cols(int a, int b) {
    for (int i = 0; i < m; ++i)
      std::swap(R[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                R[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]);
  }
  void add_col(int a, int b, const Integer& q) {  // col_a -= q * col_b
    for (int i = 0; i < m; ++i)
      R[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] -=
          q * R[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
  }
};

void smith_reduce(SmithState& s) {
  const int steps = std::min(s.m, s.r);
  int t = 0;
  int guard = 0;
  while (t < steps) {
    if (++guard > 100000) throw std::logic_error("smith_reduce did not converge");

    // minimal-absolute nonzero entry in the trailing submatrix
    int pi = -1, pj = -1;
    Integer best = 0;
    for (int i = t; i < s.m; ++i)
      for (int j = t; j < s.r; ++j) {
        const Integer& v = s.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (v == 0) continue;
        Integer a = abs(v);
        if (pi < 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    if (pi != t) s.swap_rows(pi, t);
    if (pj != t) s.swap_cols(pj, t);
    if (s.R[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0) s.negate_row(t);

    bool cleared = true;
    const Integer pivot = s.R[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
    for (int i = t + 1; i < s.m; ++i) {
      const Integer& v = s.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      if (v == 0) continue;
      Integer q = v / pivot;
      s.add_row(i, t, q);
      if (s.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) cleared = false;
    }
    for (int j = t + 1; j < s.r; ++j) {
      const Integer& v = s.R[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      if (v == 0) continue;
      Integer q = v / pivot;
      s.add_col(j, t, q);
      if (s.R[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) cleared = false;
    }
    if (!cleared) continue;  // a smaller remainder appeared; re-pivot
    ++t;
  }

  // divisibility chain d_1 | d_2 | ...
  bool chain = false;
  int guard2 = 0;
  while (!chain) {
    if (++guard2 > 10000) throw std::logic_error("smith_reduce chain fix did not converge");
    chain = true;
    for (int i = 0; i + 1 < steps; ++i) {
      const Integer a = s.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      const Integer b = s.R[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i + 1)];
      if (a == 0 || b == 0 || b % a == 0) continue;
      chain = false;
      // fold b into column i and re-reduce from position i
      s.add_col(i, i + 1, Integer(-1));
      int t2 = i;
      int guard3 = 0;
      while (t2 < steps) {
        if (++guard3 > 100000) throw std::logic_error("smith_reduce refix did not converge");
        int pi = -1, pj = -1;
        Integer best = 0;
        for (int x = t2; x < s.m; ++x)
          for (int y = t2; y < s.r; ++y) {
            const Integer& v = s.R[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (v == 0) continue;
            Integer av = abs(v);
            if (pi < 0 || av < best) {
              best = av;
              pi = x;
              pj = y;
            }
          }
        if (pi < 0) break;
        if (pi != t2) s.swap_rows(pi, t2);
        if (pj != t2) s.swap_cols(pj, t2);
        if (s.R[static_cast<std::size_t>(t2)][static_cast<std::size_t>(t2)] < 0) s.negate_row(t2);
        bool cleared = true;
        const Integer pivot = s.R[static_cast<std::size_t>(t2)][static_cast<std::size_t>(t2)];
        for (int x = t2 + 1; x < s.m; ++x) {
          const Integer& v = s.R[static_cast<std::size_t>(x)][static_cast<std::size_t>(t2)];
          if (v == 0) continue;
          s.add_row(x, t2, v / pivot);
          if (s.R[static_cast<std::size_t>(x)][static_cast<std::size_t>(t2)] != 0) cleared = false;
        }
        for (int y = t2 + 1; y < s.r; ++y) {
          const Integer& v = s.R[static_cast<std::size_t>(t2)][static_cast<std::size_t>(y)];
          if (v == 0) continue;
          s.add_col(y, t2, v / pivot);
          if (s.R[static_cast<std::size_t>(t2)][static_cast<std::size_t>(y)] != 0) cleared = false;
        }
        if (!cleared) continue;
        ++t2;
      }
      break;  // rescan the chain from the top
    }
  }
}

}  // namespace

AbelianStructure abelian_structure(const GroupSet& s) {
  AbelianStructure out;
  if (s.size() == 1) {
    out.coords.emplace(mod_key(s.at(0)), std::vector<long long>{});
    return out;
  }

  const std::vector<ModMatrix> gens = greedy_generators(s.elements());
  const int m = static_cast<int>(gens.size());
  std::vector<long long> gen_order;
  for (const auto& h : gens) gen_order.push_back(s.element_order(s.index_of(h)));

  // Enumerate the exponent box and collect the relation lattice from
  // collisions; the box is small at desk scale.
  long double box = 1.0L;
  for (long long o : gen_order) box *= static_cast<long double>(o);
  if (box > 2e5L) fail(Errc::cap_exceeded, "abelian structure enumeration too large");

  std::map<std::string, std::vector<long long>> first_tuple;
  std::set<std::vector<Integer>> relations;
  for (int i = 0; i < m; ++i) {
    std::vector<Integer> rel(static_cast<std::size_t>(m), Integer(0));
    rel[static_cast<std::size_t>(i)] = static_cast<long>(gen_order[static_cast<std::size_t>(i)]);
    relations.insert(std::move(rel));
  }

  std::vector<long long> tuple(static_cast<std::size_t>(m), 0);
  while (true) {
    ModMatrix prod = mod_identity(s.dim(), s.modulus());
    for (int i = 0; i < m; ++i)
      prod = mod_mul(prod, mod_pow(gens[static_cast<std::size_t>(i)],
                                   static_cast<unsigned long long>(tuple[static_cast<std::size_t>(i)])));
    auto [it, fresh] = first_tuple.emplace(mod_key(prod), tuple);
    if (!fresh) {
      std::vector<Integer> rel(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        rel[static_cast<std::size_t>(i)] =
            Integer(static_cast<long>(tuple[static_cast<std::size_t>(i)] -
                                      it->second[static_cast<std::size_t>(i)]));
      relations.insert(std::move(rel));
    }

    int cell = 0;
    while (cell < m) {
      if (++tuple[static_cast<std::size_t>(cell)] < gen_order[static_cast<std::size_t>(cell)]) break;
      tuple[static_cast<std::size_t>(cell)] = 0;
      ++cell;
    }
    if (cell == m) break;
  }
  if (first_tuple.size() != s.size())
    throw std::logic_error("generators do not span the abelian group");

  SmithState snf(m, static_cast<int>(relations.size()));
  {
    int c = 0;
    for (const auto& rel : relations) {
      for (int i = 0; i < m; ++i)
        snf.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
            rel[static_cast<std::size_t>(i)];
      ++c;
    }
  }
  smith_reduce(snf);

  // new generators h_j with orders given by the diagonal
  for (int j = 0; j < m; ++j) {
    const Integer& d = snf.R[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    if (d == 0) throw std::logic_error("abelian relation lattice lost full rank");
    if (d == 1) continue;
    ModMatrix h = mod_identity(s.dim(), s.modulus());
    for (int i = 0; i < m; ++i) {
      Integer e = snf.V[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Integer o(static_cast<long>(gen_order[static_cast<std::size_t>(i)]));
      Integer red = ((e % o) + o) % o;
      h = mod_mul(h, mod_pow(gens[static_cast<std::size_t>(i)], red.get_ui()));
    }
    const int idx = s.index_of(h);
    if (idx < 0) throw std::logic_error("abelian basis element escaped the group");
    out.invariant_factors.push_back(d.get_si());
    out.basis.push_back(idx);
  }

  // coordinates for every element, and the bijectivity check
  const int kk = static_cast<int>(out.invariant_factors.size());
  std::vector<long long> c(static_cast<std::size_t>(kk), 0);
  while (true) {
    ModMatrix prod = mod_identity(s.dim(), s.modulus());
    for (int j = 0; j < kk; ++j)
      prod = mod_mul(prod, mod_pow(s.at(static_cast<std::size_t>(out.basis[static_cast<std::size_t>(j)])),
                                   static_cast<unsigned long long>(c[static_cast<std::size_t>(j)])));
    auto [it, fresh] = out.coords.emplace(mod_key(prod), c);
    (void)it;
    if (!fresh) throw std::logic_error("invariant factor presentation is not a bijection");

    int cell = 0;
    while (cell < kk) {
      if (++c[static_cast<std::size_t>(cell)] < out.invariant_factors[static_cast<std::size_t>(cell)])
        break;
      c[static_cast<std::size_t>(cell)] = 0;
      ++cell;
    }
    if (cell == kk) break;
  }
  if (out.coords.size() != s.size())
    throw std::logic_error("invariant factors do not multiply to the group order");
  for (int j = 0; j < kk; ++j)
    if (s.element_order(out.basis[static_cast<std::size_t>(j)]) !=
        out.invariant_factors[static_cast<std::size_t>(j)])
      throw std::logic_error("basis element order does not match its invariant factor");
  return out;
}

namespace {

DualCharacter make_character(const std::vector<long long>& tuple,
                             const std::vector<long long>& factors) {
  DualCharacter chi;
  chi.tuple = tuple;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    Rational v(static_cast<long>(tuple[j]), static_cast<long>(factors[j]));
    v.canonicalize();
    chi.values.push_back(v);
  }
  return chi;
}

// chi^r from the coordinates of r^{-1} h_j r: the new tuple entry is
// d_j * sum_i c_i u_j[i] / d_i reduced mod d_j (an exact integer).
std::vector<long long> conjugate_tuple(const std::vector<long long>& tuple,
                                       const std::vector<long long>& factors,
                                       const std::vector<std::vector<long long>>& conj_coords) {
  const std::size_t k = factors.size();
  std::vector<long long> out(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    Rational acc(0);
    for (std::size_t i = 0; i < k; ++i) {
      Rational term(static_cast<long>(tuple[i] * conj_coords[j][i]),
                    static_cast<long>(factors[i]));
      term.canonicalize();
      acc += term;
    }
    acc *= static_cast<long>(factors[j]);
    if (!is_integer(acc)) throw std::logic_error("conjugated character left the dual group");
    Integer num = acc.get_num();
    Integer red = num % static_cast<long>(factors[j]);
    if (red < 0) red += static_cast<long>(factors[j]);
    out[j] = red.get_si();
  }
  return out;
}

}  // namespace

DualActionResult dual_action(const GroupSet& g, const GroupSet& s) {
  if (g.modulus() != s.modulus() || g.dim() != s.dim())
    fail(Errc::wrong_shape, "dual_action: mismatched groups");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!g.contains(s.at(i))) fail(Errc::not_normal, "s is not a subgroup of g");

  std::vector<ModMatrix> outer_gens = g.generators();
  if (outer_gens.empty()) outer_gens = greedy_generators(g.elements());
  for (const auto& h : outer_gens) {
    const ModMatrix h_inv = mod_inverse(h);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!s.contains(mod_mul(mod_mul(h_inv, s.at(i)), h)))
        fail(Errc::not_normal, "s is not normal in g");
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!mod_equal(mod_mul(s.at(i), s.at(j)), mod_mul(s.at(j), s.at(i))))
        fail(Errc::not_abelian, "s is not abelian");

  DualActionResult out;
  out.structure = abelian_structure(s);
  const auto& factors = out.structure.invariant_factors;
  const std::size_t k = factors.size();

  // full dual group
  std::vector<DualCharacter> characters;
  {
    std::vector<long long> tuple(k, 0);
    while (true) {
      characters.push_back(make_character(tuple, factors));
      std::size_t cell = 0;
      while (cell < k) {
        if (++tuple[cell] < factors[cell]) break;
        tuple[cell] = 0;
        ++cell;
      }
      if (cell == k) break;
    }
  }
  std::map<std::vector<long long>, int> char_index;
  for (std::size_t i = 0; i < characters.size(); ++i)
    char_index.emplace(characters[i].tuple, static_cast<int>(i));

  // coordinates of r^{-1} h_j r for a conjugator r
  auto conj_coords_for = [&](const ModMatrix& r) {
    const ModMatrix r_inv = mod_inverse(r);
    std::vector<std::vector<long long>> u;
    for (std::size_t j = 0; j < k; ++j) {
      const ModMatrix& h = s.at(static_cast<std::size_t>(out.structure.basis[j]));
      u.push_back(out.structure.coords_of(mod_mul(mod_mul(r_inv, h), r)));
    }
    return u;
  };

  // deterministic coset representatives of g / s
  std::vector<int> coset_reps;
  {
    std::vector<char> covered(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (covered[i]) continue;
      coset_reps.push_back(static_cast<int>(i));
      for (std::size_t j = 0; j < s.size(); ++j) {
        int idx = g.index_of(mod_mul(g.at(i), s.at(j)));
        if (idx < 0) throw std::logic_error("coset product left the group");
        covered[static_cast<std::size_t>(idx)] = 1;
      }
    }
  }

  // orbits under the coset representatives
  std::vector<std::vector<std::vector<long long>>> rep_action;
  for (int rep : coset_reps) rep_action.push_back(conj_coords_for(g.at(static_cast<std::size_t>(rep))));

  std::vector<int> orbit_of(characters.size(), -1);
  for (std::size_t start = 0; start < characters.size(); ++start) {
    if (orbit_of[start] >= 0) continue;
    const int orbit_id = static_cast<int>(out.orbits.size());
    std::vector<DualCharacter> orbit;
    std::vector<std::size_t> queue{start};
    orbit_of[start] = orbit_id;
    while (!queue.empty()) {
      const std::size_t cur = queue.back();
      queue.pop_back();
      orbit.push_back(characters[cur]);
      for (const auto& u : rep_action) {
        const std::vector<long long> next = conjugate_tuple(characters[cur].tuple, factors, u);
        const int nid = char_index.at(next);
        if (orbit_of[static_cast<std::size_t>(nid)] < 0) {
          orbit_of[static_cast<std::size_t>(nid)] = orbit_id;
          queue.push_back(static_cast<std::size_t>(nid));
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }

  // exhaustive check: conjugation by every element of s fixes every character
  out.s_acts_trivially = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto u = conj_coords_for(s.at(i));
    for (const auto& chi : characters) {
      if (conjugate_tuple(chi.tuple, factors, u) != chi.tuple) {
        out.s_acts_trivially = false;
        break;
      }
    }
    if (!out.s_acts_trivially) break;
  }
  return out;
}

}  // namespace symtrace
