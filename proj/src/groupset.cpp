#include "symtrace/groupset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace symtrace {

void GroupSet::build_index() {
  std::sort(elems_.begin(), elems_.end(), mod_less);
  index_.clear();
  index_.reserve(elems_.size() * 2);
  for (std::size_t i = 0; i < elems_.size(); ++i)
    index_.emplace(mod_key(elems_[i]), static_cast<int>(i));
  if (static_cast<std::size_t>(index_.size()) != elems_.size())
    throw std::logic_error("GroupSet: duplicate elements");

  identity_ = index_of(mod_identity(dim(), modulus()));
  if (identity_ < 0) throw std::logic_error("GroupSet: identity missing");

  inverse_.assign(elems_.size(), -1);
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    int inv = index_of(mod_inverse(elems_[i]));
    if (inv < 0) throw std::logic_error("GroupSet: inverse missing (set not closed)");
    inverse_[i] = inv;
  }
}

GroupSet GroupSet::closure(const std::vector<ModMatrix>& generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("closure: no generators");
  const int n = generators.front().n();
  const std::uint64_t modulus = generators.front().modulus;
  for (const auto& g : generators) {
    if (g.n() != n || g.modulus != modulus)
      fail(Errc::wrong_shape, "generators must share shape and modulus");
    if (std::gcd(mod_det(g), modulus) != 1)
      fail(Errc::singular_input, "generator is not invertible");
  }

  std::vector<ModMatrix> found;
  std::unordered_map<std::string, int> seen;
  std::deque<std::size_t> queue;
  auto push = [&](const ModMatrix& g) {
    auto [it, fresh] = seen.emplace(mod_key(g), static_cast<int>(found.size()));
    (void)it;
    if (!fresh) return;
    if (found.size() >= cap)
      fail(Errc::cap_exceeded, "closure larger than cap = " + std::to_string(cap));
    found.push_back(g);
    queue.push_back(found.size() - 1);
  };

  push(mod_identity(n, modulus));
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators) push(mod_mul(found[cur], g));
  }

  GroupSet out;
  out.elems_ = std::move(found);
  out.gens_ = generators;
  out.build_index();
  return out;
}

GroupSet GroupSet::from_elements(std::vector<ModMatrix> elements,
                                 std::vector<ModMatrix> generators) {
  GroupSet out;
  out.elems_ = std::move(elements);
  out.gens_ = std::move(generators);
  out.build_index();
  return out;
}

int GroupSet::mul(int a, int b) const {
  int idx = index_of(mod_mul(elems_[static_cast<std::size_t>(a)],
                             elems_[static_cast<std::size_t>(b)]));
  if (idx < 0) throw std::logic_error("GroupSet: product left the set");
  return idx;
}

long long GroupSet::element_order(int idx) const {
  const ModMatrix& g = elems_[static_cast<std::size_t>(idx)];
  ModMatrix h = g;
  long long order = 1;
  while (!mod_is_identity(h)) {
    h = mod_mul(h, g);
    ++order;
    if (static_cast<std::size_t>(order) > size())
      throw std::logic_error("element order exceeds group size");
  }
  return order;
}

unsigned long long GroupSet::exponent() const {
  unsigned long long e = 1;
  for (std::size_t i = 0; i < size(); ++i)
    e = std::lcm(e, static_cast<unsigned long long>(element_order(static_cast<int>(i))));
  return e;
}

bool GroupSet::verify_closed() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (const auto& g : gens_)
      if (!contains(mod_mul(elems_[a], g))) return false;
  for (std::size_t a = 0; a < size(); ++a)
    if (!contains(mod_inverse(elems_[a]))) return false;
  return true;
}

Integer group_order(int n, std::uint64_t l, int m) {
  if (n < 1 || m < 1 || !is_prime(l))
    throw std::invalid_argument("group_order: need n,m >= 1 and l prime");
  const Integer lz(static_cast<unsigned long>(l));
  Integer order = integer_pow(lz, static_cast<unsigned long>((m - 1) * (n * n - 1)));
  order *= integer_pow(lz, static_cast<unsigned long>(n * (n - 1) / 2));
  for (int k = 2; k <= n; ++k)
    order *= integer_pow(lz, static_cast<unsigned long>(k)) - 1;
  return order;
}

std::vector<ModMatrix> greedy_generators(const std::vector<ModMatrix>& elements) {
  if (elements.empty()) throw std::invalid_argument("greedy_generators: empty set");
  std::vector<ModMatrix> sorted(elements);
  std::sort(sorted.begin(), sorted.end(), mod_less);

  std::vector<ModMatrix> gens;
  std::set<std::string> span{mod_key(mod_identity(sorted.front().n(), sorted.front().modulus))};
  for (const auto& x : sorted) {
    if (span.count(mod_key(x))) continue;
    gens.push_back(x);
    // rebuild the span of the enlarged generating set
    GroupSet h = GroupSet::closure(gens, elements.size());
    span.clear();
    for (const auto& e : h.elements()) span.insert(mod_key(e));
    if (span.size() == elements.size()) break;
  }
  if (gens.empty())  // trivial group
    gens.push_back(mod_identity(sorted.front().n(), sorted.front().modulus));
  return gens;
}

CongruenceKernelResult congruence_kernel(int n, std::uint64_t l, int m, std::size_t cap) {
  if (!is_prime(l)) throw std::invalid_argument("congruence_kernel: l must be prime");
  if (m < 1) throw std::invalid_argument("congruence_kernel: m >= 1");
  if (n < 2 || n > 3) throw std::invalid_argument("congruence_kernel supports n in {2, 3}");

  const Integer order = integer_pow(Integer(static_cast<unsigned long>(l)),
                                    static_cast<unsigned long>((m - 1) * (n * n - 1)));
  if (order > static_cast<unsigned long>(cap))
    fail(Errc::cap_exceeded,
         "kernel order " + order.get_str() + " exceeds cap = " + std::to_string(cap));

  std::uint64_t modulus = 1;
  for (int i = 0; i < m; ++i) modulus *= l;
  std::uint64_t a_range = modulus / l;  // entries of A run mod l^{m-1}

  // Parameter count l^{(m-1) n^2}; guard the sweep itself.
  long double sweep = 1.0L;
  for (int i = 0; i < n * n; ++i) sweep *= static_cast<long double>(a_range);
  if (sweep > 5e7L)
    fail(Errc::cap_exceeded, "kernel enumeration too large for desk scale");

  std::vector<ModMatrix> elems;
  const int cells = n * n;
  std::vector<std::uint64_t> a(static_cast<std::size_t>(cells), 0);
  while (true) {
    ModMatrix candidate = mod_identity(n, modulus);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        candidate.entries(i, j) =
            (candidate.entries(i, j) + l * a[static_cast<std::size_t>(i * n + j)]) % modulus;
    if (mod_det(candidate) == 1 % modulus) elems.push_back(candidate);

    int cell = 0;
    while (cell < cells) {
      if (++a[static_cast<std::size_t>(cell)] < a_range) break;
      a[static_cast<std::size_t>(cell)] = 0;
      ++cell;
    }
    if (cell == cells) break;
  }

  CongruenceKernelResult out;
  std::vector<ModMatrix> kernel_gens = greedy_generators(elems);
  out.kernel = GroupSet::from_elements(std::move(elems), std::move(kernel_gens));
  out.abelian = true;
  for (std::size_t i = 0; i < out.kernel.size() && out.abelian; ++i)
    for (std::size_t j = i + 1; j < out.kernel.size(); ++j)
      if (!mod_equal(mod_mul(out.kernel.at(i), out.kernel.at(j)),
                     mod_mul(out.kernel.at(j), out.kernel.at(i)))) {
        out.abelian = false;
        break;
      }
  out.exponent = out.kernel.exponent();
  return out;
}

ConjugacyClasses conjugacy_classes(const GroupSet& g) {
  std::vector<ModMatrix> gens = g.generators();
  if (gens.empty()) gens = greedy_generators(g.elements());
  std::vector<int> gen_idx, gen_inv_idx;
  for (const auto& h : gens) {
    int idx = g.index_of(h);
    if (idx < 0) throw std::logic_error("generator outside group");
    gen_idx.push_back(idx);
    gen_inv_idx.push_back(g.inverse_index(idx));
  }

  ConjugacyClasses out;
  out.class_of.assign(g.size(), -1);
  auto grow_class = [&](int start) {
    const int cls = static_cast<int>(out.classes.size());
    out.classes.emplace_back();
    std::deque<int> queue{start};
    out.class_of[static_cast<std::size_t>(start)] = cls;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      out.classes[static_cast<std::size_t>(cls)].push_back(cur);
      for (std::size_t k = 0; k < gen_idx.size(); ++k) {
        int conj = g.mul(g.mul(gen_inv_idx[k], cur), gen_idx[k]);
        if (out.class_of[static_cast<std::size_t>(conj)] < 0) {
          out.class_of[static_cast<std::size_t>(conj)] = cls;
          queue.push_back(conj);
        }
      }
    }
    std::sort(out.classes[static_cast<std::size_t>(cls)].begin(),
              out.classes[static_cast<std::size_t>(cls)].end());
  };

  grow_class(g.identity_index());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (out.class_of[i] < 0) grow_class(static_cast<int>(i));
  return out;
}

std::vector<int> generated_subgroup(const GroupSet& g, const std::vector<int>& seeds,
                                    bool normal_closure) {
  std::vector<ModMatrix> gens = g.generators();
  if (gens.empty()) gens = greedy_generators(g.elements());
  std::vector<int> outer_gen_idx;
  for (const auto& h : gens) outer_gen_idx.push_back(g.index_of(h));

  // Seeds are filtered greedily: only a seed outside the current subgroup
  // becomes a generator, so the generating set stays logarithmic even when a
  // whole conjugacy class (or a union of subgroups) is passed in.
  std::vector<int> sub_gens;
  std::vector<char> member(g.size(), 0);
  std::vector<int> members{g.identity_index()};
  member[static_cast<std::size_t>(g.identity_index())] = 1;

  auto extend_with = [&](int seed) {
    if (member[static_cast<std::size_t>(seed)]) return;
    sub_gens.push_back(seed);
    std::deque<int> queue(members.begin(), members.end());
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (int s : sub_gens) {
        int next = g.mul(cur, s);
        if (!member[static_cast<std::size_t>(next)]) {
          member[static_cast<std::size_t>(next)] = 1;
          members.push_back(next);
          queue.push_back(next);
        }
      }
    }
  };

  for (int seed : seeds) extend_with(seed);
  if (normal_closure) {
    bool stable = false;
    while (!stable) {
      stable = true;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (int k : outer_gen_idx) {
          int conj = g.mul(g.mul(g.inverse_index(k), members[i]), k);
          if (!member[static_cast<std::size_t>(conj)]) {
            extend_with(conj);
            stable = false;
          }
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> commutator_subgroup_indices(const GroupSet& g) {
  std::vector<ModMatrix> gens = g.generators();
  if (gens.empty()) gens = greedy_generators(g.elements());
  std::vector<int> seeds;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      int ia = g.index_of(a), ib = g.index_of(b);
      int comm = g.mul(g.mul(g.inverse_index(ia), g.inverse_index(ib)), g.mul(ia, ib));
      seeds.push_back(comm);
    }
  return generated_subgroup(g, seeds, /*normal_closure=*/true);
}

std::vector<GroupSet> normal_subgroups(const GroupSet& g, std::size_t cap) {
  if (g.size() > cap)
    fail(Errc::cap_exceeded, "normal_subgroups: group size " + std::to_string(g.size()) +
                                 " exceeds cap = " + std::to_string(cap));

  const ConjugacyClasses cc = conjugacy_classes(g);
  std::set<std::vector<int>> subgroups;
  for (const auto& cls : cc.classes)
    subgroups.insert(generated_subgroup(g, cls, /*normal_closure=*/false));

  // Joins to fixpoint: every normal subgroup is the join of the closures of
  // the classes it contains.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(subgroups.begin(), subgroups.end());
    for (std::size_t i = 0; i < current.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < current.size() && !grew; ++j) {
        std::vector<int> seeds(current[i]);
        seeds.insert(seeds.end(), current[j].begin(), current[j].end());
        std::vector<int> join = generated_subgroup(g, seeds, /*normal_closure=*/false);
        if (!subgroups.count(join)) {
          subgroups.insert(std::move(join));
          grew = true;
        }
      }
  }

  std::vector<ModMatrix> gens = g.generators();
  if (gens.empty()) gens = greedy_generators(g.elements());

  std::vector<std::vector<int>> ordered(subgroups.begin(), subgroups.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  std::vector<GroupSet> out;
  for (const auto& indices : ordered) {
    std::vector<ModMatrix> elems;
    elems.reserve(indices.size());
    for (int idx : indices) elems.push_back(g.at(static_cast<std::size_t>(idx)));
    std::vector<ModMatrix> sub_gens = greedy_generators(elems);
    GroupSet sub = GroupSet::from_elements(std::move(elems), std::move(sub_gens));

    // re-verify: closed as a subgroup and stable under conjugation from g
    if (!sub.verify_closed())
      throw std::logic_error("normal subgroup candidate not closed");
    for (const auto& h : gens) {
      const ModMatrix h_inv = mod_inverse(h);
      for (std::size_t i = 0; i < sub.size(); ++i)
        if (!sub.contains(mod_mul(mod_mul(h_inv, sub.at(i)), h)))
          throw std::logic_error("normal subgroup candidate not conjugation-stable");
    }
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace symtrace
