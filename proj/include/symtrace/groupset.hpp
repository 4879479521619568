#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "symtrace/modmatrix.hpp"
#include "symtrace/rational.hpp"

namespace symtrace {

inline constexpr std::size_t kDefaultGroupCap = 20000;

// A finite matrix group held as an explicit, lexicographically sorted element
// set with an index for O(1) lookup. Immutable once built.
class GroupSet {
 public:
  GroupSet() = default;

  // Breadth-first closure of the generated subgroup; CapExceeded when the
  // element count would pass cap.
  static GroupSet closure(const std::vector<ModMatrix>& generators, std::size_t cap);

  // Wrap an element set that is already a subgroup (closure is the caller's
  // contract; verify_closed() checks it when a test wants proof).
  static GroupSet from_elements(std::vector<ModMatrix> elements,
                                std::vector<ModMatrix> generators);

  std::size_t size() const { return elems_.size(); }
  int dim() const { return elems_.empty() ? 0 : elems_.front().n(); }
  std::uint64_t modulus() const { return elems_.empty() ? 0 : elems_.front().modulus; }

  const ModMatrix& at(std::size_t idx) const { return elems_[idx]; }
  const std::vector<ModMatrix>& elements() const { return elems_; }
  const std::vector<ModMatrix>& generators() const { return gens_; }

  int index_of(const ModMatrix& g) const {
    auto it = index_.find(mod_key(g));
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const ModMatrix& g) const { return index_of(g) >= 0; }

  int mul(int a, int b) const;          // index of elems_[a] * elems_[b]
  int inverse_index(int idx) const { return inverse_[static_cast<std::size_t>(idx)]; }
  int identity_index() const { return identity_; }

  long long element_order(int idx) const;
  unsigned long long exponent() const;  // lcm of element orders

  bool verify_closed() const;

 private:
  void build_index();

  std::vector<ModMatrix> elems_;
  std::vector<ModMatrix> gens_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> inverse_;
  int identity_ = -1;
};

// |SL_n(Z/l^m)| = l^{(m-1)(n^2-1)} * l^{n(n-1)/2} * prod_{k=2}^{n} (l^k - 1).
Integer group_order(int n, std::uint64_t l, int m);

// A small generating set found greedily over the sorted elements.
std::vector<ModMatrix> greedy_generators(const std::vector<ModMatrix>& elements);

struct CongruenceKernelResult {
  GroupSet kernel;
  bool abelian = false;
  unsigned long long exponent = 1;
};

// Kernel of the reduction SL_n(Z/l^m) -> SL_n(Z/l), built by direct
// enumeration of I + l*A with det = 1 mod l^m. n <= 3.
CongruenceKernelResult congruence_kernel(int n, std::uint64_t l, int m,
                                         std::size_t cap = kDefaultGroupCap);

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // class 0 is the identity's class
  std::vector<int> class_of;              // element index -> class index
};

ConjugacyClasses conjugacy_classes(const GroupSet& g);

// Subgroup generated by the seed elements; with normal_closure, also closed
// under conjugation by the group's generators. Returns sorted element indices.
std::vector<int> generated_subgroup(const GroupSet& g, const std::vector<int>& seeds,
                                    bool normal_closure);

std::vector<int> commutator_subgroup_indices(const GroupSet& g);

// All normal subgroups, as joins of subgroups generated by conjugacy classes;
// each result is re-verified closed and conjugation-stable.
std::vector<GroupSet> normal_subgroups(const GroupSet& g, std::size_t cap = kDefaultGroupCap);

}  // namespace symtrace
