#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "symtrace/groupset.hpp"
#include "symtrace/rational.hpp"

namespace symtrace {

// Finite abelian group presented by invariant factors d_1 | d_2 | ... (> 1),
// with explicit basis elements and coordinates for every group element.
struct AbelianStructure {
  std::vector<long long> invariant_factors;
  std::vector<int> basis;  // indices into the group's element list
  std::unordered_map<std::string, std::vector<long long>> coords;  // mod_key -> coordinates

  const std::vector<long long>& coords_of(const ModMatrix& g) const {
    auto it = coords.find(mod_key(g));
    if (it == coords.end()) throw std::logic_error("element outside the abelian group");
    return it->second;
  }
};

AbelianStructure abelian_structure(const GroupSet& s);

// Character of a finite abelian group into Q/Z: values[j] = c_j / d_j is the
// image of the j-th basis element, a rational mod 1.
struct DualCharacter {
  std::vector<long long> tuple;    // c_j, 0 <= c_j < d_j
  std::vector<Rational> values;    // c_j / d_j

  friend bool operator==(const DualCharacter& a, const DualCharacter& b) {
    return a.tuple == b.tuple;
  }
  friend bool operator<(const DualCharacter& a, const DualCharacter& b) {
    return a.tuple < b.tuple;
  }
};

struct DualActionResult {
  AbelianStructure structure;
  std::vector<std::vector<DualCharacter>> orbits;  // conjugation orbits under g
  bool s_acts_trivially = false;                   // s fixes every character of s
};

// Conjugation action of g on the dual of its normal abelian subgroup s:
// verifies normality and commutativity, presents s by invariant factors,
// enumerates the dual group, and returns the orbits under coset
// representatives of g/s plus the exhaustively checked triviality flag.
DualActionResult dual_action(const GroupSet& g, const GroupSet& s);

}  // namespace symtrace
