#pragma once

#include <vector>

#include "symtrace/groupset.hpp"

namespace symtrace {

struct CharacterDegreeOptions {
  int max_prime_retries = 8;
};

// Irreducible complex character degrees via the class-algebra method: the
// class multiplication coefficient matrices are simultaneously diagonalized
// over F_p for a deterministic auxiliary prime p = 1 (mod exponent),
// p > 2 sqrt(|G|); degrees are lifted from the d^2 relation and verified by
// sum d^2 = |G| and by counting the linear characters against |G/[G,G]|.
// Returns the multiset sorted ascending. Throws SplitFailure if no prime in
// the retry budget yields a clean split.
std::vector<long long> character_degrees(const GroupSet& g,
                                         const CharacterDegreeOptions& opts = {});

}  // namespace symtrace
