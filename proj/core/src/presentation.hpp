#pragma once

// Finitely presented groups: free reduction, Tietze eliminations, integer
// Smith normal form of the relation matrix and HLT coset enumeration.
// Internal to the homotopy module.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cotwin::detail {

/// Letters are +(g+1) for generator g and -(g+1) for its inverse.
using Word = std::vector<int>;

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;
};

Word free_reduce(const Word& w);
Word cyclically_reduce(const Word& w);

/// Removes generators using relators of the form x, x y^{+-1}, and short
/// relators in which a generator occurs exactly once.  The result presents an
/// isomorphic group.
Presentation simplify(Presentation p);

struct Abelianisation {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

/// Nothing when intermediate entries overflow 64 bits.
std::optional<Abelianisation> abelianise(const Presentation& p);

/// Index of the trivial subgroup, i.e. the group order, or nothing when more
/// than `max_cosets` cosets would be needed.
std::optional<std::size_t> enumerate_cosets(const Presentation& p, std::size_t max_cosets);

}  // namespace cotwin::detail
