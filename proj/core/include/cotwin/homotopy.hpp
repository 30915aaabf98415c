#pragma once

// Galleries up to 2-homotopy inside a subset of chambers, the local
// conditions on opposite-chamber sets, and the residual filtration defined
// by a codistance.
//
// Simple 2-connectedness of a chamber subset X is decided on the 2-complex
// whose edges come from adjacency inside X and whose 2-cells are the closed
// galleries inside (rank 2 residue) cap X.  The edge-path group is presented
// on a spanning tree; a nonzero abelianisation proves non-triviality and a
// completed coset enumeration decides the rest.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotwin/codistance.hpp"

namespace cotwin {

enum class Verdict { ProvenTrivial, ProvenNontrivial, Inconclusive };
const char* to_string(Verdict v);

struct TrivialityVerdict {
  Verdict status = Verdict::Inconclusive;
  std::string certificate;  // e.g. "H1 = Z^1", "1 coset", "group of order 3"
};

/// Consecutive chambers are adjacent with the recorded type (repetitions
/// allowed) and, if `subset` is given (sorted), every chamber lies in it.
bool is_gallery(const Building& b, const Gallery& g, const std::vector<Chamber>* subset = nullptr);

/// G = X G0 Y and H = X H0 Y with G0, H0 J-galleries for some |J| <= 2.
bool elementary_2_homotopic(const Gallery& G, const Gallery& H);

/// Bounded search for a chain of elementary homotopies inside `subset`
/// (all chambers when null).  Never returns ProvenNontrivial.  Throws
/// EndpointMismatch.
TrivialityVerdict two_homotopic(const Building& b, const Gallery& G, const Gallery& H, std::size_t bound,
                                const std::vector<Chamber>* subset = nullptr);

/// Connectivity of (subset, (~_s)_{s in gens}).
bool connected(const Building& b, const std::vector<Chamber>& subset, GenSet gens);

struct SimpleConnectivityLimits {
  std::size_t max_cosets = 100000;
};

/// Throws NotConnected when the subset is not connected.
TrivialityVerdict simply_2_connected(const Building& b, const std::vector<Chamber>& subset,
                                     const SimpleConnectivityLimits& limits = {});

/// Chambers y of R with delta(x, y) = r_J.
std::vector<Chamber> opposite_set(const Building& b, ResidueRef R, Chamber x);

struct LocalFailure {
  ResidueRef residue;
  Chamber chamber = 0;
  Verdict verdict = Verdict::ProvenNontrivial;
  std::string detail;
};

struct LocalReport {
  bool vacuous = false;           // no residue of the required rank
  std::size_t checked = 0;        // (residue, chamber) pairs examined
  Verdict overall = Verdict::ProvenTrivial;  // Trivial = holds, Nontrivial = fails
  std::vector<LocalFailure> failures;        // sorted by (type, index, chamber)
};

/// Every rank 2 residue R and x in R: the opposite set of x in R is connected.
LocalReport check_lco(const Building& b);
/// Every rank 3 residue R and x in R: the opposite set of x in R is simply
/// 2-connected.
LocalReport check_lsco(const Building& b, const SimpleConnectivityLimits& limits = {});

struct Filtration {
  std::vector<std::uint32_t> rank;          // |f(x)| per chamber (ShortLex id of f(x))
  std::vector<std::vector<Chamber>> levels; // C_0, C_1, ..., C_{|W|-1}
  std::vector<int> witness;                 // F3 generator per level, -1 where C_n = C_{n-1}
};

/// Builds C_n = {x : |f(x)| <= n} and verifies F1-F3 globally and on every
/// residue, C_0 = f^op, and aff(R) = A_f(R).  Throws Violation naming the
/// level and residue on failure.
Filtration residual_filtration(const Codistance& f);

}  // namespace cotwin
