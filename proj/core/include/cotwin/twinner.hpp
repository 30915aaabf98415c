#pragma once

// Adjacent codistances, the atlas of codistances reachable from a seed, and
// the twin building assembled from it.

#include <optional>
#include <string>
#include <vector>

#include "cotwin/panelcalc.hpp"

namespace cotwin {

/// The s-panels that contain a chamber of f^op, sorted.
std::vector<Panel> opposite_panels(const Codistance& f, int s);

/// P_s^op(f) = P_s^op(g).  Throws BuildingMismatch.
bool s_adjacent(const Codistance& f, const Codistance& g, int s);

/// The codistance g s-adjacent to f with proj_P g = beta(Ptilde, P)(p) for
/// every P in P_s^op(f).  On each chamber c the defining formula uses the
/// panel number `choice` (mod the count) of P_{s,c}^op(f).  Throws
/// PreconditionFailed unless Ptilde is in P_s^op(f) and p in Ptilde cap f^op,
/// HomotopyInconclusive when beta is unavailable, and Violation when the
/// result is not a codistance with the expected projections.
Codistance adjacent_codistance(const OppositePanels& op, int s, Panel Ptilde, Chamber p, std::size_t choice = 0);

struct AtlasLimits {
  std::size_t cap = 50000;
  SimpleConnectivityLimits homotopy{};
};

/// The connected component of the seed in the chamber system of codistances.
/// Members are numbered in breadth-first order from the seed (member 0); the
/// s-panel of a member is enumerated from the smallest panel of P_s^op.
struct CodistanceAtlas {
  BuildingPtr building;
  std::vector<Codistance> members;
  std::vector<std::vector<std::vector<std::uint32_t>>> panels;  // [s][panel] -> sorted member ids
  std::vector<std::vector<std::uint32_t>> panel_index;          // [s][member]
  std::size_t origin = 0;

  std::size_t size() const { return members.size(); }
  int rank() const { return static_cast<int>(panels.size()); }
  std::optional<std::size_t> find(const Codistance& f) const;
  bool adjacent(std::size_t g, std::size_t h, int s) const { return panel_index[s][g] == panel_index[s][h]; }
  /// Member ids of the J-residue of g, sorted.
  std::vector<std::uint32_t> residue(std::size_t g, GenSet J) const;
};

/// Throws CapExceeded when the component exceeds limits.cap members,
/// HomotopyInconclusive when some f^op is not proven simply 2-connected, and
/// Violation when two enumerations of a panel disagree or a pair of members
/// is adjacent for two types.
CodistanceAtlas atlas_component(const Codistance& f, const AtlasLimits& limits = {});

/// An atlas rebuilt from stored members and s-panels of member ids, as
/// written by a twin build.  Throws Violation unless the panels of each type
/// partition the members.
CodistanceAtlas make_atlas(BuildingPtr b, std::vector<Codistance> members,
                           const std::vector<Building::PanelList>& panels);

struct AlphaReport {
  ResidueRef residue{};                 // R in B_-
  std::vector<std::uint32_t> members;   // the J-residue of g in the atlas
  std::vector<Chamber> image;           // alpha of each member
};

/// alpha(h) = proj_R h on the J-residue of g is a bijection onto R with
/// h1 ~_s h2 <=> alpha(h1) ~_{r_J s r_J} alpha(h2) and c in h^op <=>
/// delta(alpha(h), c) = r_J.  R defaults to the J-residue of the first
/// chamber of g^op.  Throws PreconditionFailed if R is not in g^op and
/// Violation with a witness otherwise.
AlphaReport alpha_check(const CodistanceAtlas& atlas, std::size_t g, GenSet J,
                        std::optional<ResidueRef> R = std::nullopt);

struct TwinCheck {
  std::string name;
  bool ok = true;
  std::size_t instances = 0;
  std::string detail;  // first failure
};

struct TwinAssembly {
  CodistanceAtlas atlas;
  BuildingPtr minus;
  BuildingPtr plus;  // chamber i is atlas member i
  std::vector<TwinCheck> checks;

  /// delta*(g, c) for g in B_+ and c in B_-; delta*(c, g) is its inverse.
  WeylElt costar(std::size_t g, Chamber c) const { return atlas.members[g](c); }
  bool ok() const;
  const TwinCheck* check(const std::string& name) const;
  /// Throws Violation naming the first failed check.
  void require_ok() const;
};

/// Builds B_+ from the atlas and runs every verification.  Throws
/// BuildingInvalid when the atlas chamber system is not a building of the
/// type of B_-.
TwinAssembly assemble_twin(CodistanceAtlas atlas);

/// Names of the checks run by assemble_twin, in report order.
const std::vector<std::string>& twin_check_names();

}  // namespace cotwin
