#pragma once

// Finite chamber systems with a Weyl distance.
//
// A Building is built from per-generator panel partitions.  The distance
// delta(x, y) is read off breadth-first search from x; disagreements between
// minimal galleries are recorded rather than thrown so that validate_building
// can report them as axiom failures.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cotwin/coxeter.hpp"

namespace cotwin {

using Chamber = std::uint32_t;

/// A J-residue, identified by its type and its index among the J-residues.
/// Indices follow the order of the smallest member chamber; for J = {} the
/// index is the chamber itself.
struct ResidueRef {
  GenSet type = 0;
  std::uint32_t index = 0;
  friend auto operator<=>(const ResidueRef&, const ResidueRef&) = default;
};

struct Gallery {
  std::vector<Chamber> chambers;
  std::vector<int> types;  // types[i] joins chambers[i] and chambers[i + 1]

  std::size_t length() const { return types.size(); }
  friend bool operator==(const Gallery&, const Gallery&) = default;
};

class Building {
 public:
  using PanelList = std::vector<std::vector<Chamber>>;

  /// panels[s] lists the s-panels.  Throws InvalidChamberSystem when some
  /// panels[s] is not a partition into sets of size >= 2, and Disconnected
  /// when the chamber system is not gallery connected.
  Building(std::string name, std::shared_ptr<const WeylTable> weyl, std::size_t chambers,
           std::vector<PanelList> panels);

  Building(const Building&) = delete;
  Building& operator=(const Building&) = delete;

  const std::string& name() const { return name_; }
  const WeylTable& weyl() const { return *weyl_; }
  const std::shared_ptr<const WeylTable>& weyl_ptr() const { return weyl_; }
  int rank() const { return weyl_->rank(); }
  std::size_t size() const { return size_; }
  GenSet all_gens() const { return (GenSet{1} << rank()) - 1; }
  bool is_thick() const;

  // Panels.
  std::size_t panel_count(int s) const { return panels_[s].size(); }
  const std::vector<Chamber>& panel_members(int s, std::uint32_t index) const { return panels_[s][index]; }
  std::uint32_t panel_index(Chamber c, int s) const { return residue_index_[gen_bit(s)][c]; }
  const std::vector<Chamber>& panel_of(Chamber c, int s) const { return panels_[s][panel_index(c, s)]; }
  /// x ~_s y; a chamber is s-adjacent to itself.
  bool adjacent(Chamber x, Chamber y, int s) const { return panel_index(x, s) == panel_index(y, s); }
  /// The generator t with x ~_t y for distinct x, y, or -1.
  int adjacency_type(Chamber x, Chamber y) const;

  // Distance.
  WeylElt delta(Chamber x, Chamber y) const { return row(x)[y]; }
  int distance(Chamber x, Chamber y) const { return weyl_->length(delta(x, y)); }
  /// A minimal gallery, choosing the smallest next chamber at every step.
  Gallery min_gallery(Chamber x, Chamber y) const;
  /// Problems found while reading off delta (minimal galleries disagreeing,
  /// or l(delta) differing from the gallery distance).  Empty for buildings.
  const std::vector<std::string>& distance_issues() const;

  // Residues.
  ResidueRef residue(Chamber c, GenSet J) const { return {J, residue_index_[J][c]}; }
  ResidueRef panel(Chamber c, int s) const { return residue(c, gen_bit(s)); }
  std::size_t residue_count(GenSet J) const { return residue_members_[J].size(); }
  const std::vector<Chamber>& members(ResidueRef R) const { return residue_members_[R.type][R.index]; }
  Chamber base(ResidueRef R) const { return members(R).front(); }
  bool contains(ResidueRef R, Chamber c) const { return residue_index_[R.type][c] == R.index; }
  /// R2 is a sub-residue of R1.
  bool contains(ResidueRef R1, ResidueRef R2) const;

  Chamber proj(ResidueRef R, Chamber c) const;
  ResidueRef proj(ResidueRef R, ResidueRef Q) const;
  bool are_parallel(ResidueRef R1, ResidueRef R2) const;
  /// delta(x, y) = r_J for J the type of R.  Throws NotInResidue.
  bool opposite_chambers(ResidueRef R, Chamber x, Chamber y) const;
  /// Some chamber of R1 opposite some chamber of R2 in R, and the types are
  /// conjugate under r_J.  Throws NotInResidue.
  bool opposite_residues(ResidueRef R, ResidueRef R1, ResidueRef R2) const;
  /// The residue with exactly this chamber set; its type is read off from the
  /// adjacencies inside the set.  Throws PreconditionFailed if the set is not
  /// a residue.
  ResidueRef residue_of_set(const std::vector<Chamber>& sorted_chambers) const;

 private:
  const std::vector<WeylElt>& row(Chamber x) const;
  std::vector<WeylElt> compute_row(Chamber x, std::vector<std::string>* issues) const;

  std::string name_;
  std::shared_ptr<const WeylTable> weyl_;
  std::size_t size_;
  std::vector<PanelList> panels_;
  std::vector<std::vector<std::uint32_t>> residue_index_;              // [J][chamber]
  std::vector<std::vector<std::vector<Chamber>>> residue_members_;     // [J][index]

  // Rows of delta; filled eagerly for small buildings, on demand otherwise.
  mutable std::vector<std::vector<WeylElt>> rows_;
  mutable std::unique_ptr<std::once_flag[]> row_once_;
  mutable std::vector<std::string> issues_;
  mutable std::mutex issues_mutex_;
  mutable std::once_flag all_rows_once_;
};

inline constexpr std::size_t kMaterializeLimit = 5000;

struct BuildingReport {
  bool ok = true;
  std::string axiom;                 // which check failed
  std::vector<Chamber> witness;      // chambers exhibiting the failure
  std::string detail;
};

/// Chamber-system axiom, Bu1-Bu3, symmetry of delta, delta on adjacent
/// chambers and agreement of gallery distance with l(delta).
BuildingReport validate_building(const Building& b);

}  // namespace cotwin
