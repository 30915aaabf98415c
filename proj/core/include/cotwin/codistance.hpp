#pragma once

// Codistances: W-valued functions on the chambers of a spherical building
// that satisfy the panel axiom (on every s-panel the values are {w, ws} and
// exactly one chamber carries the longer of the two).

#include <optional>
#include <string>
#include <vector>

#include "cotwin/catalog.hpp"

namespace cotwin {

class Codistance {
 public:
  /// Throws BuildingMismatch when there is not one value per chamber.
  Codistance(BuildingPtr building, std::vector<WeylElt> values);

  const Building& building() const { return *building_; }
  const BuildingPtr& building_ptr() const { return building_; }
  WeylElt operator()(Chamber c) const { return values_[c]; }
  const std::vector<WeylElt>& values() const { return values_; }
  std::size_t hash() const;

  friend bool operator==(const Codistance& a, const Codistance& b) {
    return a.building_ == b.building_ && a.values_ == b.values_;
  }

 private:
  BuildingPtr building_;
  std::vector<WeylElt> values_;
};

struct CodistanceHash {
  std::size_t operator()(const Codistance& f) const { return f.hash(); }
};

struct CodistanceReport {
  bool ok = true;
  ResidueRef panel{};                 // first panel violating the axiom
  std::vector<WeylElt> observed;      // values on that panel, by chamber
  std::string detail;
};

CodistanceReport validate_codistance(const Codistance& f);

/// f(x) = r_S delta(c, x), the codistance of the self-twinning of a spherical
/// building seen from c.
Codistance from_opposite_chamber(const BuildingPtr& b, Chamber c);

struct ResidueProfile {
  std::vector<WeylElt> image;       // sorted distinct values on R
  int l_f = 0;                      // minimal length of a value
  std::vector<Chamber> A_f;         // chambers attaining l_f
  std::optional<Chamber> proj_f;    // unique chamber of maximal length
};

ResidueProfile residue_profile(const Codistance& f, ResidueRef R);
/// The chamber of R with longest f-value (assumes f is valid).
Chamber proj_f(const Codistance& f, ResidueRef R);

std::vector<Chamber> fop(const Codistance& f);
std::vector<Chamber> fop_c(const Codistance& f, Chamber c);
/// R contains a chamber of f^op.
bool residue_in_fop(const Codistance& f, ResidueRef R);

/// The chamber c with f(c) = f(x) w and delta(x, c) = w, found by walking
/// along a reduced word of w.  Requires l(f(x) w) = l(f(x)) + l(w); throws
/// PreconditionFailed otherwise.
Chamber unique_chamber(const Codistance& f, Chamber x, WeylElt w);

}  // namespace cotwin
