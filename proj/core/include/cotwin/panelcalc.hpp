#pragma once

// Panels: the graph of panels opposite in rank 2 residues, compatible paths
// and the compatible distance, the panels pi(P, w) attached to a codistance,
// and the bijections beta between panels of P_s^op(f).

#include <optional>
#include <vector>

#include "cotwin/homotopy.hpp"

namespace cotwin {

/// A panel is a residue whose type has a single generator.
using Panel = ResidueRef;

inline Panel make_panel(int s, std::uint32_t index) { return Panel{gen_bit(s), index}; }
int panel_type(Panel P);

/// s r_J: the distance between opposite panels of types s and r_J s r_J in a
/// J-residue (J spherical, s in J).
WeylElt opposite_panels_distance(const WeylTable& W, int s, GenSet J);

class PanelGraph {
 public:
  explicit PanelGraph(const Building& b);

  const Building& building() const { return *b_; }
  std::size_t size() const { return panels_.size(); }
  std::size_t id(Panel P) const { return offset_[panel_type(P)] + P.index; }
  Panel panel(std::size_t id) const { return panels_[id]; }

  struct Edge {
    Panel to;
    ResidueRef residue;
  };
  /// Panels opposite P in some rank 2 residue, sorted.
  const std::vector<Edge>& neighbours(Panel P) const { return adj_[id(P)]; }
  bool adjacent(Panel P, Panel Q) const;
  /// The rank 2 residue in which P and Q are opposite.  Throws NotAdjacent.
  ResidueRef residue(Panel P, Panel Q) const;

 private:
  const Building* b_;
  std::vector<std::size_t> offset_;
  std::vector<Panel> panels_;
  std::vector<std::vector<Edge>> adj_;
};

/// delta(x, proj_Q x) for x in P, checked to be independent of x.  Throws
/// NotParallel.
WeylElt delta_panels(const Building& b, Panel P, Panel Q);

/// Γ-path without repetitions with proj_{R(P_{i-1}, P_i)} P_0 = P_{i-1}.
/// Returns false on repetitions; throws NotAdjacent when consecutive panels
/// are not Γ-adjacent.
bool is_compatible_path(const PanelGraph& g, const std::vector<Panel>& path);

/// A compatible path from P to Q (the single panel P when P = Q), found by
/// walking back from Q towards P through rank 2 residues.  Throws NotParallel.
std::vector<Panel> compatible_path(const PanelGraph& g, Panel P, Panel Q);

/// All compatible paths from P to Q, optionally staying inside `within`.
std::vector<std::vector<Panel>> all_compatible_paths(const PanelGraph& g, Panel P, Panel Q,
                                                     std::optional<ResidueRef> within = std::nullopt);

/// Every compatible path starting at P, optionally staying inside `within`.
std::vector<std::vector<Panel>> compatible_paths_from(const PanelGraph& g, Panel P,
                                                      std::optional<ResidueRef> within = std::nullopt);

/// Compatible distance.  Throws NotParallel.
int l_c(const PanelGraph& g, Panel P, Panel Q);

/// Some s-panel P and w^-1 s w-panel Q with delta(P, Q) = w.  Throws
/// NoWitnessPair when w is not in X_s or no such pair exists.
std::pair<Panel, Panel> witness_pair(const Building& b, WeylElt w, int s);
/// Compatible distance of the panels of a witness pair.
int l_c_of_w(const PanelGraph& g, WeylElt w, int s);

/// A bijection between two panels, stored as images of the sorted members
/// of the source.
struct PanelBijection {
  Panel source{};
  Panel target{};
  std::vector<Chamber> from;
  std::vector<Chamber> to;

  /// Throws NotInResidue for chambers outside the source.
  Chamber operator()(Chamber x) const;
  bool is_identity() const { return source == target && from == to; }
  friend bool operator==(const PanelBijection&, const PanelBijection&) = default;
};

PanelBijection identity_bijection(const Building& b, Panel P);
/// proj_Q restricted to P.  Throws NotParallel.
PanelBijection projection_bijection(const Building& b, Panel P, Panel Q);
/// second after first.  Throws PreconditionFailed when they do not chain.
PanelBijection compose(const PanelBijection& second, const PanelBijection& first);

/// The s-panels of the codistance f that meet f^op (P_s^op(f)), their
/// bijections and the panels pi(P, w).
class OppositePanels {
 public:
  explicit OppositePanels(const Codistance& f, const SimpleConnectivityLimits& limits = {});

  const Codistance& codistance() const { return f_; }
  const Building& building() const { return f_.building(); }
  const std::vector<Chamber>& fop() const { return fop_; }
  bool in_fop(Chamber c) const { return in_fop_[c] != 0; }
  /// Simple 2-connectivity of f^op, decided on construction.
  const TrivialityVerdict& fop_verdict() const { return verdict_; }

  /// P_s^op(f), sorted.
  const std::vector<Panel>& panels(int s) const;
  bool contains(Panel P) const;
  /// P_{s,c}^op(f): s-panels containing a chamber of f^op_c.
  std::vector<Panel> panels_at(int s, Chamber c) const;

  /// The chamber of P with f-value s (P in P_s^op(f)).
  Chamber far_chamber(Panel P) const;

  /// Throws PreconditionFailed unless P is in P_s^op(f) and w in X_s.
  Panel pi(Panel P, WeylElt w) const;
  bool equivalent(Panel P, Panel Q, WeylElt w) const { return pi(P, w) == pi(Q, w); }
  /// proj_Q proj_{pi(P, w)}.  Throws NotEquivalent.
  PanelBijection beta_w(Panel P, Panel Q, WeylElt w) const;

  /// beta for two panels joined by a t-adjacency inside f^op.
  PanelBijection beta_adjacent(Panel X, Panel Y) const;
  /// beta along a gallery in f^op from a chamber of P to a chamber of Q.
  PanelBijection beta_along(Panel P, Panel Q, const Gallery& gamma) const;
  /// beta(P, Q) along a breadth-first path of panels.  Throws NotOpposite
  /// and HomotopyInconclusive (f^op not proven simply 2-connected).
  PanelBijection beta(Panel P, Panel Q) const;
  /// beta(P, Q) for every Q in P_s^op(f), in the order of panels(s).
  std::vector<PanelBijection> beta_from(Panel P) const;

 private:
  void require_simply_connected() const;
  void require_member(Panel P) const;

  Codistance f_;
  std::vector<Chamber> fop_;
  std::vector<char> in_fop_;
  TrivialityVerdict verdict_;
  std::vector<std::vector<Panel>> panels_;  // [s]
};

/// The s-panel P in P_s^op(f) and w with Q = pi(P, w), where w is the
/// shorter f-value on Q.  Throws PreconditionFailed when w t w^-1 is not a
/// generator.
struct ReversePi {
  Panel panel;
  WeylElt w;
};
ReversePi reverse_pi(const Codistance& f, Panel Q);

}  // namespace cotwin
