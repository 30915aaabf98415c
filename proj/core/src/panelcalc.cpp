#include "cotwin/panelcalc.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cotwin/errors.hpp"

namespace cotwin {

int panel_type(Panel P) {
  if (popcount(P.type) != 1) throw Error(Errc::PreconditionFailed, "residue is not a panel");
  return members(P.type).front();
}

WeylElt opposite_panels_distance(const WeylTable& W, int s, GenSet J) {
  return W.mul(W.generator(s), W.longest_element(J));
}

namespace {

std::string describe(Panel P) {
  return "panel (" + std::to_string(panel_type(P)) + ", " + std::to_string(P.index) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// The panel graph.

PanelGraph::PanelGraph(const Building& b) : b_(&b) {
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    offset_.push_back(panels_.size());
    for (std::uint32_t i = 0; i < b.panel_count(s); ++i) panels_.push_back(make_panel(s, i));
  }
  adj_.resize(panels_.size());
  for (int s = 0; s < b.rank(); ++s) {
    for (int t = s + 1; t < b.rank(); ++t) {
      const GenSet J = gen_bit(s) | gen_bit(t);
      const WeylElt r = W.longest_element(J);
      for (std::uint32_t i = 0; i < b.residue_count(J); ++i) {
        const ResidueRef R{J, i};
        for (int u : {s, t}) {
          const int u_op = members(W.conjugate_set(gen_bit(u), r)).front();
          std::set<std::uint32_t> seen;
          for (Chamber x : b.members(R)) {
            const Panel P = b.panel(x, u);
            if (!seen.insert(P.index).second) continue;
            std::set<std::uint32_t> opposite;
            for (Chamber y : opposite_set(b, R, b.base(P))) opposite.insert(b.panel(y, u_op).index);
            for (std::uint32_t q : opposite) adj_[id(P)].push_back({make_panel(u_op, q), R});
          }
        }
      }
    }
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end(), [](const Edge& a, const Edge& c) { return a.to < c.to; });
  }
}

bool PanelGraph::adjacent(Panel P, Panel Q) const {
  const auto& list = neighbours(P);
  return std::any_of(list.begin(), list.end(), [&](const Edge& e) { return e.to == Q; });
}

ResidueRef PanelGraph::residue(Panel P, Panel Q) const {
  for (const Edge& e : neighbours(P)) {
    if (e.to == Q) return e.residue;
  }
  throw Error(Errc::NotAdjacent, describe(P) + " and " + describe(Q) + " are not opposite in a rank 2 residue");
}

// ---------------------------------------------------------------------------
// Parallel panels and compatible paths.

WeylElt delta_panels(const Building& b, Panel P, Panel Q) {
  if (!b.are_parallel(P, Q)) throw Error(Errc::NotParallel, describe(P) + " and " + describe(Q));
  const auto& ms = b.members(P);
  const WeylElt w = b.delta(ms.front(), b.proj(Q, ms.front()));
  for (Chamber x : ms) {
    if (b.delta(x, b.proj(Q, x)) != w) {
      throw Error(Errc::Violation, "distance between parallel panels depends on the chamber");
    }
  }
  if (b.weyl().conjugate_generator(w, panel_type(P)) != panel_type(Q)) {
    throw Error(Errc::Violation, "types of parallel panels are not conjugate by their distance");
  }
  return w;
}

bool is_compatible_path(const PanelGraph& g, const std::vector<Panel>& path) {
  if (path.empty()) return false;
  const Building& b = g.building();
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (std::find(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i), path[i]) !=
        path.begin() + static_cast<std::ptrdiff_t>(i)) {
      return false;
    }
    const ResidueRef R = g.residue(path[i - 1], path[i]);
    if (b.proj(R, path.front()) != path[i - 1]) return false;
  }
  return true;
}

std::vector<Panel> compatible_path(const PanelGraph& g, Panel P, Panel Q) {
  const Building& b = g.building();
  if (!b.are_parallel(P, Q)) throw Error(Errc::NotParallel, describe(P) + " and " + describe(Q));
  const Chamber c = b.base(P);
  std::vector<Panel> reversed{Q};
  Panel cur = Q;
  while (cur != P) {
    const Chamber d = b.proj(cur, c);
    const int here = b.distance(c, d);
    std::optional<Chamber> e;
    for (int u = 0; u < b.rank(); ++u) {
      for (Chamber x : b.panel_of(d, u)) {
        if (x != d && b.distance(c, x) == here - 1 && (!e || x < *e)) e = x;
      }
    }
    if (!e) throw Error(Errc::Violation, "no descent from the projection onto " + describe(cur));
    const ResidueRef R = b.residue(d, cur.type | gen_bit(b.adjacency_type(d, *e)));
    const ResidueRef next = b.proj(R, P);
    if (popcount(next.type) != 1 || !g.adjacent(next, cur)) {
      throw Error(Errc::Violation, "projection onto a rank 2 residue is not an opposite panel");
    }
    reversed.push_back(next);
    cur = next;
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::vector<std::vector<Panel>> all_compatible_paths(const PanelGraph& g, Panel P, Panel Q,
                                                     std::optional<ResidueRef> within) {
  const Building& b = g.building();
  const Chamber c = b.base(P);
  const int goal = b.distance(c, b.proj(Q, c));
  std::vector<std::vector<Panel>> out;
  std::vector<Panel> path{P};
  auto extend = [&](auto&& self) -> void {
    const Panel last = path.back();
    if (last == Q) {
      out.push_back(path);
      return;
    }
    for (const auto& e : g.neighbours(last)) {
      if (within && !b.contains(*within, e.to)) continue;
      if (std::find(path.begin(), path.end(), e.to) != path.end()) continue;
      if (b.proj(e.residue, P) != last) continue;
      // Along a compatible path the distance from P grows at every step.
      if (e.to != Q && b.distance(c, b.proj(e.to, c)) >= goal) continue;
      path.push_back(e.to);
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Panel>> compatible_paths_from(const PanelGraph& g, Panel P,
                                                      std::optional<ResidueRef> within) {
  const Building& b = g.building();
  std::vector<std::vector<Panel>> out;
  std::vector<Panel> path{P};
  auto extend = [&](auto&& self) -> void {
    out.push_back(path);
    const Panel last = path.back();
    for (const auto& e : g.neighbours(last)) {
      if (within && !b.contains(*within, e.to)) continue;
      if (std::find(path.begin(), path.end(), e.to) != path.end()) continue;
      if (b.proj(e.residue, P) != last) continue;
      path.push_back(e.to);
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  return out;
}

int l_c(const PanelGraph& g, Panel P, Panel Q) { return static_cast<int>(compatible_path(g, P, Q).size()) - 1; }

std::pair<Panel, Panel> witness_pair(const Building& b, WeylElt w, int s) {
  const auto t = b.weyl().in_X_s(w, s);
  if (!t) throw Error(Errc::NoWitnessPair, "element is not in X_s");
  for (Chamber x = 0; x < b.size(); ++x) {
    for (Chamber y = 0; y < b.size(); ++y) {
      if (b.delta(x, y) == w) return {b.panel(x, s), b.panel(y, *t)};
    }
  }
  throw Error(Errc::NoWitnessPair, "no chambers at the requested distance");
}

int l_c_of_w(const PanelGraph& g, WeylElt w, int s) {
  const auto [P, Q] = witness_pair(g.building(), w, s);
  return l_c(g, P, Q);
}

// ---------------------------------------------------------------------------
// Panel bijections.

Chamber PanelBijection::operator()(Chamber x) const {
  auto it = std::lower_bound(from.begin(), from.end(), x);
  if (it == from.end() || *it != x) throw Error(Errc::NotInResidue, "chamber outside the source panel");
  return to[static_cast<std::size_t>(it - from.begin())];
}

PanelBijection identity_bijection(const Building& b, Panel P) {
  const auto& ms = b.members(P);
  return {P, P, ms, ms};
}

PanelBijection projection_bijection(const Building& b, Panel P, Panel Q) {
  if (!b.are_parallel(P, Q)) throw Error(Errc::NotParallel, describe(P) + " and " + describe(Q));
  PanelBijection out{P, Q, b.members(P), {}};
  for (Chamber x : out.from) out.to.push_back(b.proj(Q, x));
  return out;
}

PanelBijection compose(const PanelBijection& second, const PanelBijection& first) {
  if (first.target != second.source) throw Error(Errc::PreconditionFailed, "bijections do not chain");
  PanelBijection out{first.source, second.target, first.from, {}};
  for (Chamber y : first.to) out.to.push_back(second(y));
  return out;
}

// ---------------------------------------------------------------------------
// Opposite panels of a codistance.

OppositePanels::OppositePanels(const Codistance& f, const SimpleConnectivityLimits& limits)
    : f_(f), fop_(cotwin::fop(f)), in_fop_(f.building().size(), 0) {
  const Building& b = f.building();
  for (Chamber c : fop_) in_fop_[c] = 1;
  try {
    verdict_ = simply_2_connected(b, fop_, limits);
  } catch (const Error& e) {
    if (e.code() != Errc::NotConnected) throw;
    verdict_ = {Verdict::ProvenNontrivial, "not connected"};
  }
  panels_.resize(b.rank());
  for (int s = 0; s < b.rank(); ++s) {
    std::set<std::uint32_t> idx;
    for (Chamber c : fop_) idx.insert(b.panel_index(c, s));
    for (std::uint32_t i : idx) panels_[s].push_back(make_panel(s, i));
  }
}

const std::vector<Panel>& OppositePanels::panels(int s) const { return panels_[s]; }

bool OppositePanels::contains(Panel P) const {
  const auto& list = panels_[panel_type(P)];
  return std::binary_search(list.begin(), list.end(), P);
}

std::vector<Panel> OppositePanels::panels_at(int s, Chamber c) const {
  std::set<Panel> out;
  for (Chamber x : fop_c(f_, c)) out.insert(building().panel(x, s));
  return {out.begin(), out.end()};
}

Chamber OppositePanels::far_chamber(Panel P) const {
  const WeylElt s = building().weyl().generator(panel_type(P));
  for (Chamber x : building().members(P)) {
    if (f_(x) == s) return x;
  }
  throw Error(Errc::PreconditionFailed, describe(P) + " does not meet the opposite set");
}

void OppositePanels::require_member(Panel P) const {
  if (!contains(P)) throw Error(Errc::NotOpposite, describe(P) + " is not in P_s^op(f)");
}

void OppositePanels::require_simply_connected() const {
  if (verdict_.status != Verdict::ProvenTrivial) {
    throw Error(Errc::HomotopyInconclusive,
                std::string("opposite set not proven simply 2-connected: ") + to_string(verdict_.status) + " (" +
                    verdict_.certificate + ")");
  }
}

Panel OppositePanels::pi(Panel P, WeylElt w) const {
  if (!contains(P)) throw Error(Errc::PreconditionFailed, describe(P) + " is not in P_s^op(f)");
  const int s = panel_type(P);
  const auto t = building().weyl().in_X_s(w, s);
  if (!t) throw Error(Errc::PreconditionFailed, "element is not in X_s");
  const Chamber c = unique_chamber(f_, far_chamber(P), w);
  return building().panel(c, *t);
}

PanelBijection OppositePanels::beta_w(Panel P, Panel Q, WeylElt w) const {
  const Panel mid = pi(P, w);
  if (mid != pi(Q, w)) throw Error(Errc::NotEquivalent, describe(P) + " and " + describe(Q));
  const Building& b = building();
  PanelBijection out{P, Q, b.members(P), {}};
  for (Chamber x : out.from) out.to.push_back(b.proj(Q, b.proj(mid, x)));
  return out;
}

PanelBijection OppositePanels::beta_adjacent(Panel X, Panel Y) const {
  const Building& b = building();
  if (X == Y) return identity_bijection(b, X);
  const int s = panel_type(X);
  for (int t = 0; t < b.rank(); ++t) {
    if (t == s) continue;
    for (Chamber x : b.members(X)) {
      if (!in_fop(x)) continue;
      for (Chamber y : b.panel_of(x, t)) {
        if (y != x && in_fop(y) && b.contains(Y, y)) {
          return beta_w(X, Y, opposite_panels_distance(b.weyl(), s, gen_bit(s) | gen_bit(t)));
        }
      }
    }
  }
  throw Error(Errc::PreconditionFailed, describe(X) + " and " + describe(Y) + " are not adjacent in f^op");
}

PanelBijection OppositePanels::beta_along(Panel P, Panel Q, const Gallery& gamma) const {
  const Building& b = building();
  require_member(P);
  require_member(Q);
  if (!is_gallery(b, gamma, &fop_) || !b.contains(P, gamma.chambers.front()) ||
      !b.contains(Q, gamma.chambers.back())) {
    throw Error(Errc::PreconditionFailed, "not a gallery in f^op between the panels");
  }
  const int s = panel_type(P);
  PanelBijection out = identity_bijection(b, P);
  for (std::size_t i = 1; i < gamma.chambers.size(); ++i) {
    const Panel X = b.panel(gamma.chambers[i - 1], s), Y = b.panel(gamma.chambers[i], s);
    if (X != Y) out = compose(beta_adjacent(X, Y), out);
  }
  return out;
}

std::vector<PanelBijection> OppositePanels::beta_from(Panel P) const {
  require_member(P);
  require_simply_connected();
  const Building& b = building();
  const int s = panel_type(P);
  const auto& list = panels_[s];
  auto position = [&](Panel X) {
    return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), X) - list.begin());
  };
  std::vector<std::optional<PanelBijection>> found(list.size());
  found[position(P)] = identity_bijection(b, P);
  std::deque<Panel> queue{P};
  while (!queue.empty()) {
    const Panel X = queue.front();
    queue.pop_front();
    std::set<Panel> next;
    for (Chamber x : b.members(X)) {
      if (!in_fop(x)) continue;
      for (int t = 0; t < b.rank(); ++t) {
        if (t == s) continue;
        for (Chamber y : b.panel_of(x, t)) {
          if (y != x && in_fop(y)) next.insert(b.panel(y, s));
        }
      }
    }
    for (Panel Y : next) {
      auto& slot = found[position(Y)];
      if (slot) continue;
      slot = compose(beta_adjacent(X, Y), *found[position(X)]);
      queue.push_back(Y);
    }
  }
  std::vector<PanelBijection> out;
  for (auto& slot : found) {
    if (!slot) throw Error(Errc::NotConnected, "opposite set is not connected");
    out.push_back(std::move(*slot));
  }
  return out;
}

PanelBijection OppositePanels::beta(Panel P, Panel Q) const {
  require_member(Q);
  const auto all = beta_from(P);
  const auto& list = panels_[panel_type(P)];
  return all[static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), Q) - list.begin())];
}

ReversePi reverse_pi(const Codistance& f, Panel Q) {
  const Building& b = f.building();
  const WeylTable& W = b.weyl();
  const int t = panel_type(Q);
  const auto& ms = b.members(Q);
  WeylElt w = f(ms.front());
  for (Chamber x : ms) {
    if (W.length(f(x)) < W.length(w)) w = f(x);
  }
  const auto s = W.conjugate_generator(W.inverse(w), t);
  if (!s) throw Error(Errc::PreconditionFailed, "w t w^-1 is not a generator");
  Chamber x = ms.front();
  for (Chamber y : ms) {
    if (f(y) == w) {
      x = y;
      break;
    }
  }
  const auto candidates = fop_c(f, x);
  if (candidates.empty()) throw Error(Errc::PreconditionFailed, "f^op_x is empty");
  return {b.panel(candidates.front(), *s), w};
}

}  // namespace cotwin
