#pragma once

// Exhaustive checks of the panel lemmas and of the bijections between
// opposite panels.  Each returns an empty string on success.

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "cotwin/errors.hpp"
#include "cotwin/panelcalc.hpp"

namespace checks {

using namespace cotwin;

inline std::string panel_str(Panel P) {
  return "(" + std::to_string(panel_type(P)) + "," + std::to_string(P.index) + ")";
}

inline std::string pair_str(const char* what, Panel P, Panel Q) {
  return std::string(what) + " for panels " + panel_str(P) + " " + panel_str(Q);
}

inline std::vector<Panel> all_panels(const Building& b) {
  std::vector<Panel> out;
  for (int s = 0; s < b.rank(); ++s) {
    for (std::uint32_t i = 0; i < b.panel_count(s); ++i) out.push_back(make_panel(s, i));
  }
  return out;
}

// Parallel iff the projection of P1 onto P2 is all of P2.
inline std::string condpar(const Building& b) {
  const auto panels = all_panels(b);
  for (Panel P1 : panels) {
    for (Panel P2 : panels) {
      if (b.are_parallel(P1, P2) != (b.proj(P2, P1) == P2)) return pair_str("parallel criterion fails", P1, P2);
    }
  }
  return {};
}

// delta(P1, P2) is well defined with s2 = w^-1 s1 w; conversely chambers at
// distance w with l(s1 w) = l(w) + 1 and s2 = w^-1 s1 w carry parallel panels.
inline std::string parallelpanels(const Building& b) {
  const WeylTable& W = b.weyl();
  const auto panels = all_panels(b);
  for (Panel P1 : panels) {
    for (Panel P2 : panels) {
      if (!b.are_parallel(P1, P2)) continue;
      try {
        (void)delta_panels(b, P1, P2);
      } catch (const Error& e) {
        return pair_str(e.what(), P1, P2);
      }
    }
  }
  for (Chamber x = 0; x < b.size(); ++x) {
    for (Chamber y = 0; y < b.size(); ++y) {
      const WeylElt w = b.delta(x, y);
      for (int s1 = 0; s1 < b.rank(); ++s1) {
        const auto s2 = W.in_X_s(w, s1);
        if (!s2) continue;
        const Panel P1 = b.panel(x, s1), P2 = b.panel(y, *s2);
        if (!b.are_parallel(P1, P2) || delta_panels(b, P1, P2) != w) {
          return pair_str("converse of the parallel-panel lemma fails", P1, P2);
        }
      }
    }
  }
  return {};
}

// x_J = s r_J lies in X_s and dominates W_J cap X_s; every w in X_s is
// realised from every s-panel.
inline std::string Xs(const Building& b) {
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    for (GenSet J = 1; J <= b.all_gens(); ++J) {
      if (!contains(J, s)) continue;
      const WeylElt xJ = opposite_panels_distance(W, s, J);
      if (!W.in_X_s(xJ, s)) return "x_J not in X_s for s = " + std::to_string(s) + ", J = " + std::to_string(J);
      for (WeylElt w : W.parabolic_elements(J)) {
        if (W.in_X_s(w, s) && !W.prec(w, xJ)) return "element of W_J cap X_s not below x_J";
      }
    }
    for (WeylElt w : W.X_s(s)) {
      const int t = *W.in_X_s(w, s);
      for (std::uint32_t i = 0; i < b.panel_count(s); ++i) {
        const Panel P = make_panel(s, i);
        bool found = false;
        for (Chamber y = 0; y < b.size() && !found; ++y) {
          const Panel Q = b.panel(y, t);
          found = b.are_parallel(P, Q) && delta_panels(b, P, Q) == w;
        }
        if (!found) return "no parallel panel at distance w from " + panel_str(P);
      }
    }
  }
  return {};
}

struct PathCensus {
  // (P, Q) -> lengths of all compatible paths from P to Q
  std::map<std::pair<Panel, Panel>, std::set<std::size_t>> lengths;
};

inline PathCensus census(const PanelGraph& g) {
  PathCensus out;
  for (Panel P : all_panels(g.building())) {
    for (const auto& path : compatible_paths_from(g, P)) out.lengths[{P, path.back()}].insert(path.size() - 1);
  }
  return out;
}

// Compatible paths exist exactly between parallel panels, all have the same
// length, and the constructed path is compatible with that length.
inline std::string comppath_and_compatible(const PanelGraph& g, const PathCensus& c) {
  const Building& b = g.building();
  const auto panels = all_panels(b);
  for (Panel P : panels) {
    for (Panel Q : panels) {
      auto it = c.lengths.find({P, Q});
      const bool has_path = it != c.lengths.end();
      if (has_path != b.are_parallel(P, Q)) return pair_str("compatible path exists iff parallel fails", P, Q);
      if (!has_path) continue;
      if (it->second.size() != 1) return pair_str("compatible paths of different lengths", P, Q);
      const auto path = compatible_path(g, P, Q);
      if (!is_compatible_path(g, path) || path.front() != P || path.back() != Q) {
        return pair_str("constructed path is not compatible", P, Q);
      }
      if (path.size() - 1 != *it->second.begin()) return pair_str("constructed path has the wrong length", P, Q);
    }
  }
  return {};
}

// l_c(P, Q) depends only on delta(P, Q).
inline std::string compatiblew(const PanelGraph& g, const PathCensus& c) {
  const Building& b = g.building();
  std::map<std::pair<int, WeylElt>, std::size_t> seen;
  for (const auto& [pq, lengths] : c.lengths) {
    const auto key = std::make_pair(panel_type(pq.first), delta_panels(b, pq.first, pq.second));
    auto [it, fresh] = seen.emplace(key, *lengths.begin());
    if (!fresh && it->second != *lengths.begin()) return pair_str("l_c differs for equal distance", pq.first, pq.second);
  }
  for (const auto& [key, length] : seen) {
    if (static_cast<std::size_t>(l_c_of_w(g, key.second, key.first)) != length) return "l_c_of_w disagrees";
  }
  return {};
}

// proj_R P is parallel to P and Q for every residue R containing Q, and
// compatible paths P -> proj_R P -> Q (second part inside R) concatenate.
inline std::string projpanels(const PanelGraph& g, std::size_t stride = 1) {
  const Building& b = g.building();
  const auto panels = all_panels(b);
  std::size_t k = 0;
  for (Panel P : panels) {
    for (Panel Q : panels) {
      if (!b.are_parallel(P, Q) || (k++ % stride) != 0) continue;
      for (GenSet J = Q.type; J <= b.all_gens(); ++J) {
        if ((J & Q.type) == 0) continue;
        const ResidueRef R = b.residue(b.base(Q), J);
        const ResidueRef Pp = b.proj(R, P);
        if (popcount(Pp.type) != 1 || !b.are_parallel(Pp, P) || !b.are_parallel(Pp, Q)) {
          return pair_str("projection onto a residue is not a parallel panel", P, Q);
        }
        auto first = compatible_path(g, P, Pp);
        for (const auto& second : all_compatible_paths(g, Pp, Q, R)) {
          auto joined = first;
          joined.insert(joined.end(), second.begin() + 1, second.end());
          if (!is_compatible_path(g, joined)) return pair_str("concatenated path is not compatible", P, Q);
        }
      }
    }
  }
  return {};
}

// Inside a rank 3 residue, two compatible paths between P and Q exist only
// for opposite panels; then there are exactly two, of equal length.
inline std::string comprk3(const PanelGraph& g) {
  const Building& b = g.building();
  for (GenSet J = 1; J <= b.all_gens(); ++J) {
    if (popcount(J) != 3) continue;
    for (std::uint32_t i = 0; i < b.residue_count(J); ++i) {
      const ResidueRef R{J, i};
      std::set<Panel> in_R;
      for (Chamber x : b.members(R)) {
        for (int s : members(J)) in_R.insert(b.panel(x, s));
      }
      for (Panel P : in_R) {
        std::map<Panel, std::vector<std::size_t>> ends;
        for (const auto& path : compatible_paths_from(g, P, R)) ends[path.back()].push_back(path.size() - 1);
        for (const auto& [Q, lengths] : ends) {
          const bool opposite = b.opposite_residues(R, P, Q);
          if (lengths.size() > 1 && !opposite) return pair_str("several compatible paths between non-opposite panels", P, Q);
          if (opposite && lengths.size() != 2) return pair_str("opposite panels without exactly two paths", P, Q);
          if (lengths.size() == 2 && lengths[0] != lengths[1]) return pair_str("two paths of different lengths", P, Q);
        }
      }
    }
  }
  return {};
}

inline std::string panel_lemmas(const PanelGraph& g, std::size_t projpanels_stride = 1) {
  const Building& b = g.building();
  if (auto e = condpar(b); !e.empty()) return "condpar: " + e;
  if (auto e = parallelpanels(b); !e.empty()) return "parallelpanels: " + e;
  if (auto e = Xs(b); !e.empty()) return "Xs: " + e;
  const PathCensus c = census(g);
  if (auto e = comppath_and_compatible(g, c); !e.empty()) return "comppath: " + e;
  if (auto e = compatiblew(g, c); !e.empty()) return "compatiblew: " + e;
  if (auto e = projpanels(g, projpanels_stride); !e.empty()) return "projpanels: " + e;
  if (auto e = comprk3(g); !e.empty()) return "comprk3: " + e;
  return {};
}

// ---------------------------------------------------------------------------
// Codistance side.

// pi(P, w) is the only panel parallel to P at distance w satisfying the
// equivalent conditions a)-d); the conditions agree on every candidate.
inline std::string pi_unique(const OppositePanels& op) {
  const Building& b = op.building();
  const Codistance& f = op.codistance();
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    for (Panel P : op.panels(s)) {
      for (WeylElt w : W.X_s(s)) {
        const int t = *W.in_X_s(w, s);
        const WeylElt wt = W.gen_mult(w, t, Side::Right);
        std::vector<Panel> hits;
        for (std::uint32_t i = 0; i < b.panel_count(t); ++i) {
          const Panel Q = make_panel(t, i);
          if (!b.are_parallel(P, Q) || delta_panels(b, P, Q) != w) continue;
          bool a = false, c_all = true, d_some = false;
          int longer = 0, shorter = 0;
          for (Chamber x : b.members(Q)) {
            a = a || f(x) == w;
            longer += f(x) == wt;
            shorter += f(x) == w;
            const auto at_x = op.panels_at(s, x);
            const bool in = std::binary_search(at_x.begin(), at_x.end(), P);
            c_all = c_all && in;
            d_some = d_some || in;
          }
          const bool bb = longer == 1 && longer + shorter == static_cast<int>(b.members(Q).size());
          if (a != bb || a != c_all || a != d_some) return pair_str("conditions of pi disagree", P, Q);
          if (a) hits.push_back(Q);
        }
        if (hits.size() != 1 || hits.front() != op.pi(P, w)) return pair_str("pi is not the unique solution", P, P);
      }
    }
  }
  return {};
}

// Q = pi(P, w) for the panel returned by reverse_pi, on every eligible Q.
inline std::string revpi(const Codistance& f) {
  const Building& b = f.building();
  OppositePanels op(f);
  for (Panel Q : all_panels(b)) {
    ReversePi r;
    try {
      r = reverse_pi(f, Q);
    } catch (const Error&) {
      continue;
    }
    if (!op.contains(r.panel) || op.pi(r.panel, r.w) != Q) return "reverse_pi fails on " + panel_str(Q);
  }
  return {};
}

// beta_w(Q, P) beta_w(P, Q) = 1 and monotone extension along the order on X_s.
inline std::string beta_w_props(const OppositePanels& op) {
  const WeylTable& W = op.building().weyl();
  for (int s = 0; s < op.building().rank(); ++s) {
    const auto xs = W.X_s(s);
    for (Panel P : op.panels(s)) {
      for (Panel Q : op.panels(s)) {
        for (WeylElt w1 : xs) {
          if (!op.equivalent(P, Q, w1)) continue;
          const auto forward = op.beta_w(P, Q, w1);
          if (!compose(op.beta_w(Q, P, w1), forward).is_identity()) return pair_str("beta_w is not invertible", P, Q);
          for (WeylElt w2 : xs) {
            if (!W.prec(w1, w2)) continue;
            if (!op.equivalent(P, Q, w2) || op.beta_w(P, Q, w2) != forward) {
              return pair_str("extension to a larger element fails", P, Q);
            }
          }
        }
      }
    }
  }
  return {};
}

/// Up to `limit` galleries in f^op from chambers of P to chambers of Q,
/// without repeated chambers and of length at most `max_length`.
inline std::vector<Gallery> fop_galleries(const OppositePanels& op, Panel P, Panel Q, std::size_t max_length,
                                          std::size_t limit) {
  const Building& b = op.building();
  std::vector<Gallery> out;
  Gallery cur;
  auto extend = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    const Chamber last = cur.chambers.back();
    if (b.contains(Q, last)) out.push_back(cur);
    if (cur.length() >= max_length) return;
    for (int t = 0; t < b.rank(); ++t) {
      for (Chamber y : b.panel_of(last, t)) {
        if (y == last || !op.in_fop(y)) continue;
        if (std::find(cur.chambers.begin(), cur.chambers.end(), y) != cur.chambers.end()) continue;
        cur.chambers.push_back(y);
        cur.types.push_back(t);
        self(self);
        cur.chambers.pop_back();
        cur.types.pop_back();
      }
    }
  };
  for (Chamber x : b.members(P)) {
    if (!op.in_fop(x)) continue;
    cur = Gallery{{x}, {}};
    extend(extend);
  }
  return out;
}

// Properties a)-d) of beta, independence of the gallery, and agreement with
// beta_w whenever P and Q are w-equivalent.
inline std::string beta_props(const OppositePanels& op, std::size_t galleries = 3) {
  const Building& b = op.building();
  const Codistance& f = op.codistance();
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    const auto& list = op.panels(s);
    std::vector<std::vector<PanelBijection>> beta;
    for (Panel P : list) beta.push_back(op.beta_from(P));
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Panel P = list[i];
      if (!beta[i][i].is_identity()) return pair_str("beta(P,P) is not the identity", P, P);
      for (std::size_t j = 0; j < list.size(); ++j) {
        const Panel Q = list[j];
        if (!compose(beta[j][i], beta[i][j]).is_identity()) return pair_str("beta(Q,P) beta(P,Q) != 1", P, Q);
        if (beta[i][j](proj_f(f, P)) != proj_f(f, Q)) return pair_str("beta does not map proj_P f to proj_Q f", P, Q);
        for (std::size_t k = 0; k < list.size(); ++k) {
          if (compose(beta[j][k], beta[i][j]) != beta[i][k]) return pair_str("beta is not transitive", P, list[k]);
        }
        if (galleries > 0) {
          const auto gammas = fop_galleries(op, P, Q, 8, galleries);
          for (const auto& gamma : gammas) {
            if (op.beta_along(P, Q, gamma) != beta[i][j]) return pair_str("beta depends on the gallery", P, Q);
          }
        }
        for (WeylElt w : W.X_s(s)) {
          if (op.equivalent(P, Q, w) && op.beta_w(P, Q, w) != beta[i][j]) {
            return pair_str("beta differs from beta_w", P, Q);
          }
        }
      }
    }
  }
  return {};
}

// beta(P, P')(proj_P c) = proj_P' c for c in `chambers` (all when empty)
// and P, P' in P_{s,c}^op(f).
inline std::string main_theorem(const OppositePanels& op, const std::vector<Chamber>& chambers = {},
                                std::size_t* instances = nullptr) {
  const Building& b = op.building();
  std::vector<Chamber> all = chambers;
  if (all.empty()) {
    for (Chamber c = 0; c < b.size(); ++c) all.push_back(c);
  }
  for (int s = 0; s < b.rank(); ++s) {
    const auto& list = op.panels(s);
    std::map<Panel, std::vector<PanelBijection>> beta;
    auto pos = [&](Panel Q) {
      return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), Q) - list.begin());
    };
    for (Chamber c : all) {
      const auto at_c = op.panels_at(s, c);
      for (Panel P : at_c) {
        auto it = beta.find(P);
        if (it == beta.end()) it = beta.emplace(P, op.beta_from(P)).first;
        for (Panel Pp : at_c) {
          if (it->second[pos(Pp)](b.proj(P, c)) != b.proj(Pp, c)) {
            return pair_str("beta(P,P') does not map proj_P c to proj_P' c", P, Pp);
          }
          if (instances) ++*instances;
        }
      }
    }
  }
  return {};
}

// The same identity on the chambers of rank 2 residues R whose shortest
// f-value w lies in X_s with w^-1 s w a type of R.
inline std::string case_ii(const OppositePanels& op, std::size_t* instances = nullptr) {
  const Building& b = op.building();
  const Codistance& f = op.codistance();
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    for (GenSet J = 1; J <= b.all_gens(); ++J) {
      if (popcount(J) != 2) continue;
      for (std::uint32_t i = 0; i < b.residue_count(J); ++i) {
        const ResidueRef R{J, i};
        const auto prof = residue_profile(f, R);
        const auto t = W.in_X_s(f(prof.A_f.front()), s);
        if (!t || !contains(J, *t)) continue;
        for (Chamber c : b.members(R)) {
          const auto at_c = op.panels_at(s, c);
          for (Panel P : at_c) {
            for (Panel Pp : at_c) {
              if (op.beta(P, Pp)(b.proj(P, c)) != b.proj(Pp, c)) {
                return pair_str("rank 2 case of the main identity fails", P, Pp);
              }
              if (instances) ++*instances;
            }
          }
        }
      }
    }
  }
  return {};
}

}  // namespace checks
