#include "cotwin/twinner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

#include "cotwin/errors.hpp"

namespace cotwin {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

std::string describe(Panel P) {
  return "panel (" + std::to_string(panel_type(P)) + ", " + std::to_string(P.index) + ")";
}

std::string member_str(std::size_t g) { return "member " + std::to_string(g); }

}  // namespace

std::vector<Panel> opposite_panels(const Codistance& f, int s) {
  const Building& b = f.building();
  std::vector<Panel> out;
  for (Chamber c : fop(f)) out.push_back(b.panel(c, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool s_adjacent(const Codistance& f, const Codistance& g, int s) {
  if (f.building_ptr() != g.building_ptr()) throw Error(Errc::BuildingMismatch, "codistances on different buildings");
  return opposite_panels(f, s) == opposite_panels(g, s);
}

Codistance adjacent_codistance(const OppositePanels& op, int s, Panel Ptilde, Chamber p, std::size_t choice) {
  const Codistance& f = op.codistance();
  const Building& b = op.building();
  const WeylTable& W = b.weyl();
  if (Ptilde.type != gen_bit(s) || !op.contains(Ptilde)) {
    throw Error(Errc::PreconditionFailed, describe(Ptilde) + " is not in P_s^op(f)");
  }
  if (!b.contains(Ptilde, p) || !op.in_fop(p)) {
    throw Error(Errc::PreconditionFailed, "chamber " + std::to_string(p) + " is not in the panel and in f^op");
  }

  const auto& list = op.panels(s);
  const auto betas = op.beta_from(Ptilde);
  std::map<Panel, Chamber> marked;  // beta(p) cap P
  for (std::size_t i = 0; i < list.size(); ++i) marked.emplace(list[i], betas[i](p));

  std::vector<WeylElt> values(b.size());
  for (Chamber c = 0; c < b.size(); ++c) {
    const auto at_c = op.panels_at(s, c);
    if (at_c.empty()) throw Error(Errc::Violation, "P_{s,c}^op(f) is empty for chamber " + std::to_string(c));
    const Panel P = at_c[choice % at_c.size()];
    const Chamber pc = b.proj(P, c);
    const bool flip = pc == op.far_chamber(P) || pc == marked.at(P);
    values[c] = flip ? W.gen_mult(f(c), s, Side::Left) : f(c);
  }

  Codistance g(f.building_ptr(), std::move(values));
  if (const auto rep = validate_codistance(g); !rep.ok) {
    throw Error(Errc::Violation, "adjacent codistance fails the panel axiom: " + rep.detail);
  }
  for (const auto& [P, x] : marked) {
    if (proj_f(g, P) != x) throw Error(Errc::Violation, "proj_P g differs from beta(p) on " + describe(P));
  }
  return g;
}

// ---------------------------------------------------------------------------
// The atlas.

std::optional<std::size_t> CodistanceAtlas::find(const Codistance& f) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == f) return i;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> CodistanceAtlas::residue(std::size_t g, GenSet J) const {
  std::vector<char> seen(size(), 0);
  std::vector<std::uint32_t> out{static_cast<std::uint32_t>(g)};
  seen[g] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t h = out[i];
    for (int s : cotwin::members(J)) {
      for (std::uint32_t k : panels[s][panel_index[s][h]]) {
        if (!seen[k]) {
          seen[k] = 1;
          out.push_back(k);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CodistanceAtlas atlas_component(const Codistance& f, const AtlasLimits& limits) {
  const Building& b = f.building();
  const int k = b.rank();
  CodistanceAtlas atlas;
  atlas.building = f.building_ptr();
  atlas.panels.resize(k);
  atlas.panel_index.resize(k);

  std::unordered_map<Codistance, std::uint32_t, CodistanceHash> index;
  auto add = [&](Codistance g) {
    auto [it, fresh] = index.emplace(g, static_cast<std::uint32_t>(atlas.members.size()));
    if (fresh) {
      if (atlas.members.size() >= limits.cap) {
        throw Error(Errc::CapExceeded, "atlas exceeds " + std::to_string(limits.cap) + " members");
      }
      atlas.members.push_back(std::move(g));
      for (auto& idx : atlas.panel_index) idx.push_back(kUnassigned);
    }
    return it->second;
  };
  add(f);

  for (std::size_t g = 0; g < atlas.members.size(); ++g) {
    std::optional<OppositePanels> op;
    for (int s = 0; s < k; ++s) {
      if (atlas.panel_index[s][g] != kUnassigned) continue;
      if (!op) op.emplace(atlas.members[g], limits.homotopy);
      const auto& candidates = op->panels(s);
      if (candidates.empty()) throw Error(Errc::Violation, "P_s^op is empty for " + member_str(g));
      const Panel Ptilde = candidates.front();
      std::vector<std::uint32_t> cls{static_cast<std::uint32_t>(g)};
      for (Chamber p : b.members(Ptilde)) {
        if (!op->in_fop(p)) continue;
        cls.push_back(add(adjacent_codistance(*op, s, Ptilde, p)));
      }
      std::sort(cls.begin(), cls.end());
      if (std::adjacent_find(cls.begin(), cls.end()) != cls.end()) {
        throw Error(Errc::Violation, "repeated codistance in the s-panel of " + member_str(g));
      }
      const auto id = static_cast<std::uint32_t>(atlas.panels[s].size());
      for (std::uint32_t h : cls) {
        if (atlas.panel_index[s][h] != kUnassigned) {
          throw Error(Errc::Violation, member_str(h) + " lies in two s-panels of the atlas");
        }
        atlas.panel_index[s][h] = id;
      }
      atlas.panels[s].push_back(std::move(cls));
    }
  }
  return atlas;
}

CodistanceAtlas make_atlas(BuildingPtr b, std::vector<Codistance> members,
                           const std::vector<Building::PanelList>& panels) {
  if (static_cast<int>(panels.size()) != b->rank()) throw Error(Errc::Violation, "one panel list per type expected");
  CodistanceAtlas atlas;
  atlas.building = std::move(b);
  atlas.members = std::move(members);
  const std::size_t n = atlas.members.size();
  for (const auto& g : atlas.members) {
    if (g.building_ptr() != atlas.building) throw Error(Errc::BuildingMismatch, "member on another building");
  }
  atlas.panels.resize(panels.size());
  atlas.panel_index.assign(panels.size(), std::vector<std::uint32_t>(n, kUnassigned));
  for (std::size_t s = 0; s < panels.size(); ++s) {
    for (const auto& p : panels[s]) {
      std::vector<std::uint32_t> cls(p.begin(), p.end());
      std::sort(cls.begin(), cls.end());
      const auto id = static_cast<std::uint32_t>(atlas.panels[s].size());
      for (std::uint32_t h : cls) {
        if (h >= n || atlas.panel_index[s][h] != kUnassigned) {
          throw Error(Errc::Violation, "s-panels do not partition the members at " + member_str(h));
        }
        atlas.panel_index[s][h] = id;
      }
      atlas.panels[s].push_back(std::move(cls));
    }
    if (std::count(atlas.panel_index[s].begin(), atlas.panel_index[s].end(), kUnassigned) != 0) {
      throw Error(Errc::Violation, "some member lies in no s-panel");
    }
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// alpha.

AlphaReport alpha_check(const CodistanceAtlas& atlas, std::size_t g, GenSet J, std::optional<ResidueRef> R) {
  const Building& b = *atlas.building;
  const WeylTable& W = b.weyl();
  const Codistance& fg = atlas.members.at(g);
  if (!R) {
    const auto opp = fop(fg);
    if (opp.empty()) throw Error(Errc::PreconditionFailed, member_str(g) + " has empty f^op");
    R = b.residue(opp.front(), J);
  }
  if (R->type != J) throw Error(Errc::PreconditionFailed, "residue type differs from J");
  if (!residue_in_fop(fg, *R)) throw Error(Errc::PreconditionFailed, "residue is not in g^op");

  AlphaReport out;
  out.residue = *R;
  out.members = atlas.residue(g, J);
  const WeylElt rJ = W.longest_element(J);
  for (std::uint32_t h : out.members) out.image.push_back(proj_f(atlas.members[h], *R));

  auto fail = [&](const std::string& what) {
    throw Error(Errc::Violation, "alpha for " + member_str(g) + ", J = " + std::to_string(J) + ": " + what);
  };
  auto sorted = out.image;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("not injective");
  auto chambers = b.members(*R);
  std::sort(chambers.begin(), chambers.end());
  if (sorted != chambers) fail("not onto the residue");

  for (std::size_t i = 0; i < out.members.size(); ++i) {
    for (std::size_t j = i + 1; j < out.members.size(); ++j) {
      for (int s : members(J)) {
        const int t = *W.conjugate_generator(rJ, s);
        if (atlas.adjacent(out.members[i], out.members[j], s) != b.adjacent(out.image[i], out.image[j], t)) {
          fail("adjacency not preserved between " + member_str(out.members[i]) + " and " +
               member_str(out.members[j]));
        }
      }
    }
    const Codistance& h = atlas.members[out.members[i]];
    for (Chamber c : chambers) {
      if ((h(c) == W.identity()) != (b.delta(out.image[i], c) == rJ)) {
        fail("opposition differs at chamber " + std::to_string(c) + " for " + member_str(out.members[i]));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly.

const std::vector<std::string>& twin_check_names() {
  static const std::vector<std::string> names{
      "plus_building", "s_adjacency", "chamber_system", "adjacency_lemma", "adjop",
      "unicity",       "alpha",       "Tw1",            "Tw2",             "Tw3",
      "local_opposition", "seed",     "lemma_plus_star", "diagram",        "spherical_consistency"};
  return names;
}

bool TwinAssembly::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const TwinCheck& c) { return c.ok; });
}

const TwinCheck* TwinAssembly::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void TwinAssembly::require_ok() const {
  for (const auto& c : checks) {
    if (!c.ok) throw Error(Errc::Violation, c.name + ": " + c.detail);
  }
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::vector<TwinCheck>& out) : out_(out) {}

  TwinCheck& open(const std::string& name) {
    out_.push_back(TwinCheck{name, true, 0, {}});
    return out_.back();
  }

  static void expect(TwinCheck& c, bool cond, const std::function<std::string()>& why) {
    ++c.instances;
    if (!cond && c.ok) {
      c.ok = false;
      c.detail = why();
    }
  }

 private:
  std::vector<TwinCheck>& out_;
};

/// Girth and diameter of the incidence graph of the s- and t-panels of R.
std::pair<int, int> polygon_shape(const Building& b, ResidueRef R, int s, int t) {
  std::map<ResidueRef, std::size_t> vertex;
  std::vector<std::vector<std::size_t>> adj;
  auto id = [&](ResidueRef P) {
    auto [it, fresh] = vertex.emplace(P, adj.size());
    if (fresh) adj.emplace_back();
    return it->second;
  };
  for (Chamber c : b.members(R)) {
    const auto u = id(b.panel(c, s)), v = id(b.panel(c, t));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  int girth = std::numeric_limits<int>::max(), diameter = 0;
  for (std::size_t root = 0; root < adj.size(); ++root) {
    std::vector<int> dist(adj.size(), -1);
    std::vector<std::size_t> parent(adj.size(), root);
    std::deque<std::size_t> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[u]);
      for (auto v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (parent[u] != v) {
          girth = std::min(girth, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  return {girth, diameter};
}

}  // namespace

TwinAssembly assemble_twin(CodistanceAtlas atlas) {
  TwinAssembly out;
  out.minus = atlas.building;
  out.atlas = std::move(atlas);
  const CodistanceAtlas& A = out.atlas;
  const Building& bm = *out.minus;
  const WeylTable& W = bm.weyl();
  const int k = bm.rank();
  const std::size_t n = A.size(), m = bm.size();

  std::vector<Building::PanelList> lists(k);
  for (int s = 0; s < k; ++s) {
    for (const auto& cls : A.panels[s]) lists[s].emplace_back(cls.begin(), cls.end());
  }
  try {
    out.plus = std::make_shared<const Building>(bm.name() + "_plus", bm.weyl_ptr(), n, std::move(lists));
  } catch (const Error& e) {
    throw Error(Errc::BuildingInvalid, std::string("atlas is not a chamber system: ") + e.what());
  }
  const auto brep = validate_building(*out.plus);
  if (!brep.ok) throw Error(Errc::BuildingInvalid, "atlas is not a building: " + brep.axiom + " " + brep.detail);
  const Building& bp = *out.plus;

  out.checks.reserve(twin_check_names().size());  // references into checks stay valid
  Recorder rec(out.checks);
  TwinCheck& plus_building = rec.open("plus_building");
  plus_building.instances = n;

  // Per member: P_s^op and f^op.
  std::vector<std::vector<std::vector<Panel>>> opp_panels(n);
  std::vector<std::vector<Chamber>> opp(n);
  for (std::size_t g = 0; g < n; ++g) {
    opp[g] = fop(A.members[g]);
    for (int s = 0; s < k; ++s) opp_panels[g].push_back(opposite_panels(A.members[g], s));
  }

  {
    TwinCheck& c = rec.open("s_adjacency");
    for (int s = 0; s < k; ++s) {
      for (const auto& cls : A.panels[s]) {
        for (std::uint32_t h : cls) {
          Recorder::expect(c, opp_panels[h][s] == opp_panels[cls.front()][s],
                           [&] { return member_str(h) + " and " + member_str(cls.front()) + " differ in P_s^op"; });
        }
      }
    }
  }
  {
    TwinCheck& c = rec.open("chamber_system");
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = g + 1; h < n; ++h) {
        int common = 0;
        for (int s = 0; s < k; ++s) common += A.adjacent(g, h, s);
        Recorder::expect(c, common <= 1, [&] { return member_str(g) + " and " + member_str(h) + " share two types"; });
      }
    }
  }
  {
    TwinCheck& adjacency = rec.open("adjacency_lemma");
    TwinCheck& adjop = rec.open("adjop");
    TwinCheck& unicity = rec.open("unicity");
    for (std::size_t g = 0; g < n; ++g) {
      const Codistance& f = A.members[g];
      for (int s = 0; s < k; ++s) {
        const auto& cls = A.panels[s][A.panel_index[s][g]];
        for (GenSet J = 1; J <= bm.all_gens(); ++J) {
          if (!contains(J, s)) continue;
          const WeylElt rJ = W.longest_element(J);
          const int t = *W.conjugate_generator(rJ, s);
          std::vector<ResidueRef> residues;
          for (Chamber x : opp[g]) residues.push_back(bm.residue(x, J));
          std::sort(residues.begin(), residues.end());
          residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
          for (const ResidueRef& R : residues) {
            const Chamber d = proj_f(f, R);
            std::vector<Chamber> projections;
            for (std::uint32_t h : cls) {
              const Codistance& gh = A.members[h];
              const bool in = residue_in_fop(gh, R);
              Recorder::expect(adjop, in, [&] { return "residue leaves g^op for " + member_str(h); });
              if (!in) continue;
              const Chamber e = proj_f(gh, R);
              projections.push_back(e);
              if (h == g) continue;
              Recorder::expect(adjacency, e != d && bm.adjacent(d, e, t), [&] {
                return "projections of " + member_str(g) + " and " + member_str(h) + " are not r_J s r_J-adjacent";
              });
            }
            std::sort(projections.begin(), projections.end());
            Recorder::expect(unicity, std::adjacent_find(projections.begin(), projections.end()) == projections.end(),
                             [&] { return "two members s-adjacent to " + member_str(g) + " share proj_R"; });
          }
        }
      }
    }
  }
  {
    TwinCheck& c = rec.open("alpha");
    for (std::size_t g = 0; g < n; ++g) {
      for (GenSet J = 0; J <= bm.all_gens(); ++J) {
        std::string why;
        try {
          (void)alpha_check(A, g, J);
        } catch (const Error& e) {
          why = e.what();
        }
        Recorder::expect(c, why.empty(), [&] { return why; });
      }
    }
  }

  // delta*(g, c) = g(c) and delta*(c, g) = g(c)^-1.
  auto star_pm = [&](std::size_t g, Chamber c) { return A.members[g](c); };
  auto star_mp = [&](Chamber c, std::size_t g) { return W.inverse(A.members[g](c)); };
  {
    TwinCheck& c1 = rec.open("Tw1");
    TwinCheck& c2 = rec.open("Tw2");
    TwinCheck& c3 = rec.open("Tw3");
    for (std::size_t g = 0; g < n; ++g) {
      for (Chamber c = 0; c < m; ++c) {
        const auto pair = [&] { return "pair (" + member_str(g) + ", chamber " + std::to_string(c) + ")"; };
        Recorder::expect(c1, star_mp(c, g) == W.inverse(star_pm(g, c)), pair);
        // Fixed chamber of B_+, moving in B_-.
        const WeylElt w = star_pm(g, c);
        for (int s = 0; s < k; ++s) {
          const WeylElt ws = W.gen_mult(w, s, Side::Right);
          bool exists = false;
          for (Chamber d : bm.panel_of(c, s)) {
            if (d == c) continue;
            if (W.length(ws) < W.length(w)) Recorder::expect(c2, star_pm(g, d) == ws, pair);
            exists = exists || star_pm(g, d) == ws;
          }
          Recorder::expect(c3, exists, pair);
        }
        // Fixed chamber of B_-, moving in B_+.
        const WeylElt v = star_mp(c, g);
        for (int s = 0; s < k; ++s) {
          const WeylElt vs = W.gen_mult(v, s, Side::Right);
          bool exists = false;
          for (std::uint32_t h : A.panels[s][A.panel_index[s][g]]) {
            if (h == g) continue;
            if (W.length(vs) < W.length(v)) Recorder::expect(c2, star_mp(c, h) == vs, pair);
            exists = exists || star_mp(c, h) == vs;
          }
          Recorder::expect(c3, exists, pair);
        }
      }
    }
  }
  {
    TwinCheck& c = rec.open("local_opposition");
    for (std::size_t g = 0; g < n; ++g) {
      for (Chamber x : opp[g]) {
        for (GenSet J = 1; J <= bm.all_gens(); ++J) {
          if (popcount(J) > 2) continue;
          std::string why;
          try {
            (void)alpha_check(A, g, J, bm.residue(x, J));
          } catch (const Error& e) {
            why = e.what();
          }
          Recorder::expect(c, why.empty(), [&] { return why; });
        }
      }
    }
  }
  {
    TwinCheck& c = rec.open("seed");
    const Codistance& seed = A.members[A.origin];
    for (Chamber x = 0; x < m; ++x) {
      Recorder::expect(c, star_pm(A.origin, x) == seed(x), [&] { return "chamber " + std::to_string(x); });
    }
    Recorder::expect(c, fop(seed) == opp[A.origin], [] { return "opposite sets differ"; });
  }
  {
    TwinCheck& c = rec.open("lemma_plus_star");
    const WeylElt one = W.identity();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const WeylElt d = bp.delta(static_cast<Chamber>(x), static_cast<Chamber>(y));
        for (Chamber z = 0; z < m; ++z) {
          if (star_pm(x, z) != d) continue;
          Recorder::expect(c, star_pm(y, z) == one, [&] {
            return "plus side: " + member_str(y) + " not opposite chamber " + std::to_string(z);
          });
        }
      }
    }
    for (Chamber x = 0; x < m; ++x) {
      for (Chamber y = 0; y < m; ++y) {
        const WeylElt d = bm.delta(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          if (star_mp(x, z) != d) continue;
          Recorder::expect(c, star_pm(z, y) == one, [&] {
            return "minus side: chamber " + std::to_string(y) + " not opposite " + member_str(z);
          });
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        Recorder::expect(c, opp[x] != opp[y], [&] { return member_str(x) + " and " + member_str(y) + " share x^op"; });
      }
    }
    std::vector<std::vector<std::size_t>> minus_op(m);
    for (std::size_t g = 0; g < n; ++g) {
      for (Chamber x : opp[g]) minus_op[x].push_back(g);
    }
    for (Chamber x = 0; x < m; ++x) {
      for (Chamber y = x + 1; y < m; ++y) {
        Recorder::expect(c, minus_op[x] != minus_op[y],
                         [&] { return "chambers " + std::to_string(x) + " and " + std::to_string(y) + " share x^op"; });
      }
    }
  }
  {
    TwinCheck& c = rec.open("diagram");
    for (int s = 0; s < k; ++s) {
      for (int t = s + 1; t < k; ++t) {
        const int mst = W.matrix().entry(s, t);
        const GenSet J = gen_bit(s) | gen_bit(t);
        for (std::uint32_t i = 0; i < bp.residue_count(J); ++i) {
          const auto [girth, diameter] = polygon_shape(bp, ResidueRef{J, i}, s, t);
          Recorder::expect(c, girth == 2 * mst && diameter == mst, [&] {
            return "residue of type " + std::to_string(J) + " has girth " + std::to_string(girth) + " and diameter " +
                   std::to_string(diameter);
          });
        }
      }
    }
  }
  {
    TwinCheck& c = rec.open("spherical_consistency");
    const GenSet S = bm.all_gens();
    const WeylElt r = W.longest_element(S);
    std::string why;
    AlphaReport rep;
    try {
      rep = alpha_check(A, A.origin, S, ResidueRef{S, 0});
    } catch (const Error& e) {
      why = e.what();
    }
    Recorder::expect(c, why.empty(), [&] { return why; });
    if (why.empty()) {
      std::vector<Chamber> alpha(n);
      for (std::size_t i = 0; i < rep.members.size(); ++i) alpha[rep.members[i]] = rep.image[i];
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          const WeylElt want = W.mul(W.mul(r, bp.delta(static_cast<Chamber>(x), static_cast<Chamber>(y))), r);
          Recorder::expect(c, bm.delta(alpha[x], alpha[y]) == want,
                           [&] { return "alpha does not twist distances for " + member_str(x) + ", " + member_str(y); });
        }
      }
    }
  }
  return out;
}

}  // namespace cotwin
