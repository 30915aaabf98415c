#include "cotwin/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cotwin/errors.hpp"
#include "presentation.hpp"

namespace cotwin {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenTrivial: return "ProvenTrivial";
    case Verdict::ProvenNontrivial: return "ProvenNontrivial";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

bool in_subset(const std::vector<Chamber>* subset, Chamber c) {
  return subset == nullptr || std::binary_search(subset->begin(), subset->end(), c);
}

GenSet type_union(const std::vector<int>& types, std::size_t from, std::size_t to) {
  GenSet J = 0;
  for (std::size_t i = from; i < to; ++i) J |= gen_bit(types[i]);
  return J;
}

/// Chamber sequence without repetitions; the types are implied.
using Path = std::vector<Chamber>;

Path strip(const Gallery& g) {
  Path p;
  for (Chamber c : g.chambers) {
    if (p.empty() || p.back() != c) p.push_back(c);
  }
  return p;
}

/// Shortest path from x to y inside (J-residue of x) cap subset, taking the
/// smallest chamber at every step.  Empty when y is unreachable.
Path shortest_in_residue(const Building& b, Chamber x, Chamber y, GenSet J, const std::vector<Chamber>* subset) {
  if (x == y) return {x};
  const ResidueRef R = b.residue(x, J);
  if (!b.contains(R, y)) return {};
  // Backward BFS from y gives distances; then walk forward from x greedily.
  std::unordered_map<Chamber, int> dist{{y, 0}};
  std::deque<Chamber> queue{y};
  auto neighbours = [&](Chamber c) {
    std::vector<Chamber> out;
    for (int s : members(J)) {
      for (Chamber d : b.panel_of(c, s)) {
        if (d != c && in_subset(subset, d)) out.push_back(d);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  while (!queue.empty() && !dist.count(x)) {
    const Chamber c = queue.front();
    queue.pop_front();
    for (Chamber d : neighbours(c)) {
      if (dist.emplace(d, dist[c] + 1).second) queue.push_back(d);
    }
  }
  if (!dist.count(x)) return {};
  Path p{x};
  while (p.back() != y) {
    const int here = dist[p.back()];
    for (Chamber d : neighbours(p.back())) {
      auto it = dist.find(d);
      if (it != dist.end() && it->second == here - 1) {
        p.push_back(d);
        break;
      }
    }
  }
  return p;
}

/// Paths reachable by one move that replaces a rank <= 2 stretch by the
/// shortest gallery of a rank 2 (or rank 1) residue with the same ends.
std::vector<Path> moves(const Building& b, const Path& p, const std::vector<Chamber>* subset) {
  std::vector<Path> out;
  const std::size_t n = p.size();
  std::vector<GenSet> pairs;
  for (int s = 0; s < b.rank(); ++s) {
    pairs.push_back(gen_bit(s));
    for (int t = s + 1; t < b.rank(); ++t) pairs.push_back(gen_bit(s) | gen_bit(t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    GenSet used = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      used |= gen_bit(b.adjacency_type(p[j - 1], p[j]));
      if (popcount(used) > 2) break;
      for (GenSet J : pairs) {
        if ((used & ~J) != 0) continue;
        Path mid = shortest_in_residue(b, p[i], p[j], J, subset);
        if (mid.empty() || mid.size() > j - i + 1) continue;
        if (mid.size() == j - i + 1 && std::equal(mid.begin(), mid.end(), p.begin() + static_cast<std::ptrdiff_t>(i))) {
          continue;
        }
        Path q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
        q.insert(q.end(), mid.begin(), mid.end());
        q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(j) + 1, p.end());
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

}  // namespace

bool is_gallery(const Building& b, const Gallery& g, const std::vector<Chamber>* subset) {
  if (g.chambers.empty() || g.chambers.size() != g.types.size() + 1) return false;
  for (Chamber c : g.chambers) {
    if (c >= b.size() || !in_subset(subset, c)) return false;
  }
  for (std::size_t i = 0; i < g.types.size(); ++i) {
    const int s = g.types[i];
    if (s < 0 || s >= b.rank() || !b.adjacent(g.chambers[i], g.chambers[i + 1], s)) return false;
  }
  return true;
}

bool elementary_2_homotopic(const Gallery& G, const Gallery& H) {
  const std::size_t ng = G.chambers.size(), nh = H.chambers.size();
  if (ng == 0 || nh == 0) return false;
  if (G.chambers.front() != H.chambers.front() || G.chambers.back() != H.chambers.back()) return false;
  // Longest common prefix and suffix, counted in chambers (the shared
  // chamber at the junction belongs to both X and the middle part).
  std::size_t pmax = 1;
  while (pmax < ng && pmax < nh && G.chambers[pmax] == H.chambers[pmax] && G.types[pmax - 1] == H.types[pmax - 1]) {
    ++pmax;
  }
  std::size_t smax = 1;
  while (smax < ng && smax < nh && G.chambers[ng - 1 - smax] == H.chambers[nh - 1 - smax] &&
         G.types[ng - 1 - smax] == H.types[nh - 1 - smax]) {
    ++smax;
  }
  for (std::size_t p = 1; p <= pmax; ++p) {
    for (std::size_t s = 1; s <= smax; ++s) {
      if (p + s > ng + 1 || p + s > nh + 1) continue;
      // Middle parts G[p-1 .. ng-s], H[p-1 .. nh-s].
      if (G.chambers[p - 1] != H.chambers[p - 1] || G.chambers[ng - s] != H.chambers[nh - s]) continue;
      const GenSet J = type_union(G.types, p - 1, ng - s) | type_union(H.types, p - 1, nh - s);
      if (popcount(J) <= 2) return true;
    }
  }
  return false;
}

TrivialityVerdict two_homotopic(const Building& b, const Gallery& G, const Gallery& H, std::size_t bound,
                                const std::vector<Chamber>* subset) {
  if (G.chambers.empty() || H.chambers.empty() || G.chambers.front() != H.chambers.front() ||
      G.chambers.back() != H.chambers.back()) {
    throw Error(Errc::EndpointMismatch, "galleries do not share their endpoints");
  }
  const Path start = strip(G), goal = strip(H);
  if (start == goal) return {Verdict::ProvenTrivial, "identical up to repetitions"};

  // Bidirectional breadth-first search; the move set is closed under reversal
  // only up to length, so both sides expand.
  std::map<Path, int> side{{start, 0}, {goal, 1}};
  std::deque<Path> queue{start, goal};
  while (!queue.empty()) {
    const Path p = queue.front();
    queue.pop_front();
    const int from = side[p];
    for (Path& q : moves(b, p, subset)) {
      auto it = side.find(q);
      if (it != side.end()) {
        if (it->second != from) {
          return {Verdict::ProvenTrivial, std::to_string(side.size()) + " galleries explored"};
        }
        continue;
      }
      if (side.size() >= bound) {
        return {Verdict::Inconclusive, "state bound " + std::to_string(bound) + " reached"};
      }
      side.emplace(q, from);
      queue.push_back(std::move(q));
    }
  }
  return {Verdict::Inconclusive, "move set exhausted after " + std::to_string(side.size()) + " galleries"};
}

bool connected(const Building& b, const std::vector<Chamber>& subset_in, GenSet gens) {
  if (subset_in.size() <= 1) return true;
  std::vector<Chamber> subset = subset_in;
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<std::size_t> parent(subset.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = subset.size();
  for (int s : members(gens)) {
    // Group subset members by their s-panel.
    std::unordered_map<std::uint32_t, std::size_t> first;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      auto [it, fresh] = first.emplace(b.panel_index(subset[i], s), i);
      if (fresh) continue;
      const std::size_t a = find(it->second), c = find(i);
      if (a != c) {
        parent[a] = c;
        --components;
      }
    }
  }
  return components == 1;
}

TrivialityVerdict simply_2_connected(const Building& b, const std::vector<Chamber>& subset_in,
                                     const SimpleConnectivityLimits& limits) {
  std::vector<Chamber> subset = subset_in;
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty()) throw Error(Errc::NotConnected, "empty chamber set");
  const std::size_t nv = subset.size();

  // 1-skeleton: inside each panel, the members of the subset form a path.
  struct Edge {
    std::size_t a, c;
    int type;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> incident(nv);
  for (int s = 0; s < b.rank(); ++s) {
    std::map<std::uint32_t, std::vector<std::size_t>> by_panel;
    for (std::size_t v = 0; v < nv; ++v) by_panel[b.panel_index(subset[v], s)].push_back(v);
    for (const auto& [panel, vs] : by_panel) {
      for (std::size_t k = 1; k < vs.size(); ++k) {
        incident[vs[k - 1]].push_back(edges.size());
        incident[vs[k]].push_back(edges.size());
        edges.push_back({vs[k - 1], vs[k], s});
      }
    }
  }

  // Spanning tree; the other edges generate the edge-path group.
  std::vector<char> tree(edges.size(), 0), seen(nv, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : incident[v]) {
      const std::size_t w = edges[e].a == v ? edges[e].c : edges[e].a;
      if (seen[w]) continue;
      seen[w] = 1;
      tree[e] = 1;
      ++reached;
      queue.push_back(w);
    }
  }
  if (reached != nv) {
    throw Error(Errc::NotConnected, "chamber set of size " + std::to_string(nv) + " is not connected");
  }
  std::vector<int> generator(edges.size(), -1);
  int generators = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!tree[e]) generator[e] = generators++;
  }
  auto letter = [&](std::size_t e, std::size_t from, detail::Word& w) {
    if (generator[e] < 0) return;
    w.push_back(edges[e].a == from ? generator[e] + 1 : -(generator[e] + 1));
  };

  // 2-cells: fundamental cycles of (rank 2 residue) cap subset.
  detail::Presentation pres;
  pres.generators = generators;
  for (int s = 0; s < b.rank(); ++s) {
    for (int t = s + 1; t < b.rank(); ++t) {
      const GenSet J = gen_bit(s) | gen_bit(t);
      std::map<std::uint32_t, std::vector<std::size_t>> by_residue;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].type == s || edges[e].type == t) {
          by_residue[b.residue(subset[edges[e].a], J).index].push_back(e);
        }
      }
      for (const auto& [index, local] : by_residue) {
        std::map<std::size_t, std::vector<std::size_t>> adj;
        for (std::size_t e : local) {
          adj[edges[e].a].push_back(e);
          adj[edges[e].c].push_back(e);
        }
        std::map<std::size_t, std::size_t> parent_edge;  // vertex -> edge towards root
        std::map<std::size_t, std::size_t> depth;
        std::set<std::size_t> local_tree;
        for (const auto& [root, unused] : adj) {
          if (depth.count(root)) continue;
          depth[root] = 0;
          std::deque<std::size_t> q{root};
          while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop_front();
            for (std::size_t e : adj[v]) {
              const std::size_t w = edges[e].a == v ? edges[e].c : edges[e].a;
              if (depth.count(w)) continue;
              depth[w] = depth[v] + 1;
              parent_edge[w] = e;
              local_tree.insert(e);
              q.push_back(w);
            }
          }
        }
        auto other = [&](std::size_t e, std::size_t v) { return edges[e].a == v ? edges[e].c : edges[e].a; };
        for (std::size_t e : local) {
          if (local_tree.count(e)) continue;
          // Loop: a -> (tree) -> meeting point <- (tree) <- c, closed by e.
          detail::Word up_a, up_c;
          std::size_t x = edges[e].a, y = edges[e].c;
          while (x != y) {
            if (depth[x] >= depth[y]) {
              letter(parent_edge[x], x, up_a);
              x = other(parent_edge[x], x);
            } else {
              letter(parent_edge[y], y, up_c);
              y = other(parent_edge[y], y);
            }
          }
          // Word: e (a -> c), then c up to the meeting point, then down to a.
          detail::Word w;
          letter(e, edges[e].a, w);
          w.insert(w.end(), up_c.begin(), up_c.end());
          for (auto it = up_a.rbegin(); it != up_a.rend(); ++it) w.push_back(-*it);
          pres.relators.push_back(std::move(w));
        }
      }
    }
  }

  const detail::Presentation simple = detail::simplify(std::move(pres));
  if (simple.generators == 0) return {Verdict::ProvenTrivial, "presentation collapses to no generators"};
  if (const auto ab = detail::abelianise(simple); ab && !ab->trivial()) {
    std::string cert = "H1 =";
    const char* sep = " ";
    if (ab->free_rank > 0) {
      cert += sep + std::string("Z^") + std::to_string(ab->free_rank);
      sep = " x ";
    }
    for (std::int64_t d : ab->torsion) {
      cert += sep + std::string("Z/") + std::to_string(d);
      sep = " x ";
    }
    return {Verdict::ProvenNontrivial, cert};
  }
  const auto order = detail::enumerate_cosets(simple, limits.max_cosets);
  if (!order) {
    return {Verdict::Inconclusive, "coset enumeration exceeded " + std::to_string(limits.max_cosets) + " cosets"};
  }
  if (*order == 1) return {Verdict::ProvenTrivial, "1 coset"};
  return {Verdict::ProvenNontrivial, "group of order " + std::to_string(*order)};
}

std::vector<Chamber> opposite_set(const Building& b, ResidueRef R, Chamber x) {
  if (!b.contains(R, x)) throw Error(Errc::NotInResidue, "chamber " + std::to_string(x) + " not in residue");
  const WeylElt longest = b.weyl().longest_element(R.type);
  std::vector<Chamber> out;
  for (Chamber y : b.members(R)) {
    if (b.delta(x, y) == longest) out.push_back(y);
  }
  return out;
}

namespace {

template <class Check>
LocalReport sweep(const Building& b, int rank, Check&& check) {
  LocalReport report;
  bool any = false;
  bool inconclusive = false;
  for (GenSet J = 1; J <= b.all_gens(); ++J) {
    if (popcount(J) != rank) continue;
    any = true;
    for (std::uint32_t i = 0; i < b.residue_count(J); ++i) {
      const ResidueRef R{J, i};
      for (Chamber x : b.members(R)) {
        ++report.checked;
        if (auto failure = check(R, x)) {
          if (failure->verdict == Verdict::Inconclusive) inconclusive = true;
          else report.overall = Verdict::ProvenNontrivial;
          report.failures.push_back(std::move(*failure));
        }
      }
    }
  }
  report.vacuous = !any;
  if (report.overall != Verdict::ProvenNontrivial && inconclusive) report.overall = Verdict::Inconclusive;
  std::sort(report.failures.begin(), report.failures.end(), [](const LocalFailure& a, const LocalFailure& c) {
    return std::tie(a.residue, a.chamber) < std::tie(c.residue, c.chamber);
  });
  return report;
}

}  // namespace

LocalReport check_lco(const Building& b) {
  return sweep(b, 2, [&](ResidueRef R, Chamber x) -> std::optional<LocalFailure> {
    const auto opp = opposite_set(b, R, x);
    if (connected(b, opp, R.type)) return std::nullopt;
    return LocalFailure{R, x, Verdict::ProvenNontrivial,
                        "opposite set of " + std::to_string(opp.size()) + " chambers is not connected"};
  });
}

LocalReport check_lsco(const Building& b, const SimpleConnectivityLimits& limits) {
  return sweep(b, 3, [&](ResidueRef R, Chamber x) -> std::optional<LocalFailure> {
    const auto opp = opposite_set(b, R, x);
    try {
      auto v = simply_2_connected(b, opp, limits);
      if (v.status == Verdict::ProvenTrivial) return std::nullopt;
      return LocalFailure{R, x, v.status, v.certificate};
    } catch (const Error& e) {
      if (e.code() != Errc::NotConnected) throw;
      return LocalFailure{R, x, Verdict::ProvenNontrivial, "opposite set is not connected"};
    }
  });
}

Filtration residual_filtration(const Codistance& f) {
  const Building& b = f.building();
  const WeylTable& W = b.weyl();
  Filtration out;
  out.rank.resize(b.size());
  for (Chamber c = 0; c < b.size(); ++c) out.rank[c] = f(c).id;

  const std::size_t top = W.size() - 1;
  out.levels.resize(W.size());
  for (std::size_t n = 0; n <= top; ++n) {
    for (Chamber c = 0; c < b.size(); ++c) {
      if (out.rank[c] <= n) out.levels[n].push_back(c);
    }
  }
  if (out.levels[top].size() != b.size()) throw Error(Errc::Violation, "F2: top level misses chambers");
  if (out.levels[0] != fop(f)) throw Error(Errc::Violation, "level 0 differs from the opposite set of f");
  out.witness.assign(W.size(), -1);

  auto describe = [](ResidueRef R) {
    return "residue (type " + std::to_string(R.type) + ", index " + std::to_string(R.index) + ")";
  };

  for (GenSet J = 1; J <= b.all_gens(); ++J) {
    const auto gens = members(J);
    for (std::uint32_t idx = 0; idx < b.residue_count(J); ++idx) {
      const ResidueRef R{J, idx};
      std::vector<Chamber> ms = b.members(R);
      std::stable_sort(ms.begin(), ms.end(), [&](Chamber x, Chamber y) { return out.rank[x] < out.rank[y]; });

      // aff(R): chambers of smallest rank; must coincide with A_f(R).
      std::vector<Chamber> aff;
      for (Chamber c : ms) {
        if (out.rank[c] == out.rank[ms.front()]) aff.push_back(c);
      }
      std::sort(aff.begin(), aff.end());
      if (aff != residue_profile(f, R).A_f) {
        throw Error(Errc::Violation, "aff differs from A_f on " + describe(R));
      }

      // F3 at every level where R gains chambers after the first.
      for (std::size_t k = aff.size(); k < ms.size();) {
        const std::uint32_t n = out.rank[ms[k]];
        std::size_t end = k;
        while (end < ms.size() && out.rank[ms[end]] == n) ++end;
        int found = -1;
        for (int s : gens) {
          bool ok = true;
          for (std::size_t i = k; i < end && ok; ++i) {
            const auto& panel = b.panel_of(ms[i], s);
            ok = std::any_of(panel.begin(), panel.end(), [&](Chamber d) { return out.rank[d] < n; });
          }
          if (ok) {
            found = s;
            break;
          }
        }
        if (found < 0) {
          throw Error(Errc::Violation, "F3 fails at level " + std::to_string(n) + " on " + describe(R));
        }
        if (J == b.all_gens()) out.witness[n] = found;
        k = end;
      }
    }
  }
  return out;
}

}  // namespace cotwin
