#include "cotwin/chambersys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "cotwin/errors.hpp"

namespace cotwin {
namespace {

constexpr std::size_t kMaxIssues = 16;

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> parent;
};

std::string chamber_list(std::initializer_list<Chamber> cs) {
  std::string out;
  for (Chamber c : cs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c);
  }
  return out;
}

}  // namespace

Building::Building(std::string name, std::shared_ptr<const WeylTable> weyl, std::size_t chambers,
                   std::vector<PanelList> panels)
    : name_(std::move(name)), weyl_(std::move(weyl)), size_(chambers), panels_(std::move(panels)) {
  const int k = rank();
  if (size_ == 0) throw Error(Errc::InvalidChamberSystem, "no chambers");
  if (size_ > std::size_t{UINT32_MAX}) throw Error(Errc::InvalidChamberSystem, "too many chambers");
  if (static_cast<int>(panels_.size()) != k) {
    throw Error(Errc::InvalidChamberSystem, "expected panels for " + std::to_string(k) + " generators");
  }
  const GenSet full = all_gens();
  residue_index_.assign(std::size_t{full} + 1, {});
  residue_members_.assign(std::size_t{full} + 1, {});

  for (int s = 0; s < k; ++s) {
    const std::string& g = weyl_->matrix().gens()[s];
    for (auto& p : panels_[s]) {
      std::sort(p.begin(), p.end());
      if (p.size() < 2) throw Error(Errc::InvalidChamberSystem, "a " + g + "-panel has fewer than 2 chambers");
      if (std::adjacent_find(p.begin(), p.end()) != p.end()) {
        throw Error(Errc::InvalidChamberSystem, "repeated chamber in a " + g + "-panel");
      }
      if (p.back() >= size_) throw Error(Errc::InvalidChamberSystem, "chamber id out of range");
    }
    std::sort(panels_[s].begin(), panels_[s].end());
    auto& idx = residue_index_[gen_bit(s)];
    idx.assign(size_, UINT32_MAX);
    for (std::uint32_t i = 0; i < panels_[s].size(); ++i) {
      for (Chamber c : panels_[s][i]) {
        if (idx[c] != UINT32_MAX) {
          throw Error(Errc::InvalidChamberSystem, "chamber " + std::to_string(c) + " lies in two " + g + "-panels");
        }
        idx[c] = i;
      }
    }
    if (std::find(idx.begin(), idx.end(), UINT32_MAX) != idx.end()) {
      throw Error(Errc::InvalidChamberSystem, "the " + g + "-panels do not cover every chamber");
    }
    residue_members_[gen_bit(s)] = panels_[s];
  }

  for (GenSet J = 0; J <= full; ++J) {
    if (popcount(J) == 1) continue;
    auto& idx = residue_index_[J];
    auto& mem = residue_members_[J];
    if (J == 0) {
      idx.resize(size_);
      std::iota(idx.begin(), idx.end(), 0u);
      mem.resize(size_);
      for (Chamber c = 0; c < size_; ++c) mem[c] = {c};
      continue;
    }
    UnionFind uf(size_);
    for (int s : cotwin::members(J)) {
      for (const auto& p : panels_[s]) {
        for (Chamber c : p) uf.unite(p.front(), c);
      }
    }
    idx.assign(size_, UINT32_MAX);
    for (Chamber c = 0; c < size_; ++c) {
      const std::uint32_t root = uf.find(c);
      if (idx[root] == UINT32_MAX) {
        idx[root] = static_cast<std::uint32_t>(mem.size());
        mem.emplace_back();
      }
      idx[c] = idx[root];
      mem[idx[c]].push_back(c);
    }
  }
  if (residue_members_[full].size() != 1) {
    throw Error(Errc::Disconnected, "chamber system has " + std::to_string(residue_members_[full].size()) +
                                        " connected components");
  }

  rows_.resize(size_);
  if (size_ <= kMaterializeLimit) {
    for (Chamber x = 0; x < size_; ++x) rows_[x] = compute_row(x, &issues_);
  } else {
    row_once_ = std::make_unique<std::once_flag[]>(size_);
  }
}

std::vector<WeylElt> Building::compute_row(Chamber x, std::vector<std::string>* issues) const {
  const WeylTable& W = *weyl_;
  std::vector<WeylElt> d(size_);
  std::vector<int> depth(size_, -1);
  std::vector<std::string> found;
  std::deque<Chamber> queue{x};
  depth[x] = 0;
  d[x] = W.identity();
  while (!queue.empty()) {
    const Chamber y = queue.front();
    queue.pop_front();
    for (int s = 0; s < rank(); ++s) {
      for (Chamber z : panel_of(y, s)) {
        if (z == y) continue;
        const WeylElt via = W.gen_mult(d[y], s, Side::Right);
        if (depth[z] < 0) {
          depth[z] = depth[y] + 1;
          d[z] = via;
          queue.push_back(z);
        } else if (depth[z] == depth[y] + 1 && d[z] != via && found.size() < kMaxIssues) {
          found.push_back("minimal galleries from " + std::to_string(x) + " to " + std::to_string(z) +
                          " have different types");
        }
      }
    }
  }
  for (Chamber z = 0; z < size_; ++z) {
    if (W.length(d[z]) != depth[z] && found.size() < kMaxIssues) {
      found.push_back("gallery distance from " + std::to_string(x) + " to " + std::to_string(z) +
                      " differs from the length of the Weyl distance");
    }
  }
  if (!found.empty()) {
    std::lock_guard lock(issues_mutex_);
    for (auto& f : found) {
      if (issues->size() < kMaxIssues) issues->push_back(std::move(f));
    }
  }
  return d;
}

const std::vector<WeylElt>& Building::row(Chamber x) const {
  if (row_once_) std::call_once(row_once_[x], [&] { rows_[x] = compute_row(x, &issues_); });
  return rows_[x];
}

const std::vector<std::string>& Building::distance_issues() const {
  std::call_once(all_rows_once_, [&] {
    for (Chamber x = 0; x < size_; ++x) (void)row(x);
  });
  return issues_;
}

bool Building::is_thick() const {
  for (const auto& list : panels_) {
    for (const auto& p : list) {
      if (p.size() < 3) return false;
    }
  }
  return true;
}

int Building::adjacency_type(Chamber x, Chamber y) const {
  if (x == y) return -1;
  for (int s = 0; s < rank(); ++s) {
    if (adjacent(x, y, s)) return s;
  }
  return -1;
}

Gallery Building::min_gallery(Chamber x, Chamber y) const {
  const auto& to_y = row(y);
  Gallery g{{x}, {}};
  Chamber c = x;
  while (c != y) {
    const int here = weyl_->length(to_y[c]);
    Chamber best = UINT32_MAX;
    int best_type = -1;
    for (int s = 0; s < rank(); ++s) {
      for (Chamber z : panel_of(c, s)) {
        if (z != c && z < best && weyl_->length(to_y[z]) == here - 1) {
          best = z;
          best_type = s;
        }
      }
    }
    if (best_type < 0) throw Error(Errc::BuildingInvalid, "no descending step in minimal gallery");
    g.chambers.push_back(best);
    g.types.push_back(best_type);
    c = best;
  }
  return g;
}

bool Building::contains(ResidueRef R1, ResidueRef R2) const {
  return (R2.type & ~R1.type) == 0 && contains(R1, base(R2));
}

Chamber Building::proj(ResidueRef R, Chamber c) const {
  const WeylTable& W = *weyl_;
  const auto& from_c = row(c);
  Chamber x = base(R);
  WeylElt u = from_c[x];
  for (;;) {
    int step = -1;
    for (int t : cotwin::members(R.type)) {
      if (W.length(W.gen_mult(u, t, Side::Right)) < W.length(u)) {
        step = t;
        break;
      }
    }
    if (step < 0) return x;
    const WeylElt ut = W.gen_mult(u, step, Side::Right);
    Chamber next = UINT32_MAX;
    for (Chamber z : panel_of(x, step)) {
      if (from_c[z] == ut) {
        next = z;
        break;
      }
    }
    if (next == UINT32_MAX) throw Error(Errc::BuildingInvalid, "projection walk is stuck");
    x = next;
    u = ut;
  }
}

ResidueRef Building::residue_of_set(const std::vector<Chamber>& set) const {
  if (set.empty()) throw Error(Errc::PreconditionFailed, "empty chamber set");
  GenSet J = 0;
  for (Chamber x : set) {
    for (int s = 0; s < rank(); ++s) {
      if (cotwin::contains(J, s)) continue;
      for (Chamber z : panel_of(x, s)) {
        if (z != x && std::binary_search(set.begin(), set.end(), z)) {
          J |= gen_bit(s);
          break;
        }
      }
    }
  }
  const ResidueRef R = residue(set.front(), J);
  if (members(R) != set) throw Error(Errc::PreconditionFailed, "chamber set is not a residue");
  return R;
}

ResidueRef Building::proj(ResidueRef R, ResidueRef Q) const {
  std::vector<Chamber> image;
  for (Chamber x : members(Q)) image.push_back(proj(R, x));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return residue_of_set(image);
}

bool Building::are_parallel(ResidueRef R1, ResidueRef R2) const {
  auto one_way = [&](ResidueRef A, ResidueRef B) {
    for (Chamber x : members(A)) {
      const Chamber y = proj(B, x);
      if (proj(A, y) != x) return false;
      for (int s : cotwin::members(A.type)) {
        for (Chamber x2 : panel_of(x, s)) {
          if (x2 != x && adjacency_type(y, proj(B, x2)) < 0) return false;
        }
      }
    }
    return true;
  };
  return one_way(R1, R2) && one_way(R2, R1);
}

bool Building::opposite_chambers(ResidueRef R, Chamber x, Chamber y) const {
  if (!contains(R, x) || !contains(R, y)) throw Error(Errc::NotInResidue, "chamber outside the residue");
  return delta(x, y) == weyl_->longest_element(R.type);
}

bool Building::opposite_residues(ResidueRef R, ResidueRef R1, ResidueRef R2) const {
  if (!contains(R, R1) || !contains(R, R2)) throw Error(Errc::NotInResidue, "residue outside the residue");
  const WeylElt r = weyl_->longest_element(R.type);
  if (R1.type != weyl_->conjugate_set(R2.type, r)) return false;
  for (Chamber x : members(R1)) {
    for (Chamber y : members(R2)) {
      if (delta(x, y) == r) return true;
    }
  }
  return false;
}

BuildingReport validate_building(const Building& b) {
  const WeylTable& W = b.weyl();
  const Chamber n = static_cast<Chamber>(b.size());
  auto fail = [](std::string axiom, std::vector<Chamber> witness, std::string detail) {
    return BuildingReport{false, std::move(axiom), std::move(witness), std::move(detail)};
  };

  for (Chamber c = 0; c < n; ++c) {
    for (int s = 0; s < b.rank(); ++s) {
      for (int t = s + 1; t < b.rank(); ++t) {
        for (Chamber d : b.panel_of(c, s)) {
          if (d != c && b.adjacent(c, d, t)) {
            return fail("chamber-system", {c, d}, "chambers " + chamber_list({c, d}) + " are adjacent for two types");
          }
        }
      }
    }
  }
  if (const auto& issues = b.distance_issues(); !issues.empty()) {
    return fail("well-defined distance", {}, issues.front());
  }
  for (Chamber x = 0; x < n; ++x) {
    for (Chamber y = 0; y < n; ++y) {
      const WeylElt w = b.delta(x, y);
      if ((w == W.identity()) != (x == y)) return fail("Bu1", {x, y}, "delta(" + chamber_list({x, y}) + ")");
      if (b.delta(y, x) != W.inverse(w)) {
        return fail("symmetry", {x, y}, "delta(y,x) is not delta(x,y)^-1 for " + chamber_list({x, y}));
      }
      for (int s = 0; s < b.rank(); ++s) {
        const WeylElt ws = W.gen_mult(w, s, Side::Right);
        const bool up = W.length(ws) > W.length(w);
        bool bu3 = false;
        for (Chamber z : b.panel_of(y, s)) {
          if (z == y) continue;
          if (x == 0 && b.delta(y, z) != W.generator(s)) {
            return fail("adjacent distance", {y, z}, "delta of " + chamber_list({y, z}) + " is not their type");
          }
          const WeylElt dz = b.delta(x, z);
          if (dz != w && dz != ws) return fail("Bu2", {x, y, z}, "delta(x,z) outside {w, ws}");
          if (up && dz != ws) return fail("Bu2", {x, y, z}, "delta(x,z) != ws although l(ws) = l(w) + 1");
          bu3 = bu3 || dz == ws;
        }
        if (!bu3) return fail("Bu3", {x, y}, "no chamber z s-adjacent to y with delta(x,z) = ws");
      }
    }
  }
  return {};
}

}  // namespace cotwin
