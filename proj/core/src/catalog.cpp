#include "cotwin/catalog.hpp"

#include <map>
#include <set>

#include "cotwin/errors.hpp"

namespace cotwin {
namespace {

// ---------------------------------------------------------------------------
// Linear algebra over the prime field F_p, p in {2, 3}.

using Vec = std::vector<int>;
using Subspace = std::vector<Vec>;  // reduced row echelon basis

int inv_mod(int a, int p) {
  for (int x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  throw Error(Errc::PreconditionFailed, "not invertible");
}

Subspace rref(Subspace rows, int p) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    const int scale = inv_mod(rows[lead][col], p);
    for (int& x : rows[lead]) x = x * scale % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const int factor = rows[r][col];
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = ((rows[r][c] - factor * rows[lead][c]) % p + p) % p;
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

bool contained_in(const Subspace& small, const Subspace& big, int p) {
  Subspace joined = big;
  joined.insert(joined.end(), small.begin(), small.end());
  return rref(std::move(joined), p).size() == big.size();
}

std::vector<Vec> nonzero_vectors(int n, int p) {
  std::vector<Vec> out;
  Vec v(n, 0);
  for (;;) {
    int i = n - 1;
    while (i >= 0 && v[i] == p - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
    out.push_back(v);
  }
  return out;
}

/// All subspaces of F_p^n of dimension 1..max_dim, sorted by canonical form.
std::vector<std::vector<Subspace>> subspaces(int n, int p, int max_dim) {
  const auto vecs = nonzero_vectors(n, p);
  std::vector<std::vector<Subspace>> by_dim(max_dim + 1);
  std::set<Subspace> current;
  for (const auto& v : vecs) current.insert(rref({v}, p));
  by_dim[1].assign(current.begin(), current.end());
  for (int d = 2; d <= max_dim; ++d) {
    std::set<Subspace> next;
    for (const auto& U : by_dim[d - 1]) {
      for (const auto& v : vecs) {
        Subspace joined = U;
        joined.push_back(v);
        Subspace W = rref(std::move(joined), p);
        if (static_cast<int>(W.size()) == d) next.insert(std::move(W));
      }
    }
    by_dim[d].assign(next.begin(), next.end());
  }
  return by_dim;
}

void check_q(int q) {
  if (q != 2 && q != 3) throw Error(Errc::UnsupportedQ, "q = " + std::to_string(q) + " (supported: 2, 3)");
}

/// Chambers are tuples of object indices; the s-panels group tuples that
/// agree away from position s.
std::vector<Building::PanelList> panels_of_tuples(const std::vector<std::vector<std::uint32_t>>& tuples, int rank) {
  std::vector<Building::PanelList> panels(rank);
  for (int s = 0; s < rank; ++s) {
    std::map<std::vector<std::uint32_t>, std::vector<Chamber>> groups;
    for (Chamber c = 0; c < tuples.size(); ++c) {
      auto key = tuples[c];
      key[s] = UINT32_MAX;
      groups[key].push_back(c);
    }
    for (auto& [key, members] : groups) panels[s].push_back(std::move(members));
  }
  return panels;
}

/// Flags U_1 < ... < U_k with U_i taken from levels[i], in lexicographic order.
std::vector<std::vector<std::uint32_t>> flags(const std::vector<std::vector<Subspace>>& levels, int p) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto extend = [&](auto&& self) -> void {
    const std::size_t i = cur.size();
    if (i == levels.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t j = 0; j < levels[i].size(); ++j) {
      if (i > 0 && !contained_in(levels[i - 1][cur.back()], levels[i][j], p)) continue;
      cur.push_back(j);
      self(self);
      cur.pop_back();
    }
  };
  extend(extend);
  return out;
}

BuildingPtr flag_building(std::string name, CoxeterMatrix matrix, const std::vector<std::vector<Subspace>>& levels,
                          int p) {
  const auto tuples = flags(levels, p);
  auto weyl = std::make_shared<const WeylTable>(enumerate_weyl(matrix));
  const int k = weyl->rank();
  return std::make_shared<const Building>(std::move(name), weyl, tuples.size(), panels_of_tuples(tuples, k));
}

}  // namespace

BuildingPtr gen_thin(const CoxeterMatrix& matrix, std::string name) {
  auto weyl = std::make_shared<const WeylTable>(enumerate_weyl(matrix));
  std::vector<Building::PanelList> panels(weyl->rank());
  for (int s = 0; s < weyl->rank(); ++s) {
    for (std::uint32_t i = 0; i < weyl->size(); ++i) {
      const WeylElt ws = weyl->gen_mult(WeylElt{i}, s, Side::Right);
      if (ws.id > i) panels[s].push_back({i, ws.id});
    }
  }
  const std::size_t n = weyl->size();
  return std::make_shared<const Building>(std::move(name), weyl, n, std::move(panels));
}

BuildingPtr gen_digon(int a, int b) {
  if (a < 2 || b < 2) throw Error(Errc::PreconditionFailed, "digon sizes must be at least 2");
  const CoxeterMatrix m({"s", "t"}, {{1, 2}, {2, 1}});
  std::vector<std::vector<std::uint32_t>> tuples;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) tuples.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  }
  auto weyl = std::make_shared<const WeylTable>(enumerate_weyl(m));
  return std::make_shared<const Building>("digon_" + std::to_string(a) + "_" + std::to_string(b), weyl,
                                          tuples.size(), panels_of_tuples(tuples, 2));
}

BuildingPtr gen_pg2(int q) {
  check_q(q);
  auto subs = subspaces(3, q, 2);
  return flag_building("pg2_q" + std::to_string(q), CoxeterMatrix({"p", "l"}, {{1, 3}, {3, 1}}),
                       {subs[1], subs[2]}, q);
}

BuildingPtr gen_pg3(int q) {
  check_q(q);
  auto subs = subspaces(4, q, 3);
  return flag_building("pg3_q" + std::to_string(q),
                       CoxeterMatrix({"p", "l", "h"}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}),
                       {subs[1], subs[2], subs[3]}, q);
}

BuildingPtr gen_sp4(int q) {
  check_q(q);
  auto subs = subspaces(4, q, 2);
  // Alternating form x0 y2 - x2 y0 + x1 y3 - x3 y1.
  auto form = [q](const Vec& x, const Vec& y) {
    const int v = x[0] * y[2] - x[2] * y[0] + x[1] * y[3] - x[3] * y[1];
    return ((v % q) + q) % q;
  };
  std::vector<Subspace> lines;
  for (const auto& L : subs[2]) {
    if (form(L[0], L[1]) == 0) lines.push_back(L);
  }
  return flag_building("sp4_q" + std::to_string(q), CoxeterMatrix({"p", "l"}, {{1, 4}, {4, 1}}),
                       {subs[1], lines}, q);
}

BuildingPtr product(const Building& b1, const Building& b2) {
  const CoxeterMatrix m = CoxeterMatrix::direct_sum(b1.weyl().matrix(), b2.weyl().matrix());
  auto weyl = std::make_shared<const WeylTable>(enumerate_weyl(m));
  const auto n2 = static_cast<Chamber>(b2.size());
  std::vector<Building::PanelList> panels(weyl->rank());
  for (int s = 0; s < b1.rank(); ++s) {
    for (std::uint32_t i = 0; i < b1.panel_count(s); ++i) {
      for (Chamber x2 = 0; x2 < n2; ++x2) {
        std::vector<Chamber> p;
        for (Chamber x1 : b1.panel_members(s, i)) p.push_back(x1 * n2 + x2);
        panels[s].push_back(std::move(p));
      }
    }
  }
  for (int t = 0; t < b2.rank(); ++t) {
    for (std::uint32_t i = 0; i < b2.panel_count(t); ++i) {
      for (Chamber x1 = 0; x1 < b1.size(); ++x1) {
        std::vector<Chamber> p;
        for (Chamber x2 : b2.panel_members(t, i)) p.push_back(x1 * n2 + x2);
        panels[b1.rank() + t].push_back(std::move(p));
      }
    }
  }
  return std::make_shared<const Building>(b1.name() + "_x_" + b2.name(), weyl, b1.size() * b2.size(),
                                          std::move(panels));
}

std::size_t poincare_count(const WeylTable& table, int q) {
  std::size_t total = 0;
  const auto hist = table.length_histogram();
  std::size_t power = 1;
  for (std::size_t l = 0; l < hist.size(); ++l, power *= q) total += hist[l] * power;
  return total;
}

}  // namespace cotwin
