#include "presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace cotwin::detail {
namespace {

constexpr std::size_t kMaxEliminationLength = 10;
constexpr std::size_t kMaxTotalLength = 2'000'000;

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

int gen_of(int letter) { return std::abs(letter) - 1; }

}  // namespace

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

Word cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
}

Presentation simplify(Presentation p) {
  std::vector<char> alive(p.generators, 1);
  for (;;) {
    std::set<Word> unique;
    std::size_t total = 0;
    for (const auto& r : p.relators) {
      Word c = cyclically_reduce(r);
      if (c.empty()) continue;
      total += c.size();
      unique.insert(std::move(c));
    }
    p.relators.assign(unique.begin(), unique.end());
    std::stable_sort(p.relators.begin(), p.relators.end(),
                     [](const Word& a, const Word& b) { return a.size() < b.size(); });
    if (total > kMaxTotalLength) break;

    // A relator A g^e B in which g occurs once gives g^e = (B A)^-1.
    std::optional<std::size_t> pick_relator;
    int pick_gen = -1;
    Word replacement;
    for (std::size_t k = 0; k < p.relators.size() && !pick_relator; ++k) {
      const Word& r = p.relators[k];
      if (r.size() > kMaxEliminationLength) break;
      std::map<int, int> count;
      for (int x : r) ++count[gen_of(x)];
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (count[gen_of(r[i])] != 1) continue;
        Word ba(r.begin() + static_cast<std::ptrdiff_t>(i) + 1, r.end());
        ba.insert(ba.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
        replacement = r[i] > 0 ? inverse(ba) : ba;
        pick_gen = gen_of(r[i]);
        pick_relator = k;
        break;
      }
    }
    if (!pick_relator) break;
    alive[pick_gen] = 0;
    const Word replacement_inv = inverse(replacement);
    std::vector<Word> next;
    for (std::size_t k = 0; k < p.relators.size(); ++k) {
      if (k == *pick_relator) continue;
      Word w;
      for (int x : p.relators[k]) {
        if (gen_of(x) != pick_gen) w.push_back(x);
        else {
          const Word& sub = x > 0 ? replacement : replacement_inv;
          w.insert(w.end(), sub.begin(), sub.end());
        }
      }
      next.push_back(std::move(w));
    }
    p.relators = std::move(next);
  }

  std::vector<int> renumber(p.generators, -1);
  int kept = 0;
  for (int g = 0; g < p.generators; ++g) {
    if (alive[g]) renumber[g] = kept++;
  }
  Presentation out;
  out.generators = kept;
  for (const auto& r : p.relators) {
    Word w;
    for (int x : r) {
      const int g = renumber[gen_of(x)];
      w.push_back(x > 0 ? g + 1 : -(g + 1));
    }
    out.relators.push_back(std::move(w));
  }
  return out;
}

std::optional<Abelianisation> abelianise(const Presentation& p) {
  __extension__ using i128 = __int128;
  const std::size_t n = static_cast<std::size_t>(p.generators);
  std::vector<std::vector<std::int64_t>> a;
  for (const auto& r : p.relators) {
    std::vector<std::int64_t> row(n, 0);
    for (int x : r) row[gen_of(x)] += x > 0 ? 1 : -1;
    if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; })) a.push_back(std::move(row));
  }
  const std::size_t m = a.size();
  bool overflow = false;
  auto narrow = [&](i128 v) -> std::int64_t {
    if (v > INT64_MAX / 4 || v < -(INT64_MAX / 4)) overflow = true;
    return static_cast<std::int64_t>(v);
  };
  auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j) a[dst][j] = narrow(static_cast<i128>(a[dst][j]) - static_cast<i128>(q) * a[src][j]);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t i = 0; i < m; ++i) a[i][dst] = narrow(static_cast<i128>(a[i][dst]) - static_cast<i128>(q) * a[i][src]);
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) { std::swap(a[i], a[j]); };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
  };

  std::vector<std::int64_t> diagonal;
  for (std::size_t t = 0; t < std::min(m, n) && !overflow; ++t) {
    // smallest nonzero entry of the remaining block
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j] != 0 && (bi == m || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == m) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    for (;;) {
      if (overflow) break;
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] != 0) {
          row_op(i, t, a[i][t] / a[t][t]);
          clean = clean && a[i][t] == 0;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] != 0) {
          col_op(j, t, a[t][j] / a[t][t]);
          clean = clean && a[t][j] == 0;
        }
      }
      if (!clean) {
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] != 0 && std::llabs(a[i][t]) < std::llabs(a[pi][pj])) {
            pi = i;
            pj = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] != 0 && std::llabs(a[t][j]) < std::llabs(a[pi][pj])) {
            pi = t;
            pj = j;
          }
        }
        swap_rows(t, pi);
        swap_cols(t, pj);
        continue;
      }
      // divisibility of the remaining block by the pivot
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      row_op(t, bad, -1);
    }
    diagonal.push_back(std::llabs(a[t][t]));
  }
  if (overflow) return std::nullopt;
  Abelianisation out;
  out.free_rank = static_cast<int>(n - diagonal.size());
  for (std::int64_t d : diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

namespace {

// Hasselgrove-Leech-Trotter enumeration with coincidence processing.
class CosetTable {
 public:
  CosetTable(int generators, std::size_t cap) : cols_(2 * generators), cap_(cap) { add_coset(); }

  bool overflowed() const { return overflowed_; }
  std::size_t defined() const { return parent_.size(); }
  bool live(std::size_t c) const { return parent_[c] == c; }

  std::int32_t& at(std::size_t c, int col) { return table_[c * cols_ + col]; }

  bool define(std::size_t c, int col) {
    if (parent_.size() >= cap_) {
      overflowed_ = true;
      return false;
    }
    const std::size_t d = add_coset();
    at(c, col) = static_cast<std::int32_t>(d);
    at(d, col ^ 1) = static_cast<std::int32_t>(c);
    return true;
  }

  void scan_and_fill(std::size_t alpha, const std::vector<int>& cols) {
    std::size_t f = alpha, b = alpha;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(cols.size()) - 1;
    for (;;) {
      while (i <= j && at(f, cols[i]) >= 0) f = static_cast<std::size_t>(at(f, cols[i++]));
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, cols[j] ^ 1) >= 0) b = static_cast<std::size_t>(at(b, cols[j--] ^ 1));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, cols[i]) = static_cast<std::int32_t>(b);
        at(b, cols[i] ^ 1) = static_cast<std::int32_t>(f);
        return;
      }
      if (!define(f, cols[i])) return;
    }
  }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) n += live(c);
    return n;
  }

  int cols() const { return cols_; }

 private:
  std::size_t add_coset() {
    parent_.push_back(parent_.size());
    table_.resize(table_.size() + cols_, -1);
    return parent_.size() - 1;
  }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      const std::size_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    const std::size_t a = rep(k), b = rep(l);
    if (a == b) return;
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(std::size_t alpha, std::size_t beta) {
    std::vector<std::size_t> queue;
    merge(alpha, beta, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t gamma = queue[q];
      for (int x = 0; x < cols_; ++x) {
        if (at(gamma, x) < 0) continue;
        const auto delta = static_cast<std::size_t>(at(gamma, x));
        at(delta, x ^ 1) = -1;
        const std::size_t mu = rep(gamma), nu = rep(delta);
        if (at(mu, x) >= 0) {
          merge(nu, static_cast<std::size_t>(at(mu, x)), queue);
        } else if (at(nu, x ^ 1) >= 0) {
          merge(mu, static_cast<std::size_t>(at(nu, x ^ 1)), queue);
        } else {
          at(mu, x) = static_cast<std::int32_t>(nu);
          at(nu, x ^ 1) = static_cast<std::int32_t>(mu);
        }
      }
    }
  }

  int cols_;
  std::size_t cap_;
  bool overflowed_ = false;
  std::vector<std::size_t> parent_;
  std::vector<std::int32_t> table_;
};

}  // namespace

std::optional<std::size_t> enumerate_cosets(const Presentation& p, std::size_t max_cosets) {
  if (p.generators == 0) return 1;
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) {
    const Word c = cyclically_reduce(r);
    if (c.empty()) continue;
    std::vector<int> cols;
    for (int x : c) cols.push_back(2 * gen_of(x) + (x > 0 ? 0 : 1));
    rels.push_back(std::move(cols));
  }
  CosetTable t(p.generators, max_cosets);
  for (std::size_t alpha = 0; alpha < t.defined(); ++alpha) {
    for (const auto& r : rels) {
      if (!t.live(alpha)) break;
      t.scan_and_fill(alpha, r);
      if (t.overflowed()) return std::nullopt;
    }
    for (int x = 0; x < t.cols() && t.live(alpha); ++x) {
      if (t.at(alpha, x) < 0 && !t.define(alpha, x)) return std::nullopt;
    }
  }
  return t.live_count();
}

}  // namespace cotwin::detail
