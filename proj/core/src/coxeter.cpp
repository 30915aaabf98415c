#include "cotwin/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <deque>
#include <unordered_map>

#include "cotwin/errors.hpp"
#include "cotwin/number_field.hpp"

namespace cotwin {

int popcount(GenSet set) { return std::popcount(set); }

std::vector<int> members(GenSet set) {
  std::vector<int> out;
  for (int s = 0; set != 0; ++s, set >>= 1) {
    if (set & 1u) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> gens, std::vector<std::vector<int>> m)
    : gens_(std::move(gens)), m_(std::move(m)) {
  const std::size_t k = gens_.size();
  if (k == 0) throw Error(Errc::InvalidMatrix, "rank must be positive");
  if (k > 16) throw Error(Errc::InvalidMatrix, "rank above 16 is not supported");
  if (m_.size() != k) throw Error(Errc::InvalidMatrix, "matrix has wrong number of rows");
  for (std::size_t i = 0; i < k; ++i) {
    if (gens_[i].empty()) throw Error(Errc::InvalidMatrix, "empty generator name");
    for (std::size_t j = 0; j < i; ++j) {
      if (gens_[i] == gens_[j]) throw Error(Errc::InvalidMatrix, "duplicate generator " + gens_[i]);
    }
    if (m_[i].size() != k) throw Error(Errc::InvalidMatrix, "matrix row has wrong length");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const int e = m_[i][j];
      if (e != m_[j][i]) throw Error(Errc::InvalidMatrix, "matrix is not symmetric");
      if (i == j) {
        if (e != 1) throw Error(Errc::InvalidMatrix, "diagonal entries must be 1");
        continue;
      }
      if (e == 0) continue;
      if (e < 2) throw Error(Errc::InvalidMatrix, "off-diagonal entry " + std::to_string(e));
      if (e > 6) throw Error(Errc::UnsupportedEntry, "entry " + std::to_string(e) + " is outside {2,...,6}");
    }
  }
}

namespace {

std::vector<std::vector<int>> chain(int n, int first_edge, int other_edges) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) {
    const int e = i == 0 ? first_edge : other_edges;
    m[i][i + 1] = m[i + 1][i] = e;
  }
  return m;
}

std::vector<std::vector<int>> irreducible(std::string_view t) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw Error(Errc::InvalidMatrix, "bad type string '" + std::string(t) + "'");
    }
    return v;
  };
  if (t.starts_with("I2(") && t.ends_with(")")) {
    const int m = parse_int(t.substr(3, t.size() - 4));
    return {{1, m}, {m, 1}};
  }
  if (t.size() < 2) throw Error(Errc::InvalidMatrix, "bad type string '" + std::string(t) + "'");
  const int n = parse_int(t.substr(1));
  if (n < 1) throw Error(Errc::InvalidMatrix, "bad rank in '" + std::string(t) + "'");
  switch (t[0]) {
    case 'A': return chain(n, 3, 3);
    case 'B':
    case 'C':
      if (n < 2) break;
      return chain(n, 4, 3);
    case 'H':
      if (n != 3 && n != 4) break;
      return chain(n, 5, 3);
    default: break;
  }
  throw Error(Errc::InvalidMatrix, "unknown type '" + std::string(t) + "'");
}

}  // namespace

CoxeterMatrix CoxeterMatrix::of_type(std::string_view type) {
  std::vector<std::vector<std::vector<int>>> blocks;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= type.size(); ++i) {
    if (i == type.size() || type[i] == 'x' || type[i] == '+') {
      blocks.push_back(irreducible(type.substr(start, i - start)));
      start = i + 1;
    }
  }
  std::size_t k = 0;
  for (const auto& b : blocks) k += b.size();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 2));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) m[off + i][off + j] = b[i][j];
    }
    off += b.size();
  }
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back("s" + std::to_string(i));
  return CoxeterMatrix(std::move(gens), std::move(m));
}

CoxeterMatrix CoxeterMatrix::direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  std::vector<std::string> gens = a.gens_;
  for (const auto& g : b.gens_) {
    if (a.gen_index(g)) throw Error(Errc::NameClash, "generator '" + g + "' appears in both operands");
    gens.push_back(g);
  }
  const int ka = a.rank();
  const int k = ka + b.rank();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 2));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i < ka && j < ka) m[i][j] = a.m_[i][j];
      else if (i >= ka && j >= ka) m[i][j] = b.m_[i - ka][j - ka];
    }
  }
  return CoxeterMatrix(std::move(gens), std::move(m));
}

std::optional<int> CoxeterMatrix::gen_index(std::string_view name) const {
  for (int i = 0; i < rank(); ++i) {
    if (gens_[i] == name) return i;
  }
  return std::nullopt;
}

CoxeterMatrix CoxeterMatrix::restricted(GenSet J) const {
  const auto idx = members(J);
  std::vector<std::string> gens;
  std::vector<std::vector<int>> m;
  for (int i : idx) {
    gens.push_back(gens_[i]);
    std::vector<int> row;
    for (int j : idx) row.push_back(m_[i][j]);
    m.push_back(std::move(row));
  }
  return CoxeterMatrix(std::move(gens), std::move(m));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using Point = std::vector<FieldElt>;

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 0;
    for (const auto& c : p) h = h * 1000003u ^ c.hash();
    return h;
  }
};

}  // namespace

WeylTable enumerate_weyl(const CoxeterMatrix& matrix, std::size_t cap) {
  if (cap == 0) throw Error(Errc::PreconditionFailed, "cap must be positive");
  const int k = matrix.rank();

  // coupling[s][t] = 2B(e_s, e_t) in the geometric representation.
  std::vector<std::vector<FieldElt>> coupling(k, std::vector<FieldElt>(k));
  for (int s = 0; s < k; ++s) {
    for (int t = 0; t < k; ++t) {
      coupling[s][t] = s == t ? FieldElt(Rational(2)) : FieldElt::minus_two_cos_pi_over(matrix.entry(s, t));
    }
  }
  auto act = [&](const Point& phi, int s) {
    Point out = phi;
    for (int t = 0; t < k; ++t) {
      if (!coupling[s][t].is_zero()) out[t] = phi[t] - coupling[s][t] * phi[s];
    }
    return out;
  };

  // Breadth-first over left multiplication; BFS depth is the length.
  std::vector<Point> points;
  std::vector<int> depth;
  std::vector<std::uint32_t> left_raw;
  std::unordered_map<Point, std::uint32_t, PointHash> index;
  points.push_back(Point(k, FieldElt(Rational(1))));
  depth.push_back(0);
  index.emplace(points[0], 0);
  try {
    for (std::size_t head = 0; head < points.size(); ++head) {
      for (int s = 0; s < k; ++s) {
        Point next = act(points[head], s);
        auto it = index.find(next);
        std::uint32_t id;
        if (it == index.end()) {
          if (points.size() >= cap) {
            throw Error(Errc::CapExceeded, "group has more than " + std::to_string(cap) + " elements");
          }
          id = static_cast<std::uint32_t>(points.size());
          index.emplace(next, id);
          points.push_back(std::move(next));
          depth.push_back(depth[head] + 1);
        } else {
          id = it->second;
        }
        left_raw.push_back(id);
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::Overflow) throw;
    throw Error(Errc::CapExceeded, "orbit coordinates overflow; group is infinite");
  }
  index.clear();
  points.clear();

  const std::size_t n = depth.size();
  // Canonical ShortLex words: first letter is the least left descent.
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return depth[a] < depth[b]; });
  std::vector<std::vector<int>> raw_words(n);
  for (std::uint32_t v : order) {
    if (depth[v] == 0) continue;
    for (int s = 0; s < k; ++s) {
      const std::uint32_t u = left_raw[v * k + s];
      if (depth[u] < depth[v]) {
        raw_words[v].reserve(depth[v]);
        raw_words[v].push_back(s);
        raw_words[v].insert(raw_words[v].end(), raw_words[u].begin(), raw_words[u].end());
        break;
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (depth[a] != depth[b]) return depth[a] < depth[b];
    return raw_words[a] < raw_words[b];
  });
  std::vector<std::uint32_t> new_id(n);
  for (std::size_t i = 0; i < n; ++i) new_id[order[i]] = static_cast<std::uint32_t>(i);

  WeylTable t(matrix);
  t.length_.resize(n);
  t.words_.resize(n);
  t.left_.resize(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t old = order[i];
    t.length_[i] = depth[old];
    t.words_[i] = std::move(raw_words[old]);
    for (int s = 0; s < k; ++s) t.left_[i * k + s] = WeylElt{new_id[left_raw[old * k + s]]};
  }
  t.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    WeylElt w = t.identity();
    for (int letter : t.words_[i]) w = t.left_[w.id * k + letter];
    t.inverse_[i] = w;
  }
  t.right_.resize(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (int s = 0; s < k; ++s) {
      const WeylElt inv = t.inverse_[i];
      t.right_[i * k + s] = t.inverse_[t.left_[inv.id * k + s].id];
    }
  }
  for (int s = 0; s < k; ++s) t.gen_elt_.push_back(t.left_[s]);
  if (n <= 1024) {
    t.product_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      t.product_[x * n] = WeylElt{static_cast<std::uint32_t>(x)};
    }
    // Fill row by row along ShortLex order: xy = (x y') s where y = y's.
    for (std::size_t y = 1; y < n; ++y) {
      const auto& w = t.words_[y];
      const WeylElt prefix = t.from_word(std::span<const int>(w.data(), w.size() - 1));
      for (std::size_t x = 0; x < n; ++x) {
        t.product_[x * n + y] = t.right_[t.product_[x * n + prefix.id].id * k + w.back()];
      }
    }
  }
  t.longest_.resize(std::size_t{1} << k);
  for (GenSet J = 0; J < (GenSet{1} << k); ++J) {
    WeylElt w = t.identity();
    for (bool grew = true; grew;) {
      grew = false;
      for (int s : members(J)) {
        const WeylElt ws = t.gen_mult(w, s, Side::Right);
        if (t.length(ws) > t.length(w)) {
          w = ws;
          grew = true;
          break;
        }
      }
    }
    t.longest_[J] = w;
  }
  return t;
}

bool is_k_spherical(const CoxeterMatrix& matrix, int k, std::size_t cap) {
  const int r = matrix.rank();
  for (GenSet J = 1; J < (GenSet{1} << r); ++J) {
    if (popcount(J) > k) continue;
    try {
      (void)enumerate_weyl(matrix.restricted(J), cap);
    } catch (const Error& e) {
      if (e.code() == Errc::CapExceeded) return false;
      throw;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// WeylTable queries

std::optional<int> WeylTable::as_generator(WeylElt w) const {
  if (length(w) != 1) return std::nullopt;
  return words_[w.id][0];
}

WeylElt WeylTable::mul(WeylElt x, WeylElt y) const {
  if (!product_.empty()) return product_[x.id * size() + y.id];
  for (int letter : words_[y.id]) x = right_[x.id * rank() + letter];
  return x;
}

WeylElt WeylTable::from_word(std::span<const int> letters) const {
  WeylElt w = identity();
  for (int letter : letters) w = right_[w.id * rank() + letter];
  return w;
}

WeylElt WeylTable::min_coset_rep(WeylElt w, GenSet J) const {
  for (bool shrank = true; shrank;) {
    shrank = false;
    for (int s : members(J)) {
      const WeylElt ws = gen_mult(w, s, Side::Right);
      if (length(ws) < length(w)) {
        w = ws;
        shrank = true;
        break;
      }
    }
  }
  return w;
}

WeylElt WeylTable::max_coset_rep(WeylElt w, GenSet J) const {
  for (bool grew = true; grew;) {
    grew = false;
    for (int s : members(J)) {
      const WeylElt ws = gen_mult(w, s, Side::Right);
      if (length(ws) > length(w)) {
        w = ws;
        grew = true;
        break;
      }
    }
  }
  return w;
}

bool WeylTable::in_parabolic(WeylElt w, GenSet J) const { return min_coset_rep(w, J) == identity(); }

std::vector<WeylElt> WeylTable::parabolic_elements(GenSet J) const {
  std::vector<char> seen(size(), 0);
  std::vector<WeylElt> out{identity()};
  seen[0] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int s : members(J)) {
      const WeylElt next = gen_mult(out[head], s, Side::Right);
      if (!seen[next.id]) {
        seen[next.id] = 1;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> WeylTable::conjugate_generator(WeylElt w, int s) const {
  return as_generator(mul(mul(inverse(w), generator(s)), w));
}

std::optional<int> WeylTable::in_X_s(WeylElt w, int s) const {
  if (length(gen_mult(w, s, Side::Left)) != length(w) + 1) return std::nullopt;
  return conjugate_generator(w, s);
}

std::vector<WeylElt> WeylTable::X_s(int s) const {
  std::vector<WeylElt> out;
  for (std::uint32_t i = 0; i < size(); ++i) {
    if (in_X_s(WeylElt{i}, s)) out.push_back(WeylElt{i});
  }
  return out;
}

bool WeylTable::prec(WeylElt w1, WeylElt w2) const {
  return length(mul(inverse(w1), w2)) == length(w2) - length(w1);
}

GenSet WeylTable::conjugate_set(GenSet K, WeylElt r) const {
  GenSet out = 0;
  for (int k : members(K)) {
    const auto t = conjugate_generator(r, k);
    if (!t) throw Error(Errc::PreconditionFailed, "conjugate is not a generator");
    out |= gen_bit(*t);
  }
  return out;
}

std::vector<std::size_t> WeylTable::length_histogram() const {
  std::vector<std::size_t> hist;
  for (int l : length_) {
    if (static_cast<std::size_t>(l) >= hist.size()) hist.resize(l + 1, 0);
    ++hist[l];
  }
  return hist;
}

std::string format_word(const WeylTable& table, WeylElt w, std::string_view empty) {
  const auto& word = table.word(w);
  if (word.empty()) return std::string(empty);
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += table.matrix().gens()[word[i]];
  }
  return out;
}

}  // namespace cotwin
