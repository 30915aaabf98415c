#pragma once

// Finite Coxeter groups enumerated exactly.
//
// Elements are identified through their action on a point in the interior of
// the fundamental chamber of the contragredient reflection representation;
// since that point has trivial stabiliser the orbit map is injective and the
// word problem is decided by exact comparison in Q(sqrt2, sqrt3, sqrt5).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cotwin {

/// Bitmask over generator indices.
using GenSet = std::uint32_t;

inline constexpr GenSet gen_bit(int s) { return GenSet{1} << s; }
inline bool contains(GenSet set, int s) { return (set >> s) & 1u; }
int popcount(GenSet set);
std::vector<int> members(GenSet set);

/// An element of a WeylTable.  Ids are dense and assigned in ShortLex order of
/// canonical words, so id 0 is the identity and l(x) < l(y) implies id(x) < id(y).
struct WeylElt {
  std::uint32_t id = 0;
  friend auto operator<=>(const WeylElt&, const WeylElt&) = default;
};

enum class Side { Left, Right };

class CoxeterMatrix {
 public:
  /// Entry 0 encodes infinity.  Throws InvalidMatrix for structural problems
  /// and UnsupportedEntry for finite entries outside {2,...,6}.
  CoxeterMatrix(std::vector<std::string> gens, std::vector<std::vector<int>> m);

  /// Named types: A1..A4, B2..B4, H3, I2(m), and '+'/'x' joined sums such as
  /// "A1xA1xA1" or "A1xI2(5)".  Generators are named s0, s1, ...
  static CoxeterMatrix of_type(std::string_view type);
  static CoxeterMatrix direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b);

  int rank() const { return static_cast<int>(gens_.size()); }
  const std::vector<std::string>& gens() const { return gens_; }
  int entry(int i, int j) const { return m_[i][j]; }
  const std::vector<std::vector<int>>& rows() const { return m_; }
  std::optional<int> gen_index(std::string_view name) const;

  /// The Coxeter matrix of (W_J, J), generators in declared order.
  CoxeterMatrix restricted(GenSet J) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::vector<std::string> gens_;
  std::vector<std::vector<int>> m_;
};

class WeylTable {
 public:
  static constexpr std::size_t kDefaultCap = 200000;

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  std::size_t size() const { return length_.size(); }

  WeylElt identity() const { return WeylElt{0}; }
  WeylElt generator(int s) const { return gen_elt_[s]; }
  /// Generator index of w when l(w) == 1.
  std::optional<int> as_generator(WeylElt w) const;

  int length(WeylElt w) const { return length_[w.id]; }
  WeylElt gen_mult(WeylElt w, int s, Side side) const {
    return side == Side::Right ? right_[w.id * rank() + s] : left_[w.id * rank() + s];
  }
  WeylElt mul(WeylElt x, WeylElt y) const;
  WeylElt inverse(WeylElt w) const { return inverse_[w.id]; }

  /// ShortLex-least reduced word.
  const std::vector<int>& word(WeylElt w) const { return words_[w.id]; }
  WeylElt from_word(std::span<const int> letters) const;

  bool in_parabolic(WeylElt w, GenSet J) const;
  std::vector<WeylElt> parabolic_elements(GenSet J) const;

  WeylElt min_coset_rep(WeylElt w, GenSet J) const;
  WeylElt longest_element(GenSet J) const { return longest_[J]; }
  WeylElt max_coset_rep(WeylElt w, GenSet J) const;
  /// w^-1 s w as a generator index, when it is one.
  std::optional<int> conjugate_generator(WeylElt w, int s) const;
  /// w in X_s: w^-1 s w in S and l(sw) = l(w) + 1.  Returns t = w^-1 s w.
  std::optional<int> in_X_s(WeylElt w, int s) const;
  std::vector<WeylElt> X_s(int s) const;
  bool prec(WeylElt w1, WeylElt w2) const;
  /// r_J K r_J for a subset K of J (J spherical).
  GenSet conjugate_set(GenSet K, WeylElt r) const;

  std::vector<std::size_t> length_histogram() const;

 private:
  friend WeylTable enumerate_weyl(const CoxeterMatrix& matrix, std::size_t cap);
  explicit WeylTable(CoxeterMatrix m) : matrix_(std::move(m)) {}

  CoxeterMatrix matrix_;
  std::vector<int> length_;
  std::vector<WeylElt> left_;
  std::vector<WeylElt> right_;
  std::vector<WeylElt> inverse_;
  std::vector<std::vector<int>> words_;
  std::vector<WeylElt> gen_elt_;
  std::vector<WeylElt> longest_;  // indexed by GenSet
  std::vector<WeylElt> product_;  // full table for small groups
};

/// Throws CapExceeded when more than `cap` elements are produced.
WeylTable enumerate_weyl(const CoxeterMatrix& matrix, std::size_t cap = WeylTable::kDefaultCap);

/// Every subset of at most k generators generates a finite group.
bool is_k_spherical(const CoxeterMatrix& matrix, int k, std::size_t cap = WeylTable::kDefaultCap);

std::string format_word(const WeylTable& table, WeylElt w, std::string_view empty = "1");

}  // namespace cotwin
