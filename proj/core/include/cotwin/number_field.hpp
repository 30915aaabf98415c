#pragma once

// Exact arithmetic in Q(sqrt2, sqrt3, sqrt5).
//
// An element is stored as eight rational coordinates over the basis
// { sqrt(d) : d squarefree divisor of 30 }, indexed by a 3-bit mask
// (bit 0 -> sqrt2, bit 1 -> sqrt3, bit 2 -> sqrt5).  The product of two basis
// vectors with masks a, b is (prod of primes in a & b) * basis[a ^ b].

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace cotwin {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  friend bool operator==(const Rational& a, const Rational& b) = default;

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

class FieldElt {
 public:
  static constexpr std::size_t kDegree = 8;

  constexpr FieldElt() = default;
  explicit FieldElt(Rational r) { c_[0] = r; }

  static FieldElt sqrt_of(int squarefree);  // 1, 2, 3, 5, 6, 10, 15, 30
  /// -2cos(pi/m) for m in {2,3,4,5,6}; m == 0 encodes infinity and gives -2.
  static FieldElt minus_two_cos_pi_over(int m);

  const Rational& coeff(std::size_t mask) const { return c_[mask]; }
  bool is_zero() const;

  friend FieldElt operator+(const FieldElt& a, const FieldElt& b);
  friend FieldElt operator-(const FieldElt& a, const FieldElt& b);
  friend FieldElt operator*(const FieldElt& a, const FieldElt& b);
  friend bool operator==(const FieldElt& a, const FieldElt& b) = default;

  std::size_t hash() const;
  std::string str() const;

 private:
  std::array<Rational, kDegree> c_{};
};

}  // namespace cotwin
