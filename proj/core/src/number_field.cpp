#include "cotwin/number_field.hpp"

#include <numeric>
#include <sstream>

#include "cotwin/errors.hpp"

namespace cotwin {
namespace {

__extension__ using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) {
    throw Error(Errc::Overflow, "rational coefficient exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

constexpr int kPrimes[3] = {2, 3, 5};

int mask_of(int squarefree) {
  int mask = 0;
  for (int i = 0; i < 3; ++i) {
    if (squarefree % kPrimes[i] == 0) {
      mask |= 1 << i;
      squarefree /= kPrimes[i];
    }
  }
  if (squarefree != 1) throw Error(Errc::InvalidMatrix, "not a divisor of 30");
  return mask;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::PreconditionFailed, "zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) throw Error(Errc::Overflow, "rational coefficient exceeds 64 bits");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return make(static_cast<i128>(a.num_) + b.num_, a.den_);
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

FieldElt FieldElt::sqrt_of(int squarefree) {
  FieldElt e;
  e.c_[mask_of(squarefree)] = Rational(1);
  return e;
}

FieldElt FieldElt::minus_two_cos_pi_over(int m) {
  switch (m) {
    case 0: return FieldElt(Rational(-2));
    case 2: return FieldElt();
    case 3: return FieldElt(Rational(-1));
    case 4: return FieldElt(Rational(-1)) * sqrt_of(2);
    case 5: {
      // 2cos(pi/5) is the golden ratio (1 + sqrt5) / 2.
      FieldElt e;
      e.c_[0] = Rational(-1, 2);
      e.c_[mask_of(5)] = Rational(-1, 2);
      return e;
    }
    case 6: return FieldElt(Rational(-1)) * sqrt_of(3);
    default: throw Error(Errc::UnsupportedEntry, "Coxeter entry " + std::to_string(m));
  }
}

bool FieldElt::is_zero() const {
  for (const auto& c : c_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

FieldElt operator+(const FieldElt& a, const FieldElt& b) {
  FieldElt r;
  for (std::size_t i = 0; i < FieldElt::kDegree; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

FieldElt operator-(const FieldElt& a, const FieldElt& b) {
  FieldElt r;
  for (std::size_t i = 0; i < FieldElt::kDegree; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

FieldElt operator*(const FieldElt& a, const FieldElt& b) {
  FieldElt r;
  for (std::size_t i = 0; i < FieldElt::kDegree; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < FieldElt::kDegree; ++j) {
      if (b.c_[j].is_zero()) continue;
      std::int64_t scale = 1;
      for (int k = 0; k < 3; ++k) {
        if ((i & j) & (1u << k)) scale *= kPrimes[k];
      }
      r.c_[i ^ j] += a.c_[i] * b.c_[j] * Rational(scale);
    }
  }
  return r;
}

std::size_t FieldElt::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& c : c_) {
    h ^= static_cast<std::size_t>(c.num()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(c.den()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string FieldElt::str() const {
  static const char* names[8] = {"", "r2", "r3", "r6", "r5", "r10", "r15", "r30"};
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < kDegree; ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].str();
    if (i != 0) os << "*" << names[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace cotwin
