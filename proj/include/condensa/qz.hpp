#pragma once

// Exact arithmetic in Q/Z.
//
// Every phase-like quantity in this library (twist, braiding exponent,
// character value) is an element of Q/Z stored as a reduced fraction
// num/den with 0 <= num < den.  The complex phase it denotes is
// exp(2*pi*i*num/den).  Nothing is ever converted to floating point.

#include <numeric>
#include <string>

#include "condensa/errors.hpp"

namespace condensa {

class QZ {
 public:
  constexpr QZ() = default;

  // Reduces num/den modulo 1.  den may be negative; den == 0 is invalid.
  QZ(long long num, long long den) {
    if (den == 0) fail_validation("QZ: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const long long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ == 0) den_ = 1;
  }

  // Parses the "num/den" serialization form, e.g. "1/2", "0/1", "3/4".
  static QZ parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
      fail_validation("QZ: expected \"num/den\", got \"" + s + "\"");
    long long num = 0, den = 0;
    try {
      std::size_t used = 0;
      num = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      const std::string d = s.substr(slash + 1);
      den = std::stoll(d, &used);
      if (used != d.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail_validation("QZ: expected \"num/den\", got \"" + s + "\"");
    }
    if (den == 0) fail_validation("QZ: zero denominator in \"" + s + "\"");
    return QZ(num, den);
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator+(const QZ& o) const {
    return QZ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  QZ operator-(const QZ& o) const {
    return QZ(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  QZ operator-() const { return QZ(-num_, den_); }

  // n * x in Q/Z.
  QZ times(long long n) const { return QZ(num_ * n, den_); }

  QZ& operator+=(const QZ& o) { return *this = *this + o; }
  QZ& operator-=(const QZ& o) { return *this = *this - o; }

  bool operator==(const QZ& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QZ& o) const { return !(*this == o); }

  // Total order as rationals in [0, 1); used only for deterministic sorting.
  bool operator<(const QZ& o) const { return num_ * o.den_ < o.num_ * den_; }

  // Serialization form, always "num/den" ("0/1" for zero).
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

// Renders exp(2*pi*i*x) exactly: "1", "-1", "i", "-i", or "e(num/den)" where
// e(t) abbreviates exp(2*pi*i*t).
inline std::string phase_string(const QZ& x) {
  if (x == QZ(0, 1)) return "1";
  if (x == QZ(1, 2)) return "-1";
  if (x == QZ(1, 4)) return "i";
  if (x == QZ(3, 4)) return "-i";
  return "e(" + x.str() + ")";
}

}  // namespace condensa
