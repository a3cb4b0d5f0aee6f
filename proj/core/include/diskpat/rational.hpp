#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "diskpat/errors.hpp"

namespace diskpat {

// Exact rational on int64 with overflow-checked arithmetic.  Every curvature
// quantity in this project is a small fraction (denominators divide 24), so
// 64 bits is plenty; the checks are there to turn a surprise into a loud
// Internal error instead of silent wraparound.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    require(den_ != 0, ErrorCode::Internal, "rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_),
                    checked(__int128(a.den_) * b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(__int128(a.num_) * b.num_),
                    checked(__int128(a.den_) * b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(b.num_ != 0, ErrorCode::Internal, "rational division by zero");
    return Rational(checked(__int128(a.num_) * b.den_),
                    checked(__int128(a.den_) * b.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "p/q" with q omitted when 1; used verbatim in reports and JSON.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static std::int64_t checked(__int128 v) {
    require(v <= INT64_MAX && v >= INT64_MIN, ErrorCode::Internal,
            "rational overflow");
    return static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace diskpat
