#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plab {

// Exact fraction on __int128. Walk probabilities at desk scale have
// denominators that are products of vertex degrees and (2k)^j factors,
// which fit comfortably; anything larger throws instead of overflowing.
class Rational {
 public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(Int n, Int d) : num_(n), den_(d) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  static Rational from_int(long long n) { return Rational(n); }

  Int num() const { return num_; }
  Int den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const {
    return Rational(add_checked(mul_checked(num_, o.den_), mul_checked(o.num_, den_)),
                    mul_checked(den_, o.den_));
  }
  Rational operator-(const Rational& o) const {
    return Rational(sub_checked(mul_checked(num_, o.den_), mul_checked(o.num_, den_)),
                    mul_checked(den_, o.den_));
  }
  Rational operator*(const Rational& o) const {
    return Rational(mul_checked(num_, o.num_), mul_checked(den_, o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(mul_checked(num_, o.den_), mul_checked(den_, o.num_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return mul_checked(num_, o.den_) < mul_checked(o.num_, den_);
  }
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    return int_str(num_) + "/" + int_str(den_);
  }

 private:
  Int num_, den_;

  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    Int g = gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  static Int gcd(Int a, Int b) {
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  static Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (mul)");
    return r;
  }
  static Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (add)");
    return r;
  }
  static Int sub_checked(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (sub)");
    return r;
  }

  static std::string int_str(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    while (v != 0) {
      int digit = static_cast<int>(neg ? -(v % 10) : (v % 10));
      s.insert(s.begin(), static_cast<char>('0' + digit));
      v /= 10;
    }
    if (neg) s.insert(s.begin(), '-');
    return s;
  }
};

}  // namespace plab
