#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "strathom/errors.hpp"

namespace strathom {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    set(n, d);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        std::int64_t n = std::stoll(s, &used);
        if (used != s.size()) throw InputError("bad rational: " + s);
        return Rational(n);
      }
      std::string a = s.substr(0, slash), b = s.substr(slash + 1);
      std::int64_t n = std::stoll(a, &used);
      if (used != a.size()) throw InputError("bad rational: " + s);
      std::int64_t d = std::stoll(b, &used);
      if (used != b.size() || d <= 0) throw InputError("bad rational: " + s);
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      throw InputError("bad rational: " + s);
    } catch (const std::out_of_range&) {
      throw InputError("rational out of range: " + s);
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void set(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of Q/Z, stored as its representative in [0, 1).
class RationalMod1 {
 public:
  RationalMod1() = default;
  RationalMod1(const Rational& r) : v_(reduce(r)) {}  // NOLINT(implicit)
  RationalMod1(std::int64_t n, std::int64_t d) : v_(reduce(Rational(n, d))) {}

  const Rational& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  friend RationalMod1 operator+(const RationalMod1& a, const RationalMod1& b) { return RationalMod1(a.v_ + b.v_); }
  friend RationalMod1 operator-(const RationalMod1& a, const RationalMod1& b) { return RationalMod1(a.v_ - b.v_); }
  RationalMod1 operator-() const { return RationalMod1(-v_); }
  friend RationalMod1 operator*(std::int64_t k, const RationalMod1& a) { return RationalMod1(Rational(k) * a.v_); }
  RationalMod1& operator+=(const RationalMod1& o) { return *this = *this + o; }
  RationalMod1& operator-=(const RationalMod1& o) { return *this = *this - o; }

  friend bool operator==(const RationalMod1& a, const RationalMod1& b) { return a.v_ == b.v_; }
  friend bool operator!=(const RationalMod1& a, const RationalMod1& b) { return !(a == b); }
  friend bool operator<(const RationalMod1& a, const RationalMod1& b) { return a.v_ < b.v_; }

  std::string str() const { return v_.str(); }
  static RationalMod1 parse(const std::string& s) { return RationalMod1(Rational::parse(s)); }
  friend std::ostream& operator<<(std::ostream& os, const RationalMod1& r) { return os << r.str(); }

 private:
  static Rational reduce(const Rational& r) {
    std::int64_t f = r.floor();
    return Rational(r.num() - f * r.den(), r.den());
  }
  Rational v_;
};

}  // namespace strathom

template <>
struct std::hash<strathom::Rational> {
  std::size_t operator()(const strathom::Rational& r) const noexcept {
    return std::hash<std::int64_t>()(r.num()) * 31u + std::hash<std::int64_t>()(r.den());
  }
};
