#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "ldt/common.hpp"

namespace ldt {

// Exact rational on int64 with 128-bit intermediates. Exact estimators keep
// everything in Rat; doubles appear only at the reporting edge.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(Errc::Overflow, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t clamp128(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
      fail(Errc::Overflow, "rational overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rat make128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rat r;
    r.num = clamp128(n);
    r.den = clamp128(d);
    if (r.den == 0) fail(Errc::Overflow, "rational with zero denominator");
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                   static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                   static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make128(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail(Errc::DivisionByZero, "rational division by zero");
    return make128(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  // q^e for signed e
  static Rat pow(std::int64_t q, int e) {
    Rat r(1);
    Rat base = e >= 0 ? Rat(q) : Rat(1, q);
    int n = e >= 0 ? e : -e;
    for (int i = 0; i < n; i++) r = r * base;
    return r;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace ldt
