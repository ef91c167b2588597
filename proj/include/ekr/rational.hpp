#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ekr {

// Exact fraction, always reduced with a positive denominator. Used for
// squared densities rho^2 = |S|^2 / (|G_w|^2 |Omega|) and closed-form spectra.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0)
      throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0)
      throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  // "sqrt(a/b)" rendering of sqrt(this).
  std::string sqrt_string() const { return "sqrt(" + std::to_string(num) + "/" + std::to_string(den) + ")"; }
};

} // namespace ekr
