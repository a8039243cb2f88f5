#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace hmis {

// Exact non-negative rational. Used for average degrees so that threshold
// comparisons (e.g. degree > 2*delta) never suffer float drift.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }
  static Rational of(std::int64_t n) { return Rational(n, 1); }

  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
};

// deg > 2 * (sum/n)  evaluated exactly as deg * n > 2 * sum.
inline bool degree_above_twice(std::uint64_t deg, std::uint64_t degree_sum, std::uint64_t n) {
  return static_cast<unsigned __int128>(deg) * n > static_cast<unsigned __int128>(2) * degree_sum;
}

}  // namespace hmis
