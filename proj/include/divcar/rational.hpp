#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace divcar {

/// Exact non-negative rational number, always kept in lowest terms.
///
/// Edge lengths are reciprocals 1/c of integer co-usage counts, so every
/// tree weight is a finite sum of unit fractions. Keeping them exact makes
/// priority-queue order and optimality checks reproducible across
/// platforms. Numerator and denominator are 128-bit; arithmetic that would
/// not fit throws InternalError rather than silently rounding.
class Rational {
 public:
  using Int = unsigned __int128;

  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  static Rational zero() { return {}; }
  static Rational unit_fraction(std::uint64_t den) { return {1, den}; }

  [[nodiscard]] Int num() const { return num_; }
  [[nodiscard]] Int den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }

  /// Swaps numerator and denominator. Throws on zero.
  [[nodiscard]] Rational reciprocal() const;

  [[nodiscard]] double to_double() const;
  /// "n/d", or "n" when the denominator is 1.
  [[nodiscard]] std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational make_reduced(Int num, Int den);

  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace divcar
