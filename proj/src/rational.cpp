#include "divcar/rational.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "divcar/error.hpp"

namespace divcar {
namespace {

using Int = Rational::Int;

Int gcd128(Int a, Int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  constexpr Int kWord = std::numeric_limits<std::uint64_t>::max();
  if (a <= kWord && b <= kWord) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  // Binary gcd; std::gcd is not guaranteed to accept __int128 in strict mode.
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw InternalError("rational overflow in multiplication");
  return out;
}

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw InternalError("rational overflow in addition");
  return out;
}

// Compares a/b with c/d exactly without widening, via the continued
// fraction expansion. Only used when cross multiplication overflows.
std::strong_ordering compare_slow(Int a, Int b, Int c, Int d) {
  bool flipped = false;
  for (;;) {
    const Int qa = a / b;
    const Int qc = c / d;
    if (qa != qc) {
      auto r = qa <=> qc;
      return flipped ? 0 <=> r : r;
    }
    const Int ra = a % b;
    const Int rc = c % d;
    if (ra == 0 || rc == 0) {
      if (ra == 0 && rc == 0) return std::strong_ordering::equal;
      auto r = ra == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      return flipped ? 0 <=> r : r;
    }
    // a/b = q + ra/b; compare ra/b vs rc/d  <=>  compare d/rc vs b/ra.
    a = b;
    b = ra;
    c = d;
    d = rc;
    flipped = !flipped;
  }
}

std::string u128_to_string(Int v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InternalError("rational with zero denominator");
  *this = make_reduced(num, den);
}

Rational Rational::make_reduced(Int num, Int den) {
  Rational r;
  if (num == 0) return r;
  const Int g = gcd128(num, den);
  r.num_ = num / g;
  r.den_ = den / g;
  return r;
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw InternalError("reciprocal of zero");
  Rational r;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
  if (den_ == 1) return u128_to_string(num_);
  return u128_to_string(num_) + "/" + u128_to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (rhs.num_ == 0) return *this;
  if (num_ == 0) return *this = rhs;
  if (den_ == rhs.den_) {
    *this = make_reduced(checked_add(num_, rhs.num_), den_);
    return *this;
  }
  const Int g = gcd128(den_, rhs.den_);
  const Int lhs_scale = rhs.den_ / g;
  const Int rhs_scale = den_ / g;
  const Int den = checked_mul(den_, lhs_scale);
  const Int num = checked_add(checked_mul(num_, lhs_scale), checked_mul(rhs.num_, rhs_scale));
  *this = make_reduced(num, den);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  Int lhs;
  Int rhs;
  if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) && !__builtin_mul_overflow(b.num_, a.den_, &rhs)) {
    return lhs <=> rhs;
  }
  return compare_slow(a.num_, a.den_, b.num_, b.den_);
}

}  // namespace divcar
