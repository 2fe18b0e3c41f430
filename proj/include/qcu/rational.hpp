#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

namespace qcu {

using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number of unbounded size.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are
/// stored inline; anything larger is promoted to a shared immutable
/// BigRational. The representation is always normalized (den > 0, lowest
/// terms), so equality is structural.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by intent
  Rational(int value) : num_(value) {}           // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const BigRational& value);

  /// Parses "p", "-p", "p/q" (optional surrounding whitespace).
  static Rational parse(std::string_view text);

  /// Canonical text form: "p" for integers, "p/q" otherwise.
  std::string str() const;
  BigRational to_big() const;
  double to_double() const;

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const;
  /// Numerator of a compact integer value; meaningless otherwise.
  std::int64_t to_int64() const noexcept { return num_; }
  int sign() const;
  /// True while the value is held in the inline 64-bit representation.
  bool is_compact() const noexcept { return !big_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
  Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
  Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
  Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t r = 0;
    if (a.small_integers(b) && !__builtin_add_overflow(a.num_, b.num_, &r) && r != kMin) return Rational(r);
    return add(a, b);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    std::int64_t r = 0;
    if (a.small_integers(b) && !__builtin_sub_overflow(a.num_, b.num_, &r) && r != kMin) return Rational(r);
    return sub(a, b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t r = 0;
    if (a.small_integers(b) && !__builtin_mul_overflow(a.num_, b.num_, &r) && r != kMin) return Rational(r);
    return mul(a, b);
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return div(a, b); }
  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  bool small_integers(const Rational& b) const noexcept { return !big_ && !b.big_ && den_ == 1 && b.den_ == 1; }
  static Rational add(const Rational& a, const Rational& b);
  static Rational sub(const Rational& a, const Rational& b);
  static Rational mul(const Rational& a, const Rational& b);
  static Rational div(const Rational& a, const Rational& b);
  static Rational from_big(BigRational value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace qcu
