#include "qcu/rational.hpp"

#include "qcu/errors.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>

namespace qcu {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

BigRational big_of(std::int64_t num, std::int64_t den) {
  return BigRational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (num == std::numeric_limits<std::int64_t>::min() ||
      den == std::numeric_limits<std::int64_t>::min()) {
    *this = from_big(big_of(num, den));
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational::Rational(const BigRational& value) { *this = from_big(value); }

Rational Rational::from_big(BigRational value) {
  using boost::multiprecision::cpp_int;
  const cpp_int& n = boost::multiprecision::numerator(value);
  const cpp_int& d = boost::multiprecision::denominator(value);
  Rational r;
  if (boost::multiprecision::abs(n) <= kMax && d <= kMax) {
    r.num_ = n.convert_to<std::int64_t>();
    r.den_ = d.convert_to<std::int64_t>();
  } else {
    r.big_ = std::make_shared<const BigRational>(std::move(value));
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("malformed rational '" + std::string(text) + "'");
    }
    std::string owned(s.front() == '+' ? s.substr(1) : s);
    return boost::multiprecision::cpp_int(owned);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_big(BigRational(parse_int(text)));
  auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("rational with zero denominator: '" + std::string(text) + "'");
  auto num = parse_int(text.substr(0, slash));
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return from_big(BigRational(num, den));
}

std::string Rational::str() const {
  if (big_) {
    const auto& d = boost::multiprecision::denominator(*big_);
    if (d == 1) return boost::multiprecision::numerator(*big_).str();
    return big_->str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

BigRational Rational::to_big() const { return big_ ? *big_ : big_of(num_, den_); }

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Rational::is_integer() const {
  return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (big_) return from_big(-*big_);
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational Rational::add(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) {
      std::int64_t num = 0;
      if (!__builtin_add_overflow(a.num_, b.num_, &num) && num != std::numeric_limits<std::int64_t>::min()) {
        const std::int64_t g = std::gcd(num, a.den_);
        Rational r;
        r.num_ = num / g;
        r.den_ = a.den_ / g;
        return r;
      }
    }
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const i128 num = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
    i128 den = static_cast<i128>(a.den_) * (b.den_ / g);
    const u128 h = gcd128(abs128(num), static_cast<u128>(den));
    const i128 n = h == 0 ? 0 : num / static_cast<i128>(h);
    den = h == 0 ? 1 : den / static_cast<i128>(h);
    if (fits(n) && fits(den)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(den);
      return r;
    }
  }
  return Rational::from_big(a.to_big() + b.to_big());
}

Rational Rational::sub(const Rational& a, const Rational& b) {
  if (!b.big_) {
    Rational nb = b;
    nb.num_ = -b.num_;
    return a + nb;
  }
  return a + (-b);
}

Rational Rational::mul(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &num) &&
        !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &den) &&
        num != std::numeric_limits<std::int64_t>::min()) {
      Rational r;
      r.num_ = num;
      r.den_ = den;
      return r;
    }
  }
  return Rational::from_big(a.to_big() * b.to_big());
}

Rational Rational::div(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("rational division by zero");
  if (!b.big_) {
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  return Rational::from_big(a.to_big() / b.to_big());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  // Normalized: a promoted value never equals an inline one.
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const BigRational x = a.to_big();
  const BigRational y = b.to_big();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace qcu
