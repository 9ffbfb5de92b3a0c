#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace futurity {

// Exact fractions on int64 with gcd normalization. Probabilities that come
// from integer censuses (reel counts over 1000) or from fraction/decimal
// strings in spec files are kept exact; all equilibrium and variance analysis
// downstream runs in double precision.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "n" when the denominator is 1, else "n/d".
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Accepts "a/b", integers, and plain decimals ("0.968", ".5", "-2.25").
  static Rational parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      std::int64_t n = parse_int(text.substr(0, slash));
      std::int64_t d = parse_int(text.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_int(text));
    bool neg = !text.empty() && text[0] == '-';
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (neg) digits = digits.substr(1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
      throw std::invalid_argument("Rational: bad decimal '" + text + "'");
    if (digits.size() > 18)
      throw std::invalid_argument("Rational: too many digits in '" + text + "'");
    std::int64_t n = parse_int(digits);
    std::int64_t d = 1;
    for (std::size_t k = 0; k < frac_len; ++k) d *= 10;
    return Rational(neg ? -n : n, d);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

 private:
  using i128 = __int128;

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("Rational: value does not fit in 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) {
    *this = make(num, den);
  }

  static std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty integer");
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size())
      throw std::invalid_argument("Rational: bad integer '" + s + "'");
    return v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace futurity
