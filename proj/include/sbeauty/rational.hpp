#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sbeauty {

// Exact fraction over 64-bit integers, always lowest terms, denominator > 0.
// Intermediates use 128-bit arithmetic; a result that does not fit back into
// 64 bits throws std::overflow_error. There is no floating point in here and
// no implicit rounding anywhere.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ < 0 ? -1 : num_ > 0 ? 1 : 0; }

  Rational operator-() const { return Rational(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "p/q" in lowest terms; integers are printed without the "/1".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p" or "p/q" with an optional leading sign.
  static Rational parse(std::string_view text) {
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos)
      return Rational(parse_int(text), 1);
    return Rational(parse_int(text.substr(0, slash)),
                    parse_int(text.substr(slash + 1)));
  }

 private:
  using i128 = __int128;

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_i128(i128(num), i128(den));
  }

  static Rational from_i128(i128 num, i128 den) {
    if (den < 0) { num = -num; den = -den; }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Rational: value out of 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  static std::int64_t parse_int(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("Rational: empty number");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; ++i; }
    if (i == s.size()) throw std::invalid_argument("Rational: bare sign");
    i128 v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("Rational: bad digit in \"" + std::string(s) + "\"");
      v = v * 10 + (s[i] - '0');
      if (v > i128(INT64_MAX) + 1)
        throw std::overflow_error("Rational: literal out of range");
    }
    if (neg) v = -v;
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Rational: literal out of range");
    return static_cast<std::int64_t>(v);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational operator*(std::int64_t k, const Rational& r) { return Rational(k) * r; }

}  // namespace sbeauty
