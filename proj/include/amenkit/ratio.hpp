#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "amenkit/errors.hpp"

namespace amenkit {

// Exact rational number on 64-bit components.
//
// Invariants: denominator > 0, gcd(|num|, den) == 1.  Every decider in this
// library compares cardinality ratios with Ratio; no floating point enters a
// verdict.  Intermediate products run in 128-bit and overflow of the reduced
// result throws overflow_error instead of wrapping.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Ratio(std::int64_t num, std::int64_t den) { assign(num, den); }

  static Ratio of_sizes(std::size_t num, std::size_t den) {
    return Ratio(checked_cast(num), checked_cast(den));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  // Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw error("Ratio: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Ratio operator-() const {
    Ratio r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  // "p/q", or just "p" for integers.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p" or "p/q" with an optional leading minus sign.
  static Ratio parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Ratio(std::stoll(text));
      std::size_t used_n = 0, used_d = 0;
      const std::int64_t n = std::stoll(text.substr(0, slash), &used_n);
      const std::int64_t d = std::stoll(text.substr(slash + 1), &used_d);
      if (used_n != slash || used_d != text.size() - slash - 1) {
        throw parse_error("Ratio: trailing characters in '" + text + "'");
      }
      return Ratio(n, d);
    } catch (const std::invalid_argument&) {
      throw parse_error("Ratio: cannot parse '" + text + "'");
    } catch (const std::out_of_range&) {
      throw parse_error("Ratio: value out of range in '" + text + "'");
    }
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  using i128 = __int128;

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw error("Ratio: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : num;
    den_ = g ? den / g : den;
  }

  static std::int64_t checked_cast(std::size_t v) {
    if (v > static_cast<std::size_t>(INT64_MAX)) {
      throw overflow_error("Ratio: size exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
  }

  static Ratio from_i128(i128 num, i128 den) {
    if (den == 0) throw error("Ratio: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) {
      throw overflow_error("Ratio: value not representable in 64 bits");
    }
    Ratio r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace amenkit
