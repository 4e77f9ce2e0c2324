#pragma once

/**
 * @file fraction.hpp
 * @brief Exact reduced fractions over arbitrary-precision integers.
 *
 * A Fraction is always stored in lowest terms with a positive denominator,
 * and zero is uniquely 0/1. Comparison is by cross-multiplication on
 * unbounded integers, so Stern-Brocot convergents never overflow.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eudoxus {

using BigInt = boost::multiprecision::cpp_int;

class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Fraction(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Fraction(std::int64_t n, std::int64_t d) : Fraction(BigInt(n), BigInt(d)) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    // Split off the integer part so huge numerators keep full relative precision.
    BigInt q = num_ / den_;
    BigInt r = num_ % den_;
    return static_cast<double>(q) + static_cast<double>(r) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  Fraction operator-() const { return Fraction(-num_, den_, raw_tag{}); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num_ == 0) throw std::domain_error("Fraction: division by zero");
    return Fraction(a.num_ * b.den_, a.den_ * b.num_);
  }
  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
  Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.to_string(); }

  /// Parses "p", "p/q", or a finite decimal such as "-22.5".
  static Fraction parse(std::string_view text);

 private:
  struct raw_tag {};
  Fraction(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw std::domain_error("Fraction: zero denominator");
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g < 0) g = -g;
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

/// Three-way comparison of reduced fractions by cross-multiplication.
inline std::strong_ordering compare(const Fraction& p, const Fraction& q) { return p <=> q; }

inline Fraction Fraction::parse(std::string_view text) {
  auto fail = [&]() -> Fraction {
    throw std::invalid_argument("Fraction: cannot parse '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Fraction out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!digits_only(p) || !digits_only(q)) return fail();
    out = Fraction(BigInt(std::string(p)), BigInt(std::string(q)));
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !digits_only(ip)) || (!fp.empty() && !digits_only(fp))) return fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
    out = Fraction(whole * scale + frac, scale);
  } else {
    if (!digits_only(body)) return fail();
    out = Fraction(BigInt(std::string(body)), BigInt(1));
  }
  return negative ? -out : out;
}

}  // namespace eudoxus
