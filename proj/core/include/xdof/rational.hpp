// Exact rational numbers over 64-bit integers.
//
// Values are always kept in lowest terms with a positive denominator.
// Intermediate products use 128-bit integers; results that do not fit in
// 64 bits raise ArithmeticOverflow instead of wrapping.
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>

namespace xdof {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p/q", or "p" when the denominator is 1.
  std::string str() const;
  // Parses "p", "p/q" or "-p/q"; throws InvalidInput on malformed text.
  static Rational parse(const std::string& text);

 private:
  __extension__ typedef __int128 Wide;
  static Rational from_wide(Wide num, Wide den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational min_of(std::initializer_list<Rational> values);
Rational max_of(std::initializer_list<Rational> values);
Rational abs(const Rational& r);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace xdof
