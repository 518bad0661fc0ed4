#include "xdof/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

#include "xdof/error.hpp"

namespace xdof {
namespace {

__extension__ typedef __int128 Wide;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw InvalidInput("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw ArithmeticOverflow("Rational: result exceeds 64 bits");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  *this = from_wide(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  *this = from_wide(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(Wide(num_) * o.num_, Wide(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw InvalidInput("Rational: division by zero");
  *this = from_wide(Wide(num_) * o.den_, Wide(den_) * o.num_);
  return *this;
}

Rational Rational::operator-() const { return from_wide(-Wide(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty()) throw InvalidInput("Rational: cannot parse '" + text + "'");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw InvalidInput("Rational: cannot parse '" + text + "'");
    }
    if (pos != s.size()) throw InvalidInput("Rational: cannot parse '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational min_of(std::initializer_list<Rational> values) {
  if (values.size() == 0) throw InvalidInput("min_of: empty list");
  Rational best = *values.begin();
  for (const auto& v : values) best = v < best ? v : best;
  return best;
}

Rational max_of(std::initializer_list<Rational> values) {
  if (values.size() == 0) throw InvalidInput("max_of: empty list");
  Rational best = *values.begin();
  for (const auto& v : values) best = v > best ? v : best;
  return best;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace xdof
