#include "chaincycle/rational.hpp"

#include <cctype>
#include <numeric>

namespace chaincycle {

namespace {

using i128 = __int128;

std::int64_t clamp64(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw RationalOverflow();
  return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

Rational Rational::operator+(const Rational& o) const {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  i128 g = gcd128(n, d);
  return Rational(clamp64(n / g), clamp64(d / g));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
  i128 n = i128(num_ / g1) * (o.num_ / g2);
  i128 d = i128(den_ / g2) * (o.den_ / g1);
  return Rational(clamp64(n), clamp64(d));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::size_t p1 = 0, p2 = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &p1);
    std::int64_t d = std::stoll(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1)
      throw std::invalid_argument("bad rational literal: " + s);
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = !s.empty() && s[0] == '-';
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() || ip == "-") ip += "0";
    Rational r(std::stoll(ip), 1);
    Rational scale(1, 1);
    Rational frac(0, 1);
    for (char c : fp) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad decimal literal: " + s);
      scale = scale / Rational(10);
      frac += Rational(c - '0') * scale;
    }
    if (neg) frac = -frac;
    return r + frac;
  }
  std::size_t pos = 0;
  std::int64_t n = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad rational literal: " + s);
  return Rational(n);
}

}  // namespace chaincycle
