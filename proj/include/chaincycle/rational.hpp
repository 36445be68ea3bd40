#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaincycle {

struct RationalOverflow : std::runtime_error {
  RationalOverflow() : std::runtime_error("rational overflow") {}
};

// Exact rational number. Numerator/denominator are kept reduced with a
// positive denominator. Intermediates go through 128-bit arithmetic and
// anything that would not fit back into 64 bits throws RationalOverflow;
// the cost models used here have small denominators, so in practice this
// never triggers on valid inputs.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  // "p/q" with q > 0, or just "p" when integral.
  std::string str() const;
  double to_double() const { return double(num_) / double(den_); }

  // Accepts "p", "p/q" and decimal notation like "1.5" (parsed as a
  // base-10 rational, never through floating point).
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace chaincycle
