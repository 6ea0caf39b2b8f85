#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace csup {

class RatOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number with 64-bit numerator/denominator.
///
/// Every value is kept normalized (denominator > 0, gcd(num, den) == 1).
/// Arithmetic runs through 128-bit intermediates; a result whose reduced
/// form does not fit in 64 bits raises RatOverflow instead of wrapping.
class Rat {
public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : Rat(of(n, d)) {}

  static Rat of(__int128 n, __int128 d);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  Rat abs() const { return num_ < 0 ? Rat(-num_, den_) : *this; }

  // Rounding toward -inf / +inf. Exact for all representable values.
  long long floor_ll() const;
  long long ceil_ll() const;
  bool is_integer() const { return den_ == 1; }

  friend Rat operator+(const Rat& x, const Rat& y) {
    return of((__int128)x.num_ * y.den_ + (__int128)y.num_ * x.den_,
              (__int128)x.den_ * y.den_);
  }
  friend Rat operator-(const Rat& x, const Rat& y) {
    return of((__int128)x.num_ * y.den_ - (__int128)y.num_ * x.den_,
              (__int128)x.den_ * y.den_);
  }
  friend Rat operator*(const Rat& x, const Rat& y) {
    return of((__int128)x.num_ * y.num_, (__int128)x.den_ * y.den_);
  }
  friend Rat operator/(const Rat& x, const Rat& y) {
    if (y.num_ == 0) throw std::domain_error("Rat: division by zero");
    return of((__int128)x.num_ * y.den_, (__int128)x.den_ * y.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }

  Rat& operator+=(const Rat& y) { return *this = *this + y; }
  Rat& operator-=(const Rat& y) { return *this = *this - y; }
  Rat& operator*=(const Rat& y) { return *this = *this * y; }

  friend bool operator==(const Rat& x, const Rat& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
  friend bool operator<(const Rat& x, const Rat& y) {
    return (__int128)x.num_ * y.den_ < (__int128)y.num_ * x.den_;
  }
  friend bool operator>(const Rat& x, const Rat& y) { return y < x; }
  friend bool operator<=(const Rat& x, const Rat& y) { return !(y < x); }
  friend bool operator>=(const Rat& x, const Rat& y) { return !(x < y); }

  /// Lowest-terms decimal form: "p" when integral, otherwise "p/q".
  std::string str() const;

  /// Parses "p" or "p/q" (optional leading '-'). Throws std::invalid_argument.
  static Rat parse(const std::string& text);

private:
  long long num_;
  long long den_;
};

inline const Rat& min(const Rat& x, const Rat& y) { return y < x ? y : x; }
inline const Rat& max(const Rat& x, const Rat& y) { return x < y ? y : x; }

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace csup
