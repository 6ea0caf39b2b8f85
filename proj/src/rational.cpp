#include "csup/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace csup {

namespace {

using u128 = unsigned __int128;

u128 abs128(__int128 v) { return v < 0 ? -(u128)v : (u128)v; }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMin64 = std::numeric_limits<long long>::min();
constexpr __int128 kMax64 = std::numeric_limits<long long>::max();

}  // namespace

Rat Rat::of(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    Rat r;
    return r;
  }
  u128 g = gcd128(abs128(n), (u128)d);
  n /= (__int128)g;
  d /= (__int128)g;
  if (n < kMin64 || n > kMax64 || d > kMax64)
    throw RatOverflow("Rat: value exceeds 64-bit range after reduction");
  Rat r;
  r.num_ = (long long)n;
  r.den_ = (long long)d;
  return r;
}

long long Rat::floor_ll() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

long long Rat::ceil_ll() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rat::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

Rat Rat::parse(const std::string& text) {
  size_t i = 0;
  auto fail = [&]() -> void {
    throw std::invalid_argument("not a rational: '" + text + "'");
  };
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= text.size() || !std::isdigit((unsigned char)text[i])) fail();
  __int128 num = 0;
  while (i < text.size() && std::isdigit((unsigned char)text[i])) {
    num = num * 10 + (text[i] - '0');
    if (num > kMax64) fail();
    ++i;
  }
  __int128 den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (i >= text.size() || !std::isdigit((unsigned char)text[i])) fail();
    den = 0;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) {
      den = den * 10 + (text[i] - '0');
      if (den > kMax64) fail();
      ++i;
    }
    if (den == 0) fail();
  }
  if (i != text.size()) fail();
  return of(negative ? -num : num, den);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace csup
