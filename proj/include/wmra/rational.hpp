#pragma once

#include <numeric>
#include <string>

namespace wmra {

// Reduced fraction with positive denominator. Delivery-time values stay tiny
// (slot counts over N*K products), so 64-bit components are ample.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long n, long long d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return Rational{n, d};
  }

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace wmra
