#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace unirank {

/// Fixed-point rendering with `decimals` digits.
///
/// Conversion goes through the C library, which rounds the exact binary value
/// and breaks exact ties to even. Negative zero (including values that round
/// to zero from below) prints without a sign.
std::string format_fixed(double value, int decimals);

/// An exact, deliberately unreduced fraction: 2/6 stays 2/6.
struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  bool operator==(const Fraction&) const = default;

  /// Value comparison by cross multiplication (1/3 equivalent to 2/6).
  bool equivalent(const Fraction& other) const;
  Fraction reduced() const;
  double value() const;
  std::string str() const;  // "num/den"
};

}  // namespace unirank
