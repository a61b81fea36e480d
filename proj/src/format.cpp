#include "unirank/format.hpp"

#include <cstdio>
#include <numeric>

#include "unirank/error.hpp"

namespace unirank {

std::string located(const std::string& source, std::size_t line, const std::string& message) {
  return source + ":" + std::to_string(line) + ": " + message;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  std::string text(buffer);
  if (!text.empty() && text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text;
}

bool Fraction::equivalent(const Fraction& other) const {
  const Fraction a = reduced();
  const Fraction b = other.reduced();
  return a.numerator == b.numerator && a.denominator == b.denominator;
}

Fraction Fraction::reduced() const {
  if (denominator == 0) return *this;
  std::int64_t g = std::gcd(numerator, denominator);
  if (g == 0) g = 1;
  Fraction out{numerator / g, denominator / g};
  if (out.denominator < 0) {
    out.numerator = -out.numerator;
    out.denominator = -out.denominator;
  }
  return out;
}

double Fraction::value() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string Fraction::str() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

}  // namespace unirank
