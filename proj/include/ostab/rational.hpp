#pragma once

// Exact arbitrary-precision integer and rational arithmetic. Coefficient
// sequences and lattice points must stay exact: the recurrence/closed-form
// identity is tested as rational equality, and iteration visits points
// omega^n * x far outside 64-bit range.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace ostab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

// q^n for n >= 0, exact. q^0 == 1 for every q (empty product).
inline Rational rational_pow(const Rational& q, unsigned n) {
  using boost::multiprecision::pow;
  return Rational(pow(numerator(q), n), pow(denominator(q), n));
}

inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p/q", plain integers, and decimal literals: "3/8", "-2", "0.25".
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&text]() -> Rational {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  };
  if (text.empty()) return bad();

  const auto is_integer = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den)) return bad();
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
  }

  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string ip = text.substr(0, dot);
    const std::string fp = text.substr(dot + 1);
    bool negative = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
    if (ip.empty() && fp.empty()) return bad();
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c))) return bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt value = (ip.empty() ? BigInt(0) : BigInt(ip)) * scale +
                   (fp.empty() ? BigInt(0) : BigInt(fp));
    if (negative) value = -value;
    return Rational(value, scale);
  }

  if (!is_integer(text)) return bad();
  return Rational(BigInt(text));
}

}  // namespace ostab
