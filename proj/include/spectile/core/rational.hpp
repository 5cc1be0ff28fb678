#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "spectile/core/error.hpp"

namespace spectile {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RVec = std::vector<Rational>;
using DVec = std::vector<double>;
using RMat = std::vector<RVec>;  // row-major

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline DVec to_double(const RVec& v) {
  DVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

/// Exact rational value of a finite double.
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::MalformedInput, "non-finite number");
  return Rational(x);
}

inline RVec from_double(const DVec& v) {
  RVec out;
  out.reserve(v.size());
  for (double x : v) out.push_back(from_double(x));
  return out;
}

/// Parses "7", "-3/4", "0.125", "1.5e-3" exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::MalformedInput, "not a rational number: '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    if (s[pos] == '.') {
      if (seen_point) throw fail();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits.push_back(s[pos]);
      if (seen_point) ++frac_digits;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  long exponent = 0;
  if (pos < s.size()) {
    const std::string exp_text = s.substr(pos + 1);
    if (exp_text.empty()) throw fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    if (exponent > 4000 || exponent < -4000) throw fail();
  }
  Rational value{Integer(digits)};
  const long shift = exponent - frac_digits;
  Integer power = 1;
  for (long i = 0; i < std::labs(shift); ++i) power *= 10;
  value = shift >= 0 ? value * Rational(power) : value / Rational(power);
  return negative ? Rational(-value) : value;
}

/// "p/q" or "p" form, round-trippable through parse_rational.
inline std::string format_rational(const Rational& q) { return q.str(); }

inline Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(const DVec& a, const DVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a) {
  std::vector<T> out(a);
  for (auto& x : out) x = -x;
  return out;
}

template <class T, class S>
std::vector<T> scaled(const std::vector<T>& a, const S& s) {
  std::vector<T> out(a);
  for (auto& x : out) x *= s;
  return out;
}

inline double norm(const DVec& v) { return std::sqrt(dot(v, v)); }

inline bool is_zero(const RVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Scales a nonzero rational vector to the unique primitive integer vector
/// with the same direction.
inline RVec primitive(const RVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    g = boost::multiprecision::gcd(g, n);
    ints.push_back(n);
  }
  RVec out(v.size());
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

}  // namespace spectile
