#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>

namespace deltaef {

// Exact scalars. Expression templates are disabled so the types behave as
// plain value scalars inside Eigen expressions.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline bool is_integer(const RatVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integer(v[i])) return false;
  return true;
}

// Exact floor; the GMP backend keeps denominators positive.
inline Int rat_floor(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int t = n / d;
  if (n % d != 0 && n < 0) t -= 1;
  return t;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num) / Rat(den);
}

// Accepts "n" or "n/d" with optional sign, as emitted by the JSON writers.
inline Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(Int(text));
  Int num(text.substr(0, slash));
  Int den(text.substr(slash + 1));
  return make_rat(num, den);
}

inline std::string rat_to_string(const Rat& q) { return q.str(); }

inline RatMatrix to_rat(const IntMatrix& m) { return m.cast<Rat>(); }
inline RatVector to_rat(const IntVector& v) { return v.cast<Rat>(); }

// Exact truncation back to integers; throws when a fractional entry remains.
inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw std::invalid_argument("fractional entry in integer conversion");
  return numerator(q);
}

inline IntVector to_int(const RatVector& v) {
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) throw std::invalid_argument("fractional entry in integer conversion");
    out[i] = numerator(v[i]);
  }
  return out;
}

}  // namespace deltaef
