#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "kwise/errors.hpp"

namespace kwise {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

// "3/8", "1", "0/1" — the wire format for exact probabilities.
inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw domain_error("bad_rational", "zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    throw domain_error("bad_rational", "cannot parse rational: " + s);
  }
}

inline std::string format_rational(const Rational& q) {
  std::string num = numerator(q).str();
  std::string den = denominator(q).str();
  return den == "1" ? num : num + "/" + den;
}

}  // namespace kwise
