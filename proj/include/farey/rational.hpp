#pragma once

// Exact arithmetic types shared by the exact code paths.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace farey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Serialises as "p/q" with q > 0, always including the denominator.
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// 2^-n as an exact rational.
inline Rational dyadic(unsigned n) { return Rational(BigInt(1), BigInt(1) << n); }

}  // namespace farey
