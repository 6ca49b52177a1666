#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace fbs {

/// Small exact rational used on paths, where denominators stay tiny.
using Rational = boost::rational<std::int64_t>;

/// Arbitrary-precision rational for integration and dimension products.
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q)
{
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// "p/q" form, or "p" when integral.
inline std::string to_string(const BigRational& q)
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

} // namespace fbs
