#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace polycobar {

/// Exact coefficient ring.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline int sign_of_power(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

} // namespace polycobar
