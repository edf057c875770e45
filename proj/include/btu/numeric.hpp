#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace btu {

// Exact arithmetic everywhere a count or coefficient can outgrow 64 bits.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace btu
