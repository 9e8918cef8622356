#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qmr {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    return boost::multiprecision::pow(base, exp);
}

}  // namespace qmr
