#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

namespace convexforest {

// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;

inline constexpr long kLowerBoundRadicand = 2793745;

// (13384 + 8 sqrt(2793745))^(1/22).
Real Alpha();

// Smallest multiple of 10^-places that is >= x, printed with `places`
// decimals (the convention used for quoting growth constants).
std::string RoundUp(double x, int places);

}  // namespace convexforest
