// Density expressions "C*n^-a/b" evaluated to exact rationals (rounded down
// at 1e-9 granularity), so experiments can mirror power-law densities while
// all downstream arithmetic stays rational.
#pragma once

#include <string>

#include "ctlab/rat.hpp"

namespace ctlab {

Rat parse_density(const std::string& expr, long long n);

}  // namespace ctlab
