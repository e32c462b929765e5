// SPDX-License-Identifier: Apache-2.0

#include "igsr/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace igsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double feasible_extent(double a, double b, double c, double start)
{
    if (a == 0.0) {
        if (b <= 0.0) return kInf;
        return std::max(start, -c / b);
    }

    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        // no real root: f keeps the sign of a everywhere
        return a < 0.0 ? kInf : start;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : r1;
    if (r1 > r2) std::swap(r1, r2);

    if (a > 0.0) return std::max(start, r2);
    // concave: feasible outside (r1, r2)
    if (start <= r1) return std::max(start, r1);
    if (start >= r2) return kInf;
    return start;
}

}  // namespace igsr
