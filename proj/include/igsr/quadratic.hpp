// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace igsr {

/// For f(x) = a x^2 + b x + c with f(start) <= 0, returns the supremum of
/// the interval [start, y] on which f stays <= 0 (+inf when unbounded).
/// Roots are taken in cancellation-free form.
double feasible_extent(double a, double b, double c, double start = 0.0);

}  // namespace igsr
