#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spotstat::detail {

/// Natural cubic spline (zero second derivative at both ends) through
/// strictly increasing knots. Evaluates on the integer grid 0..n_eval-1.
std::vector<double> natural_cubic_spline(std::span<const double> knot_x,
                                         std::span<const double> knot_y,
                                         std::size_t n_eval);

}  // namespace spotstat::detail
