#pragma once

#include <functional>
#include <vector>

namespace spotstat::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    std::size_t max_iterations = 2000;
    double tolerance = 1e-8;       // stop when the simplex value spread falls below this
    double initial_step = 0.25;    // per-coordinate simplex offset
};

/// Derivative-free simplex minimizer (reflection / expansion / contraction /
/// shrink). The best vertex is never discarded, so the running minimum is
/// non-increasing; on_improvement, when set, sees every new best value.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts = {},
                             const std::function<void(double)>& on_improvement = nullptr);

}  // namespace spotstat::detail
