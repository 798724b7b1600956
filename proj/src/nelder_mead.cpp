#include "spotstat/detail/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spotstat::detail {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts,
                             const std::function<void(double)>& on_improvement) {
    const std::size_t dim = start.size();
    const std::size_t n_vertices = dim + 1;

    auto safe_eval = [&](const std::vector<double>& x) {
        const double v = objective(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    std::vector<std::vector<double>> simplex(n_vertices, start);
    std::vector<double> values(n_vertices);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = opts.initial_step * std::max(1.0, std::abs(start[i]));
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i < n_vertices; ++i) values[i] = safe_eval(simplex[i]);

    std::vector<std::size_t> order(n_vertices);
    double best_seen = std::numeric_limits<double>::max();

    NelderMeadResult result;
    for (result.iterations = 0; result.iterations < opts.max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n_vertices - 2];

        if (values[best] < best_seen) {
            best_seen = values[best];
            if (on_improvement) on_improvement(best_seen);
        }
        if (values[worst] - values[best] < opts.tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < n_vertices; ++v) {
            if (v == worst) continue;
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
            }
            return x;
        };

        auto reflected = blend(kReflect);
        const double f_reflected = safe_eval(reflected);

        if (f_reflected < values[best]) {
            auto expanded = blend(kExpand);
            const double f_expanded = safe_eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_reflected;
            }
        } else if (f_reflected < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < values[worst];
            auto contracted = blend(outside ? kContract : -kContract);
            const double f_contracted = safe_eval(contracted);
            if (f_contracted < std::min(f_reflected, values[worst])) {
                simplex[worst] = std::move(contracted);
                values[worst] = f_contracted;
            } else {
                // shrink towards the best vertex, which stays in place
                for (std::size_t v = 0; v < n_vertices; ++v) {
                    if (v == best) continue;
                    for (std::size_t i = 0; i < dim; ++i) {
                        simplex[v][i] = simplex[best][i] + kShrink * (simplex[v][i] - simplex[best][i]);
                    }
                    values[v] = safe_eval(simplex[v]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t v = 1; v < n_vertices; ++v) {
        if (values[v] < values[best]) best = v;
    }
    if (values[best] < best_seen && on_improvement) on_improvement(values[best]);
    result.x = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace spotstat::detail
