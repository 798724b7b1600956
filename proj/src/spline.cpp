#include "spotstat/detail/spline.hpp"

#include <stdexcept>

namespace spotstat::detail {

std::vector<double> natural_cubic_spline(std::span<const double> knot_x,
                                         std::span<const double> knot_y,
                                         std::size_t n_eval) {
    const std::size_t m = knot_x.size();
    if (m != knot_y.size() || m < 2) {
        throw std::invalid_argument("natural_cubic_spline: need >= 2 knots");
    }
    for (std::size_t i = 1; i < m; ++i) {
        if (!(knot_x[i] > knot_x[i - 1])) {
            throw std::invalid_argument("natural_cubic_spline: knots must be strictly increasing");
        }
    }

    // Second derivatives via the standard tridiagonal system (Thomas solve).
    std::vector<double> h(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) h[i] = knot_x[i + 1] - knot_x[i];

    std::vector<double> m2(m, 0.0);  // second derivatives, natural BC: m2[0] = m2[m-1] = 0
    if (m > 2) {
        const std::size_t k = m - 2;  // interior unknowns
        std::vector<double> diag(k), rhs(k), upper(k);
        for (std::size_t i = 0; i < k; ++i) {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((knot_y[i + 2] - knot_y[i + 1]) / h[i + 1] -
                            (knot_y[i + 1] - knot_y[i]) / h[i]);
        }
        for (std::size_t i = 1; i < k; ++i) {
            const double w = h[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m2[k] = rhs[k - 1] / diag[k - 1];
        for (std::size_t i = k - 1; i-- > 0;) {
            m2[i + 1] = (rhs[i] - upper[i] * m2[i + 2]) / diag[i];
        }
    }

    std::vector<double> out(n_eval);
    std::size_t seg = 0;
    for (std::size_t j = 0; j < n_eval; ++j) {
        const double x = static_cast<double>(j);
        while (seg + 2 < m && x > knot_x[seg + 1]) ++seg;
        const double dx = knot_x[seg + 1] - knot_x[seg];
        const double a = (knot_x[seg + 1] - x) / dx;
        const double b = (x - knot_x[seg]) / dx;
        out[j] = a * knot_y[seg] + b * knot_y[seg + 1] +
                 ((a * a * a - a) * m2[seg] + (b * b * b - b) * m2[seg + 1]) * (dx * dx) / 6.0;
    }
    return out;
}

}  // namespace spotstat::detail
