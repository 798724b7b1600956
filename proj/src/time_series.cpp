#include "spotstat/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spotstat/detail/fft.hpp"
#include "spotstat/errors.hpp"

namespace spotstat {

MomentSummary moments(std::span<const double> values) {
    if (values.empty()) throw ValidationError("moments: empty series");

    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("moments: non-finite value");
        sum += v;
    }
    const double mu = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mu;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    MomentSummary out;
    out.mean = mu;
    out.stddev = std::sqrt(m2);
    out.count = values.size();
    if (m2 > 0.0) {
        out.skewness = m3 / (m2 * std::sqrt(m2));
        out.skewness_defined = true;
        if (values.size() >= 4) {
            out.kurtosis = m4 / (m2 * m2);
            out.kurtosis_defined = true;
        }
    }
    return out;
}

MomentSummary moments(const TimeSeries& series) { return moments(std::span<const double>(series.values)); }

Histogram make_histogram(std::span<const double> values, std::size_t bins,
                         std::optional<std::pair<double, double>> range) {
    if (values.empty()) throw ValidationError("make_histogram: empty series");
    if (bins < 2) throw ValidationError("make_histogram: need at least 2 bins");

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
        if (!(lo < hi)) throw ValidationError("make_histogram: invalid range");
    } else {
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = *mx;
        if (lo == hi) throw NumericalError("make_histogram: degenerate support (all values equal)");
    }

    Histogram h;
    h.bin_edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.bin_edges[i] = lo + static_cast<double>(i) * width;
    }
    h.bin_edges.back() = hi;  // avoid rounding drift on the last edge

    std::vector<double> counts(bins, 0.0);
    double included = 0.0;
    for (double v : values) {
        if (v < lo || v > hi) continue;
        auto idx = static_cast<std::size_t>((v - lo) / width);
        if (idx >= bins) idx = bins - 1;  // right edge is inclusive
        counts[idx] += 1.0;
        included += 1.0;
    }
    if (included == 0.0) throw NumericalError("make_histogram: no samples inside range");

    h.densities.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        h.densities[i] = counts[i] / (included * h.bin_width(i));
    }
    h.normalization = included;
    return h;
}

Histogram make_histogram(const TimeSeries& series, std::size_t bins,
                         std::optional<std::pair<double, double>> range) {
    return make_histogram(std::span<const double>(series.values), bins, range);
}

std::vector<double> autocorrelation(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n < 2) throw ValidationError("autocorrelation: series too short");
    if (max_lag >= n) throw ValidationError("autocorrelation: max_lag must be below the series length");

    double mu = 0.0;
    for (double v : values) mu += v;
    mu /= static_cast<double>(n);

    const std::size_t m = detail::next_pow2(2 * n);
    std::vector<std::complex<double>> buf(m, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) buf[i] = values[i] - mu;

    detail::fft_inplace(buf, false);
    for (auto& z : buf) z = z * std::conj(z);
    detail::fft_inplace(buf, true);

    // biased estimator: divide by n for every lag
    const double c0 = buf[0].real() / static_cast<double>(n);
    if (!(c0 > 0.0)) throw NumericalError("autocorrelation: zero-variance series");

    std::vector<double> acf(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        acf[k] = (buf[k].real() / static_cast<double>(n)) / c0;
    }
    acf[0] = 1.0;
    return acf;
}

std::vector<AcfPoint> autocorrelation(const TimeSeries& series, double max_lag_hours) {
    const double res_h = series.resolution_hours();
    if (res_h <= 0.0) throw ValidationError("autocorrelation: non-positive resolution");
    auto max_lag = static_cast<std::size_t>(std::floor(max_lag_hours / res_h));
    if (max_lag >= series.size()) max_lag = series.size() - 1;
    const auto acf = autocorrelation(std::span<const double>(series.values), max_lag);
    std::vector<AcfPoint> out(acf.size());
    for (std::size_t k = 0; k < acf.size(); ++k) {
        out[k] = {static_cast<double>(k) * res_h, acf[k]};
    }
    return out;
}

}  // namespace spotstat
