#include "spotstat/emd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spotstat/detail/spline.hpp"
#include "spotstat/errors.hpp"

namespace spotstat::emd {

namespace {

constexpr int kMaxSifts = 100;

bool is_monotone(std::span<const double> x) {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] < x[i - 1]) inc = false;
        if (x[i] > x[i - 1]) dec = false;
    }
    return inc || dec;
}

std::size_t count_zero_crossings(std::span<const double> x) {
    std::size_t crossings = 0;
    int prev_sign = 0;
    for (double v : x) {
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) ++crossings;
            prev_sign = sign;
        }
    }
    return crossings;
}

/// Envelope through the given extrema, mirror-extending up to two extrema
/// beyond each boundary to tame end swings.
std::vector<double> envelope(const std::vector<std::size_t>& extrema,
                             std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t m = extrema.size();
    std::vector<double> kx, ky;
    kx.reserve(m + 4);
    ky.reserve(m + 4);

    const std::size_t n_mirror = std::min<std::size_t>(2, m);
    for (std::size_t k = n_mirror; k-- > 0;) {
        kx.push_back(-static_cast<double>(extrema[k]));
        ky.push_back(x[extrema[k]]);
    }
    for (std::size_t k = 0; k < m; ++k) {
        kx.push_back(static_cast<double>(extrema[k]));
        ky.push_back(x[extrema[k]]);
    }
    const double right = 2.0 * static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n_mirror; ++k) {
        kx.push_back(right - static_cast<double>(extrema[m - 1 - k]));
        ky.push_back(x[extrema[m - 1 - k]]);
    }
    return detail::natural_cubic_spline(kx, ky, n);
}

/// One sifting pass; returns the extracted IMF and the number of sifts.
std::pair<std::vector<double>, int> sift(std::vector<double> h, double tolerance) {
    int sifts = 0;
    while (sifts < kMaxSifts) {
        const Extrema ext = find_extrema(h);
        if (ext.maxima.empty() || ext.minima.empty()) break;

        const auto upper = envelope(ext.maxima, h);
        const auto lower = envelope(ext.minima, h);

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double mean_env = 0.5 * (upper[i] + lower[i]);
            num += mean_env * mean_env;
            den += h[i] * h[i];
            h[i] -= mean_env;
        }
        ++sifts;

        const double sd = den > 0.0 ? num / den : 0.0;
        if (sd < tolerance && satisfies_imf_criterion(h)) break;
    }
    return {std::move(h), sifts};
}

}  // namespace

Extrema find_extrema(std::span<const double> x) {
    Extrema out;
    const std::size_t n = x.size();
    if (n < 3) return out;

    int prev_dir = 0;           // direction of the last non-flat step
    std::size_t plateau = 0;    // start of the current flat run
    for (std::size_t i = 1; i < n; ++i) {
        const int dir = (x[i] > x[i - 1]) - (x[i] < x[i - 1]);
        if (dir == 0) continue;
        if (prev_dir > 0 && dir < 0) out.maxima.push_back((plateau + i - 1 + 1) / 2);
        if (prev_dir < 0 && dir > 0) out.minima.push_back((plateau + i - 1 + 1) / 2);
        prev_dir = dir;
        plateau = i;
    }
    return out;
}

bool satisfies_imf_criterion(std::span<const double> x) {
    const Extrema ext = find_extrema(x);
    const auto n_ext = ext.maxima.size() + ext.minima.size();
    const auto n_zc = count_zero_crossings(x);
    const auto diff = n_ext > n_zc ? n_ext - n_zc : n_zc - n_ext;
    return diff <= 1;
}

EmdDecomposition decompose(const TimeSeries& series, int max_imfs, double sift_tolerance) {
    if (series.size() < 8) throw ValidationError("decompose: series length must be >= 8");
    if (max_imfs < 1) throw ValidationError("decompose: max_imfs must be >= 1");
    if (!(sift_tolerance > 0.0)) throw ValidationError("decompose: sift_tolerance must be positive");

    EmdDecomposition out;
    std::vector<double> remainder = series.values;

    while (static_cast<int>(out.imfs.size()) < max_imfs) {
        const Extrema ext = find_extrema(remainder);
        if (ext.maxima.size() + ext.minima.size() < 4 || is_monotone(remainder)) break;

        auto [imf, sifts] = sift(remainder, sift_tolerance);
        for (std::size_t i = 0; i < remainder.size(); ++i) remainder[i] -= imf[i];

        TimeSeries ts;
        ts.start = series.start;
        ts.resolution_minutes = series.resolution_minutes;
        ts.values = std::move(imf);
        ts.label = series.label + " imf" + std::to_string(out.imfs.size() + 1);
        out.imfs.push_back(std::move(ts));
        out.sift_counts.push_back(sifts);
    }

    out.residual.start = series.start;
    out.residual.resolution_minutes = series.resolution_minutes;
    out.residual.values = std::move(remainder);
    out.residual.label = series.label + " residual";
    return out;
}

std::pair<TimeSeries, TimeSeries> detrend(const TimeSeries& series, int n_slowest,
                                          double sift_tolerance, int max_imfs) {
    const EmdDecomposition dec = decompose(series, max_imfs, sift_tolerance);
    if (static_cast<int>(dec.imfs.size()) < n_slowest) {
        throw NumericalError("detrend: requested removal of " + std::to_string(n_slowest) +
                             " slowest IMFs but decomposition yielded only " +
                             std::to_string(dec.imfs.size()));
    }

    TimeSeries trend = dec.residual;
    trend.label = series.label + " trend";
    for (int k = 0; k < n_slowest; ++k) {
        const auto& imf = dec.imfs[dec.imfs.size() - 1 - static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < trend.values.size(); ++i) trend.values[i] += imf.values[i];
    }

    TimeSeries detrended = series;
    detrended.label = series.label + " detrended";
    for (std::size_t i = 0; i < detrended.values.size(); ++i) {
        detrended.values[i] -= trend.values[i];
    }
    return {std::move(detrended), std::move(trend)};
}

}  // namespace spotstat::emd
