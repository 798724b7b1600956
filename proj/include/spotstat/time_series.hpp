#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spotstat {

/// Uniformly sampled series. Timestamps are implicit:
/// t_i = start + i * resolution, with start in epoch seconds (UTC).
struct TimeSeries {
    std::int64_t start = 0;
    double resolution_minutes = 60.0;
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    double resolution_hours() const { return resolution_minutes / 60.0; }
    double duration_hours() const { return static_cast<double>(values.size()) * resolution_hours(); }
    /// Epoch seconds of sample i.
    double timestamp_at(std::size_t i) const {
        return static_cast<double>(start) + static_cast<double>(i) * resolution_minutes * 60.0;
    }
};

/// Density-normalized histogram: sum(density_i * width_i) == 1.
/// `normalization` keeps the in-range sample count so raw counts can be recovered.
struct Histogram {
    std::vector<double> bin_edges;  // n+1 strictly increasing edges
    std::vector<double> densities;  // n non-negative values
    double normalization = 0.0;

    std::size_t bins() const { return densities.size(); }
    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

/// Population-convention sample moments (divisor n throughout).
/// Skewness and kurtosis carry defined-flags instead of propagating NaN:
/// both are undefined for a zero-variance sample, kurtosis additionally
/// needs at least 4 samples.
struct MomentSummary {
    double mean = 0.0;
    double stddev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    std::size_t count = 0;
    bool skewness_defined = false;
    bool kurtosis_defined = false;
};

/// One normalized autocorrelation sample, C(lag)/C(0).
struct AcfPoint {
    double lag_hours = 0.0;
    double correlation = 0.0;
};

MomentSummary moments(std::span<const double> values);
MomentSummary moments(const TimeSeries& series);

Histogram make_histogram(std::span<const double> values, std::size_t bins,
                         std::optional<std::pair<double, double>> range = std::nullopt);
Histogram make_histogram(const TimeSeries& series, std::size_t bins,
                         std::optional<std::pair<double, double>> range = std::nullopt);

/// Biased (divide by n) autocorrelation estimate, C(k)/C(0) for k = 0..max_lag.
/// The mean is subtracted internally; computed via FFT convolution.
/// Throws NumericalError for a zero-variance series.
std::vector<double> autocorrelation(std::span<const double> values, std::size_t max_lag);
std::vector<AcfPoint> autocorrelation(const TimeSeries& series, double max_lag_hours);

}  // namespace spotstat
