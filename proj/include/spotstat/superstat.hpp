#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spotstat/fitting.hpp"
#include "spotstat/time_series.hpp"

namespace spotstat::superstat {

/// One point of the local-moment curves: the segment-averaged skewness (or
/// kurtosis) for non-overlapping segments of the given length, with the
/// standard error of that average.
struct MomentCurvePoint {
    double window_hours = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t segments = 0;
};

/// Per-window-size average of the per-segment skewness about the segment
/// mean. Trailing partial segments are discarded; zero-variance segments
/// are skipped, and a window size where more than half the segments are
/// skipped raises NumericalError.
std::vector<MomentCurvePoint> local_skewness_curve(const TimeSeries& series,
                                                   std::span<const double> windows_hours);
/// Same segmentation, averaging the per-segment kurtosis instead.
std::vector<MomentCurvePoint> local_kurtosis_curve(const TimeSeries& series,
                                                   std::span<const double> windows_hours);

/// Log-spaced default window grid: 24 per decade from 4 samples up to n/8.
std::vector<double> default_windows_hours(const TimeSeries& series);

enum class TauMethod {
    crossing,        // first interpolated crossing of C(lag) below 1/e
    log_linear_fit,  // exponential fit over the first decade of decay
};

/// Short superstatistical time: decorrelation time of the series.
double short_time_tau(const TimeSeries& series, double max_lag_hours = 400.0,
                      TauMethod method = TauMethod::crossing);

/// Zero-crossing search for the long superstatistical time. The default
/// window skips the quarter-hourly market's early crossing near 4 h.
/// A crossing counts only when the curve is significantly non-zero on both
/// sides (|value| >= min_significance * std_error); points with zero
/// std_error are treated as exact. Raises NumericalError, listing the curve
/// extrema, when no robust sign change exists in range.
struct CrossingOptions {
    double lo_hours = 24.0;
    double hi_hours = 240.0;
    double min_significance = 4.0;
};
double long_time_T(std::span<const MomentCurvePoint> skew_curve, const CrossingOptions& opts = {});

/// beta_j = 1 / local variance over consecutive non-overlapping windows of
/// length T, aligned to the series start; the output resolution equals T.
TimeSeries volatility_series(const TimeSeries& series, double T_hours);

/// q_bar = <beta^2> / <beta>^2, requires at least 16 values.
double entropic_index(const TimeSeries& beta_series);

/// Ranks log-normal and inverse-Gamma MLE fits of the volatility
/// distribution by KL divergence; Gamma and F families optionally included.
distfit::ModelSelection fit_volatility_distribution(const TimeSeries& beta_series,
                                                    bool include_extended = false);

struct SuperstatOptions {
    double max_lag_hours = 400.0;
    TauMethod tau_method = TauMethod::crossing;
    CrossingOptions t_search = {};
    std::vector<double> windows_hours;  // empty: default grid
    bool extended_beta_fits = false;
};

/// End-to-end result. Stage failures land in stage_errors instead of
/// aborting; the validity flag is true only when tau < T and the volatility
/// autocorrelation decays slower than the price autocorrelation at lag tau.
struct SuperstatResult {
    std::optional<double> tau_hours;
    std::optional<double> T_hours;
    std::optional<double> early_crossing_hours;  // robust crossing below the search window
    std::vector<MomentCurvePoint> skew_curve;
    std::vector<MomentCurvePoint> kurt_curve;
    std::optional<TimeSeries> beta_series;
    std::optional<double> q_bar;
    distfit::ModelSelection beta_fits;
    std::vector<AcfPoint> price_acf;
    std::vector<AcfPoint> beta_acf;
    bool validity = false;
    std::map<std::string, std::string> stage_errors;
};

SuperstatResult superstat_pipeline(const TimeSeries& detrended, const SuperstatOptions& opts = {});

}  // namespace spotstat::superstat
