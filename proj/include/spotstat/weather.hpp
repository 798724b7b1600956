#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spotstat/time_series.hpp"

namespace spotstat::weather {

/// Circulation weather types: eight directional plus two rotational, and a
/// mixed class.
enum class CwtType { N, NE, E, SE, S, SW, W, NW, Cyclonic, Anticyclonic, Mixed };

std::string cwt_name(CwtType t);
std::optional<CwtType> cwt_from_name(std::string_view name);

/// Flow-strength parameter and weather type on the same sampling contract
/// as TimeSeries.
struct WeatherSeries {
    std::int64_t start = 0;
    double resolution_minutes = 60.0;
    std::vector<double> f_param;
    std::vector<CwtType> cwt;
    std::string label;

    std::size_t size() const { return f_param.size(); }
    double resolution_hours() const { return resolution_minutes / 60.0; }
};

/// Price samples paired with the weather sample covering their timestamp
/// (step-function alignment). first_price_index locates the joined window
/// inside the price series so detrended/raw companions can be indexed.
struct JoinedSeries {
    std::int64_t start = 0;
    double resolution_minutes = 60.0;
    std::size_t first_price_index = 0;
    std::vector<double> price;
    std::vector<double> f_param;
    std::vector<CwtType> cwt;
    std::size_t dropped_samples = 0;

    std::size_t size() const { return price.size(); }
};

/// Throws ValidationError when the time ranges do not overlap or the
/// weather resolution is finer than the price resolution.
JoinedSeries align(const TimeSeries& price, const WeatherSeries& weather);

struct ConditionalStats {
    std::string label;
    double f_lo = 0.0;
    double f_hi = 0.0;
    MomentSummary moments;             // on detrended prices
    std::int64_t negative_hours = 0;   // raw price < 0
    std::int64_t high_price_hours = 0; // raw price > mu_raw + 3 sigma_raw
    std::size_t sample_count = 0;
    bool low_count = false;            // fewer than 100 samples
};

/// Per-f-bin statistics. Moments are evaluated on the detrended series,
/// negative- and high-price counts on the raw series with the 3-sigma
/// threshold computed once over the full raw series. detrended/raw must
/// share the sampling contract of the joined price series.
std::vector<ConditionalStats> condition_on_f(const JoinedSeries& joined,
                                             const TimeSeries& detrended, const TimeSeries& raw,
                                             std::span<const double> f_bin_edges);

/// Equal-count (quantile) bin edges for the observed f range.
std::vector<double> equal_count_f_bins(const JoinedSeries& joined, std::size_t n_bins = 10);

struct CwtSegments {
    std::vector<ConditionalStats> segments;  // one per maximal qualifying run
    ConditionalStats pooled;                 // across all qualifying samples
};

/// Maximal runs of the requested weather type persisting at least
/// min_persistence_hours. Kurtosis is not reported (undefined flag);
/// an empty segment list is a valid result.
CwtSegments cwt_segments(const JoinedSeries& joined, const TimeSeries& detrended,
                         const TimeSeries& raw, CwtType type, double min_persistence_hours);

struct JointHistogram {
    std::vector<double> x_edges;  // residual load
    std::vector<double> y_edges;  // price
    std::vector<std::vector<double>> density;  // [x bin][y bin]
};

struct MeritOrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    JointHistogram joint;
};

/// Ordinary least squares of price versus residual load, plus the joint
/// histogram for plotting. Series must be aligned and of equal length >= 100.
MeritOrderFit merit_order_fit(const TimeSeries& raw_price, const TimeSeries& residual_load,
                              std::size_t joint_bins = 60);

}  // namespace spotstat::weather
