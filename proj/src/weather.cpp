#include "spotstat/weather.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "spotstat/errors.hpp"

namespace spotstat::weather {

namespace {

constexpr std::array<std::pair<CwtType, const char*>, 11> kCwtNames{{
    {CwtType::N, "N"},
    {CwtType::NE, "NE"},
    {CwtType::E, "E"},
    {CwtType::SE, "SE"},
    {CwtType::S, "S"},
    {CwtType::SW, "SW"},
    {CwtType::W, "W"},
    {CwtType::NW, "NW"},
    {CwtType::Cyclonic, "Cyclonic"},
    {CwtType::Anticyclonic, "Anticyclonic"},
    {CwtType::Mixed, "Mixed"},
}};

/// Hours covered by `samples` price samples, rounded to whole hours.
std::int64_t samples_to_hours(std::size_t samples, double resolution_minutes) {
    return std::llround(static_cast<double>(samples) * resolution_minutes / 60.0);
}

void check_companion(const JoinedSeries& joined, const TimeSeries& companion, const char* name) {
    if (companion.size() < joined.first_price_index + joined.size()) {
        throw ValidationError(std::string("weather: ") + name +
                              " series shorter than the joined window");
    }
    if (std::abs(companion.resolution_minutes - joined.resolution_minutes) > 1e-9) {
        throw ValidationError(std::string("weather: ") + name +
                              " resolution differs from the joined series");
    }
}

ConditionalStats stats_for_indices(const JoinedSeries& joined, const TimeSeries& detrended,
                                   const TimeSeries& raw, std::span<const std::size_t> indices,
                                   double raw_threshold) {
    ConditionalStats out;
    out.sample_count = indices.size();
    out.low_count = indices.size() < 100;

    std::vector<double> det_values;
    det_values.reserve(indices.size());
    std::size_t negative = 0, high = 0;
    for (std::size_t i : indices) {
        const std::size_t k = joined.first_price_index + i;
        det_values.push_back(detrended.values[k]);
        if (raw.values[k] < 0.0) ++negative;
        if (raw.values[k] > raw_threshold) ++high;
    }
    if (!det_values.empty()) out.moments = moments(det_values);
    out.negative_hours = samples_to_hours(negative, joined.resolution_minutes);
    out.high_price_hours = samples_to_hours(high, joined.resolution_minutes);
    return out;
}

}  // namespace

std::string cwt_name(CwtType t) {
    for (const auto& [type, name] : kCwtNames) {
        if (type == t) return name;
    }
    return "unknown";
}

std::optional<CwtType> cwt_from_name(std::string_view name) {
    for (const auto& [type, n] : kCwtNames) {
        if (name == n) return type;
    }
    return std::nullopt;
}

JoinedSeries align(const TimeSeries& price, const WeatherSeries& weather) {
    if (price.values.empty() || weather.size() == 0) {
        throw ValidationError("align: empty input series");
    }
    if (weather.resolution_minutes + 1e-9 < price.resolution_minutes) {
        throw ValidationError("align: weather resolution must not be finer than the price resolution");
    }

    const double w_res_s = weather.resolution_minutes * 60.0;
    const double w_end = static_cast<double>(weather.start) +
                         static_cast<double>(weather.size()) * w_res_s;

    JoinedSeries joined;
    joined.resolution_minutes = price.resolution_minutes;
    joined.first_price_index = price.size();  // sentinel until the first match

    for (std::size_t i = 0; i < price.size(); ++i) {
        const double t = price.timestamp_at(i);
        if (t < static_cast<double>(weather.start) || t >= w_end) {
            ++joined.dropped_samples;
            continue;
        }
        const auto wi = static_cast<std::size_t>((t - static_cast<double>(weather.start)) / w_res_s);
        if (joined.price.empty()) {
            joined.first_price_index = i;
            joined.start = static_cast<std::int64_t>(t);
        } else if (i != joined.first_price_index + joined.price.size()) {
            // weather coverage must be contiguous over the joined window
            throw ValidationError("align: weather coverage has holes inside the price range");
        }
        joined.price.push_back(price.values[i]);
        joined.f_param.push_back(weather.f_param[wi]);
        joined.cwt.push_back(weather.cwt[wi]);
    }
    if (joined.price.empty()) {
        throw ValidationError("align: price and weather series do not overlap in time");
    }
    return joined;
}

std::vector<ConditionalStats> condition_on_f(const JoinedSeries& joined,
                                             const TimeSeries& detrended, const TimeSeries& raw,
                                             std::span<const double> f_bin_edges) {
    if (f_bin_edges.size() < 3) {
        throw ValidationError("condition_on_f: need at least 2 bins");
    }
    for (std::size_t i = 1; i < f_bin_edges.size(); ++i) {
        if (!(f_bin_edges[i] > f_bin_edges[i - 1])) {
            throw ValidationError("condition_on_f: bin edges must be strictly increasing");
        }
    }
    check_companion(joined, detrended, "detrended");
    check_companion(joined, raw, "raw");

    const MomentSummary raw_moments = moments(raw);
    const double threshold = raw_moments.mean + 3.0 * raw_moments.stddev;

    const std::size_t n_bins = f_bin_edges.size() - 1;
    std::vector<std::vector<std::size_t>> members(n_bins);
    for (std::size_t i = 0; i < joined.size(); ++i) {
        const double f = joined.f_param[i];
        if (f < f_bin_edges.front() || f > f_bin_edges.back()) continue;
        auto b = static_cast<std::size_t>(
            std::upper_bound(f_bin_edges.begin(), f_bin_edges.end(), f) - f_bin_edges.begin());
        b = b == 0 ? 0 : b - 1;
        if (b >= n_bins) b = n_bins - 1;
        members[b].push_back(i);
    }

    std::vector<ConditionalStats> out;
    out.reserve(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        ConditionalStats cs = stats_for_indices(joined, detrended, raw, members[b], threshold);
        cs.f_lo = f_bin_edges[b];
        cs.f_hi = f_bin_edges[b + 1];
        cs.label = "f in [" + std::to_string(cs.f_lo) + ", " + std::to_string(cs.f_hi) + ")";
        out.push_back(std::move(cs));
    }
    return out;
}

std::vector<double> equal_count_f_bins(const JoinedSeries& joined, std::size_t n_bins) {
    if (n_bins < 2) throw ValidationError("equal_count_f_bins: need at least 2 bins");
    std::vector<double> sorted = joined.f_param;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    edges.reserve(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) {
        const double pos = static_cast<double>(k) / static_cast<double>(n_bins) *
                           static_cast<double>(sorted.size() - 1);
        const auto i = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(i);
        const double v = i + 1 < sorted.size() ? sorted[i] * (1.0 - w) + sorted[i + 1] * w
                                               : sorted.back();
        edges.push_back(v);
    }
    // quantile ties collapse bins; nudge duplicates apart
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k] <= edges[k - 1]) {
            edges[k] = std::nextafter(edges[k - 1], std::numeric_limits<double>::infinity());
        }
    }
    return edges;
}

CwtSegments cwt_segments(const JoinedSeries& joined, const TimeSeries& detrended,
                         const TimeSeries& raw, CwtType type, double min_persistence_hours) {
    check_companion(joined, detrended, "detrended");
    check_companion(joined, raw, "raw");
    const double res_h = joined.resolution_minutes / 60.0;
    const auto min_samples = static_cast<std::size_t>(
        std::max<long long>(0, std::llround(min_persistence_hours / res_h)));

    const MomentSummary raw_moments = moments(raw);
    const double threshold = raw_moments.mean + 3.0 * raw_moments.stddev;

    CwtSegments out;
    std::vector<std::size_t> pooled;
    std::size_t i = 0;
    while (i < joined.size()) {
        if (joined.cwt[i] != type) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < joined.size() && joined.cwt[j] == type) ++j;
        const std::size_t run = j - i;
        if (run >= std::max<std::size_t>(min_samples, 1)) {
            std::vector<std::size_t> indices(run);
            for (std::size_t k = 0; k < run; ++k) indices[k] = i + k;
            ConditionalStats cs = stats_for_indices(joined, detrended, raw, indices, threshold);
            cs.label = cwt_name(type) + " segment @" + std::to_string(i);
            cs.moments.kurtosis_defined = false;  // too few samples per segment to report
            cs.moments.kurtosis = 0.0;
            out.segments.push_back(std::move(cs));
            pooled.insert(pooled.end(), indices.begin(), indices.end());
        }
        i = j;
    }

    if (!pooled.empty()) {
        out.pooled = stats_for_indices(joined, detrended, raw, pooled, threshold);
    }
    out.pooled.label = cwt_name(type) + " pooled, persistence >= " +
                       std::to_string(min_persistence_hours) + " h";
    return out;
}

MeritOrderFit merit_order_fit(const TimeSeries& raw_price, const TimeSeries& residual_load,
                              std::size_t joint_bins) {
    if (raw_price.size() != residual_load.size()) {
        throw ValidationError("merit_order_fit: series lengths differ");
    }
    if (raw_price.size() < 100) {
        throw ValidationError("merit_order_fit: need at least 100 aligned samples");
    }

    const auto n = static_cast<double>(raw_price.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < raw_price.size(); ++i) {
        mx += residual_load.values[i];
        my += raw_price.values[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < raw_price.size(); ++i) {
        const double dx = residual_load.values[i] - mx;
        sxx += dx * dx;
        sxy += dx * (raw_price.values[i] - my);
    }
    if (!(sxx > 0.0)) throw NumericalError("merit_order_fit: zero-variance residual load");

    MeritOrderFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < raw_price.size(); ++i) {
        const double e = raw_price.values[i] - (fit.intercept + fit.slope * residual_load.values[i]);
        ss_res += e * e;
    }
    fit.slope_std_error = std::sqrt(ss_res / (n - 2.0) / sxx);

    const auto [x_min, x_max] = std::minmax_element(residual_load.values.begin(),
                                                    residual_load.values.end());
    const auto [y_min, y_max] = std::minmax_element(raw_price.values.begin(),
                                                    raw_price.values.end());
    const double x_lo = *x_min, x_hi = *x_max == *x_min ? *x_min + 1.0 : *x_max;
    const double y_lo = *y_min, y_hi = *y_max == *y_min ? *y_min + 1.0 : *y_max;

    auto& joint = fit.joint;
    joint.x_edges.resize(joint_bins + 1);
    joint.y_edges.resize(joint_bins + 1);
    for (std::size_t k = 0; k <= joint_bins; ++k) {
        const double w = static_cast<double>(k) / static_cast<double>(joint_bins);
        joint.x_edges[k] = x_lo + w * (x_hi - x_lo);
        joint.y_edges[k] = y_lo + w * (y_hi - y_lo);
    }
    joint.density.assign(joint_bins, std::vector<double>(joint_bins, 0.0));
    const double cell = (joint.x_edges[1] - joint.x_edges[0]) * (joint.y_edges[1] - joint.y_edges[0]);
    for (std::size_t i = 0; i < raw_price.size(); ++i) {
        auto bx = static_cast<std::size_t>((residual_load.values[i] - x_lo) /
                                           (joint.x_edges[1] - joint.x_edges[0]));
        auto by = static_cast<std::size_t>((raw_price.values[i] - y_lo) /
                                           (joint.y_edges[1] - joint.y_edges[0]));
        if (bx >= joint_bins) bx = joint_bins - 1;
        if (by >= joint_bins) by = joint_bins - 1;
        joint.density[bx][by] += 1.0;
    }
    for (auto& col : joint.density) {
        for (double& d : col) d /= n * cell;
    }
    return fit;
}

}  // namespace spotstat::weather
