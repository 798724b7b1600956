#include "spotstat/superstat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotstat/errors.hpp"

namespace spotstat::superstat {

namespace {

constexpr double kInvE = 0.36787944117144233;

enum class LocalMoment { skewness, kurtosis };

std::vector<MomentCurvePoint> local_moment_curve(const TimeSeries& series,
                                                 std::span<const double> windows_hours,
                                                 LocalMoment which) {
    const std::size_t n = series.size();
    const double res_h = series.resolution_hours();
    std::vector<MomentCurvePoint> curve;
    curve.reserve(windows_hours.size());

    for (double w_hours : windows_hours) {
        const auto w = static_cast<std::size_t>(std::llround(w_hours / res_h));
        if (w < 4) throw ValidationError("local moment curve: window below 4 samples");
        if (w > n / 8) throw ValidationError("local moment curve: window above n/8 samples");

        const std::size_t n_seg = n / w;  // trailing partial segment discarded
        double sum = 0.0, sum_sq = 0.0;
        std::size_t used = 0, skipped = 0;
        for (std::size_t j = 0; j < n_seg; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < w; ++i) mean += series.values[j * w + i];
            mean /= static_cast<double>(w);
            double m2 = 0.0, m3 = 0.0, m4 = 0.0;
            for (std::size_t i = 0; i < w; ++i) {
                const double d = series.values[j * w + i] - mean;
                const double d2 = d * d;
                m2 += d2;
                m3 += d2 * d;
                m4 += d2 * d2;
            }
            m2 /= static_cast<double>(w);
            m3 /= static_cast<double>(w);
            m4 /= static_cast<double>(w);
            if (!(m2 > 0.0)) {
                ++skipped;
                continue;
            }
            const double v = which == LocalMoment::skewness ? m3 / (m2 * std::sqrt(m2))
                                                            : m4 / (m2 * m2);
            sum += v;
            sum_sq += v * v;
            ++used;
        }
        if (skipped * 2 > n_seg) {
            throw NumericalError("local moment curve: more than half the segments degenerate at " +
                                 std::to_string(w_hours) + " h");
        }
        if (used == 0) {
            throw NumericalError("local moment curve: no usable segments at " +
                                 std::to_string(w_hours) + " h");
        }

        MomentCurvePoint pt;
        pt.window_hours = static_cast<double>(w) * res_h;
        pt.value = sum / static_cast<double>(used);
        pt.segments = used;
        if (used > 1) {
            const double var = std::max(sum_sq / static_cast<double>(used) - pt.value * pt.value, 0.0);
            pt.std_error = std::sqrt(var / static_cast<double>(used));
        }
        curve.push_back(pt);
    }
    return curve;
}

double significance(const MomentCurvePoint& pt) {
    if (pt.std_error > 0.0) return std::abs(pt.value) / pt.std_error;
    return std::abs(pt.value) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

/// First robust zero crossing among the in-range curve points, linearly
/// interpolated; nullopt when none qualifies.
std::optional<double> robust_crossing(std::span<const MomentCurvePoint> curve, double lo_hours,
                                      double hi_hours, double min_significance) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].window_hours >= lo_hours && curve[i].window_hours <= hi_hours) {
            idx.push_back(i);
        }
    }
    if (idx.size() < 2) return std::nullopt;

    auto significant_sign_exists = [&](std::size_t from, std::size_t to, int sign) {
        for (std::size_t k = from; k <= to; ++k) {
            const auto& pt = curve[idx[k]];
            const int s = (pt.value > 0.0) - (pt.value < 0.0);
            if (s == sign && significance(pt) >= min_significance) return true;
        }
        return false;
    };

    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        const auto& a = curve[idx[k]];
        const auto& b = curve[idx[k + 1]];
        if (a.value == 0.0) {
            const int before = k > 0 ? ((curve[idx[k - 1]].value > 0.0) -
                                        (curve[idx[k - 1]].value < 0.0))
                                     : 0;
            const int after = (b.value > 0.0) - (b.value < 0.0);
            if (before != 0 && after != 0 && before != after) return a.window_hours;
            if (k == 0 && after != 0) return a.window_hours;
            continue;
        }
        if (a.value * b.value < 0.0) {
            const int sign_a = a.value > 0.0 ? 1 : -1;
            if (significant_sign_exists(0, k, sign_a) &&
                significant_sign_exists(k + 1, idx.size() - 1, -sign_a)) {
                const double t = a.window_hours +
                                 (0.0 - a.value) * (b.window_hours - a.window_hours) /
                                     (b.value - a.value);
                return t;
            }
        }
    }
    return std::nullopt;
}

std::string curve_extrema_note(std::span<const MomentCurvePoint> curve) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& pt : curve) {
        mn = std::min(mn, pt.value);
        mx = std::max(mx, pt.value);
    }
    return "curve extrema [" + std::to_string(mn) + ", " + std::to_string(mx) + "]";
}

double interpolate_acf(std::span<const AcfPoint> acf, double lag_hours) {
    if (acf.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (lag_hours <= acf.front().lag_hours) return acf.front().correlation;
    for (std::size_t i = 1; i < acf.size(); ++i) {
        if (acf[i].lag_hours >= lag_hours) {
            const double w = (lag_hours - acf[i - 1].lag_hours) /
                             (acf[i].lag_hours - acf[i - 1].lag_hours);
            return acf[i - 1].correlation * (1.0 - w) + acf[i].correlation * w;
        }
    }
    return acf.back().correlation;
}

}  // namespace

std::vector<MomentCurvePoint> local_skewness_curve(const TimeSeries& series,
                                                   std::span<const double> windows_hours) {
    return local_moment_curve(series, windows_hours, LocalMoment::skewness);
}

std::vector<MomentCurvePoint> local_kurtosis_curve(const TimeSeries& series,
                                                   std::span<const double> windows_hours) {
    return local_moment_curve(series, windows_hours, LocalMoment::kurtosis);
}

std::vector<double> default_windows_hours(const TimeSeries& series) {
    const double res_h = series.resolution_hours();
    const std::size_t n = series.size();
    std::vector<double> windows;
    std::size_t last = 0;
    const double step = std::pow(10.0, 1.0 / 24.0);
    for (double w = 4.0; w <= static_cast<double>(n) / 8.0; w *= step) {
        const auto samples = static_cast<std::size_t>(std::llround(w));
        if (samples == last) continue;
        last = samples;
        windows.push_back(static_cast<double>(samples) * res_h);
    }
    return windows;
}

double short_time_tau(const TimeSeries& series, double max_lag_hours, TauMethod method) {
    const auto acf = autocorrelation(series, max_lag_hours);

    if (method == TauMethod::log_linear_fit) {
        // exponential fit over the first decade of the decay (C in [0.1, 1])
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t m = 0;
        for (const auto& pt : acf) {
            if (pt.correlation < 0.1) break;
            const double y = std::log(pt.correlation);
            sx += pt.lag_hours;
            sy += y;
            sxx += pt.lag_hours * pt.lag_hours;
            sxy += pt.lag_hours * y;
            ++m;
        }
        if (m < 3) throw NumericalError("short_time_tau: decay too fast for a log-linear fit");
        const double denom = static_cast<double>(m) * sxx - sx * sx;
        const double slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
        if (!(slope < 0.0)) throw NumericalError("short_time_tau: non-decaying autocorrelation");
        return -1.0 / slope;
    }

    for (std::size_t k = 1; k < acf.size(); ++k) {
        if (acf[k].correlation < kInvE) {
            const double c0 = acf[k - 1].correlation;
            const double c1 = acf[k].correlation;
            const double w = (c0 - kInvE) / (c0 - c1);
            return acf[k - 1].lag_hours + w * (acf[k].lag_hours - acf[k - 1].lag_hours);
        }
    }
    throw NumericalError("short_time_tau: no decorrelation within horizon of " +
                         std::to_string(max_lag_hours) + " h");
}

double long_time_T(std::span<const MomentCurvePoint> skew_curve, const CrossingOptions& opts) {
    if (skew_curve.size() < 2) throw ValidationError("long_time_T: need at least 2 curve points");
    const auto t = robust_crossing(skew_curve, opts.lo_hours, opts.hi_hours, opts.min_significance);
    if (!t) {
        throw NumericalError("long_time_T: no robust sign change of the local skewness in [" +
                             std::to_string(opts.lo_hours) + ", " + std::to_string(opts.hi_hours) +
                             "] h; " + curve_extrema_note(skew_curve));
    }
    return *t;
}

TimeSeries volatility_series(const TimeSeries& series, double T_hours) {
    const double res_h = series.resolution_hours();
    const auto t_samples = static_cast<std::size_t>(std::llround(T_hours / res_h));
    if (t_samples < 8) throw ValidationError("volatility_series: T must span at least 8 samples");
    if (series.size() < 8 * t_samples) {
        throw ValidationError("volatility_series: series must span at least 8 windows");
    }

    const std::size_t n_win = series.size() / t_samples;
    TimeSeries beta;
    beta.start = series.start;
    beta.resolution_minutes = static_cast<double>(t_samples) * series.resolution_minutes;
    beta.label = series.label + " beta";
    beta.values.reserve(n_win);
    for (std::size_t j = 0; j < n_win; ++j) {
        double mean = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < t_samples; ++i) {
            const double v = series.values[j * t_samples + i];
            mean += v;
            sq += v * v;
        }
        mean /= static_cast<double>(t_samples);
        const double var = sq / static_cast<double>(t_samples) - mean * mean;
        if (!(var > 0.0)) {
            throw NumericalError("volatility_series: degenerate window " + std::to_string(j));
        }
        beta.values.push_back(1.0 / var);
    }
    return beta;
}

double entropic_index(const TimeSeries& beta_series) {
    if (beta_series.size() < 16) {
        throw ValidationError("entropic_index: need at least 16 volatility values");
    }
    double m1 = 0.0, m2 = 0.0;
    for (double b : beta_series.values) {
        m1 += b;
        m2 += b * b;
    }
    const auto n = static_cast<double>(beta_series.size());
    m1 /= n;
    m2 /= n;
    return m2 / (m1 * m1);
}

distfit::ModelSelection fit_volatility_distribution(const TimeSeries& beta_series,
                                                    bool include_extended) {
    for (double b : beta_series.values) {
        if (!(b > 0.0)) throw ValidationError("fit_volatility_distribution: beta must be positive");
    }
    std::vector<distfit::Family> families{distfit::Family::log_normal,
                                          distfit::Family::inverse_gamma};
    if (include_extended) {
        families.push_back(distfit::Family::gamma);
        families.push_back(distfit::Family::fisher_f);
    }
    auto selection = distfit::select_model(beta_series, families);
    if (selection.ranked.empty()) {
        std::string msg = "fit_volatility_distribution: all fits failed:";
        for (const auto& [fam, err] : selection.failures) {
            msg += " [" + distfit::family_name(fam) + "] " + err;
        }
        throw NumericalError(msg);
    }
    return selection;
}

SuperstatResult superstat_pipeline(const TimeSeries& detrended, const SuperstatOptions& opts) {
    SuperstatResult result;

    const double max_lag = std::min(opts.max_lag_hours, detrended.duration_hours() / 2.0);
    try {
        result.price_acf = autocorrelation(detrended, max_lag);
    } catch (const std::exception& e) {
        result.stage_errors["autocorrelation"] = e.what();
        return result;
    }

    try {
        result.tau_hours = short_time_tau(detrended, max_lag, opts.tau_method);
    } catch (const std::exception& e) {
        result.stage_errors["short_time_tau"] = e.what();
    }

    std::vector<double> windows = opts.windows_hours;
    if (windows.empty()) windows = default_windows_hours(detrended);
    try {
        result.skew_curve = local_skewness_curve(detrended, windows);
        result.kurt_curve = local_kurtosis_curve(detrended, windows);
    } catch (const std::exception& e) {
        result.stage_errors["local_moment_curves"] = e.what();
        return result;
    }

    try {
        result.T_hours = long_time_T(result.skew_curve, opts.t_search);
    } catch (const std::exception& e) {
        result.stage_errors["long_time_T"] = e.what();
    }
    if (!result.skew_curve.empty()) {
        result.early_crossing_hours =
            robust_crossing(result.skew_curve, result.skew_curve.front().window_hours,
                            opts.t_search.lo_hours, opts.t_search.min_significance);
    }

    if (result.T_hours) {
        try {
            result.beta_series = volatility_series(detrended, *result.T_hours);
        } catch (const std::exception& e) {
            result.stage_errors["volatility_series"] = e.what();
        }
    }
    if (result.beta_series) {
        try {
            result.q_bar = entropic_index(*result.beta_series);
        } catch (const std::exception& e) {
            result.stage_errors["entropic_index"] = e.what();
        }
        try {
            result.beta_fits = fit_volatility_distribution(*result.beta_series,
                                                           opts.extended_beta_fits);
        } catch (const std::exception& e) {
            result.stage_errors["fit_volatility_distribution"] = e.what();
        }
        try {
            const double beta_max_lag =
                result.beta_series->resolution_hours() *
                static_cast<double>(result.beta_series->size() - 1);
            result.beta_acf = autocorrelation(*result.beta_series,
                                              std::min(beta_max_lag, 10.0 * *result.T_hours));
        } catch (const std::exception& e) {
            result.stage_errors["beta_autocorrelation"] = e.what();
        }
    }

    // Validity: tau << T and the volatility decorrelates slower than the
    // price at lag tau.
    if (result.tau_hours && result.T_hours && !result.beta_acf.empty()) {
        const double tau = *result.tau_hours;
        const double c_beta = interpolate_acf(result.beta_acf, tau);
        const double c_price = interpolate_acf(result.price_acf, tau);
        result.validity = tau < *result.T_hours && c_beta > c_price;
    }
    return result;
}

}  // namespace spotstat::superstat
