#include "spotstat/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "spotstat/detail/nelder_mead.hpp"

namespace spotstat::distfit {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double w = pos - static_cast<double>(i);
    return sorted[i] * (1.0 - w) + sorted[i + 1] * w;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct DataSummary {
    double median = 0.0;
    double iqr_sigma = 1.0;  // IQR / 1.349, a robust Gaussian-calibrated scale
    double mean = 0.0;
    double var = 1.0;
    double log_mean = 0.0;
    double log_sd = 1.0;
    bool all_positive = false;
};

DataSummary summarize(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    DataSummary s;
    s.median = quantile_sorted(sorted, 0.5);
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    s.iqr_sigma = std::max(iqr / 1.349, 1e-12);
    const MomentSummary m = moments(values);
    s.mean = m.mean;
    s.var = std::max(m.stddev * m.stddev, 1e-300);
    s.all_positive = sorted.front() > 0.0;
    if (s.all_positive) {
        double lsum = 0.0, lsq = 0.0;
        for (double v : values) {
            const double lv = std::log(v);
            lsum += lv;
            lsq += lv * lv;
        }
        const auto n = static_cast<double>(values.size());
        s.log_mean = lsum / n;
        s.log_sd = std::sqrt(std::max(lsq / n - s.log_mean * s.log_mean, 1e-12));
    }
    return s;
}

bool family_positive_support(Family f) {
    return f == Family::log_normal || f == Family::inverse_gamma || f == Family::gamma ||
           f == Family::fisher_f;
}

/// Encoding between the unconstrained optimizer vector and parameters.
/// Positive quantities ride on a log scale, bounded ones on a logistic one.
DistParams decode(Family family, const std::vector<double>& u, bool pin_mu) {
    switch (family) {
        case Family::gaussian: {
            if (pin_mu) return GaussianParams{0.0, std::exp(u[0])};
            return GaussianParams{u[0], std::exp(u[1])};
        }
        case Family::q_gaussian: {
            QGaussianParams p;
            p.q = 1.0 + 2.0 * sigmoid(u[0]);
            p.c = std::exp(u[1]);
            p.mu = pin_mu ? 0.0 : u[2];
            return p;
        }
        case Family::alpha_stable: {
            AlphaStableParams p;
            p.alpha = 2.0 * sigmoid(u[0]);
            p.c = std::exp(u[1]);
            p.mu = pin_mu ? 0.0 : u[2];
            return p;
        }
        case Family::log_normal: return LogNormalParams{u[0], std::exp(u[1])};
        case Family::inverse_gamma: return InverseGammaParams{std::exp(u[0]), std::exp(u[1])};
        case Family::gamma: return GammaParams{std::exp(u[0]), std::exp(u[1])};
        case Family::fisher_f: return FisherFParams{std::exp(u[0]), std::exp(u[1])};
    }
    throw ValidationError("fit_mle: unknown family");
}

std::vector<std::vector<double>> starting_points(Family family, const DataSummary& s, bool pin_mu) {
    std::vector<std::vector<double>> starts;
    switch (family) {
        case Family::gaussian: {
            if (pin_mu) {
                starts.push_back({std::log(s.iqr_sigma)});
            } else {
                starts.push_back({s.median, std::log(s.iqr_sigma)});
            }
            break;
        }
        case Family::q_gaussian: {
            const double c0 = 1.0 / (2.0 * s.iqr_sigma * s.iqr_sigma);
            for (double q0 : {1.2, 1.5, 1.8}) {
                std::vector<double> u{logit((q0 - 1.0) / 2.0), std::log(c0)};
                if (!pin_mu) u.push_back(s.median);
                starts.push_back(std::move(u));
            }
            break;
        }
        case Family::alpha_stable: {
            const double c0 = std::max(s.iqr_sigma / 1.4, 1e-12);
            for (double a0 : {1.3, 1.6, 1.9}) {
                std::vector<double> u{logit(a0 / 2.0), std::log(c0)};
                if (!pin_mu) u.push_back(s.median);
                starts.push_back(std::move(u));
            }
            break;
        }
        case Family::log_normal: {
            starts.push_back({s.log_mean, std::log(s.log_sd)});
            break;
        }
        case Family::inverse_gamma: {
            const double c0 = std::max(s.mean * s.mean / s.var + 2.0, 2.5);
            const double b0 = std::max(s.mean * (c0 - 1.0), 1e-12);
            starts.push_back({std::log(c0), std::log(b0)});
            starts.push_back({std::log(2.0 * c0), std::log(2.0 * b0)});
            break;
        }
        case Family::gamma: {
            const double k0 = std::max(s.mean * s.mean / s.var, 0.1);
            const double t0 = std::max(s.var / std::max(s.mean, 1e-12), 1e-12);
            starts.push_back({std::log(k0), std::log(t0)});
            starts.push_back({std::log(2.0 * k0), std::log(0.5 * t0)});
            break;
        }
        case Family::fisher_f: {
            starts.push_back({std::log(4.0), std::log(10.0)});
            starts.push_back({std::log(8.0), std::log(6.0)});
            starts.push_back({std::log(2.0), std::log(20.0)});
            break;
        }
    }
    return starts;
}

double log_pdf_dispatch(const DistParams& params, double x) {
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianParams>) return gaussian_log_pdf(p, x);
            else if constexpr (std::is_same_v<T, QGaussianParams>) return q_gaussian_log_pdf(p, x);
            else if constexpr (std::is_same_v<T, LogNormalParams>) return log_normal_log_pdf(p, x);
            else if constexpr (std::is_same_v<T, InverseGammaParams>) return inverse_gamma_log_pdf(p, x);
            else if constexpr (std::is_same_v<T, GammaParams>) return gamma_log_pdf(p, x);
            else if constexpr (std::is_same_v<T, FisherFParams>) return fisher_f_log_pdf(p, x);
            else return -std::numeric_limits<double>::infinity();
        },
        params);
}

/// Mean negative log-likelihood objective for one family.
std::function<double(const std::vector<double>&)> make_objective(Family family,
                                                                 std::span<const double> values,
                                                                 bool pin_mu) {
    const auto n = static_cast<double>(values.size());
    if (family == Family::alpha_stable) {
        return [values, n, pin_mu](const std::vector<double>& u) {
            const auto p = std::get<AlphaStableParams>(decode(Family::alpha_stable, u, pin_mu));
            const AlphaStableDensity dens = AlphaStableDensity::with_default_grid(p);
            double sum = 0.0;
            for (double v : values) sum += dens.log_pdf(v);
            return -sum / n;
        };
    }
    return [family, values, n, pin_mu](const std::vector<double>& u) {
        const DistParams p = decode(family, u, pin_mu);
        double sum = 0.0;
        for (double v : values) sum += log_pdf_dispatch(p, v);
        return -sum / n;
    };
}

}  // namespace

double pdf(const DistributionFit& fit, double x) {
    if (fit.family == Family::alpha_stable) {
        const auto& p = std::get<AlphaStableParams>(fit.params);
        return AlphaStableDensity::with_default_grid(p).pdf(x);
    }
    const double lp = log_pdf_dispatch(fit.params, x);
    return std::isfinite(lp) ? std::exp(lp) : 0.0;
}

std::function<double(double)> make_density(const DistributionFit& fit) {
    if (fit.family == Family::alpha_stable) {
        const auto& p = std::get<AlphaStableParams>(fit.params);
        auto dens = std::make_shared<AlphaStableDensity>(AlphaStableDensity::with_default_grid(p));
        return [dens](double x) { return dens->pdf(x); };
    }
    const DistParams params = fit.params;
    return [params](double x) {
        const double lp = log_pdf_dispatch(params, x);
        return std::isfinite(lp) ? std::exp(lp) : 0.0;
    };
}

Histogram empirical_histogram(std::span<const double> values, const FitOptions& opts) {
    const MomentSummary m = moments(values);
    if (!(m.stddev > 0.0)) {
        throw NumericalError("empirical histogram: degenerate support (zero variance)");
    }
    double lo = m.mean - opts.histogram_range_sigmas * m.stddev;
    const double hi = m.mean + opts.histogram_range_sigmas * m.stddev;
    const bool all_positive = *std::min_element(values.begin(), values.end()) > 0.0;
    if (all_positive) lo = std::max(lo, 0.0);
    return make_histogram(values, opts.histogram_bins, std::make_pair(lo, hi));
}

double kl_divergence(const Histogram& empirical, const DistributionFit& fit) {
    const auto dens = make_density(fit);
    const std::size_t n = empirical.bins();

    // Bin-normalize the model mass over the histogram support so the
    // discrete Gibbs inequality holds.
    std::vector<double> model(n);
    double model_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        model[i] = dens(empirical.bin_center(i));
        model_mass += model[i] * empirical.bin_width(i);
    }
    if (!(model_mass > 0.0)) throw NumericalError("kl_divergence: support mismatch");

    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = empirical.densities[i];
        if (r == 0.0) continue;
        const double s = model[i] / model_mass;
        if (!(s > 0.0)) {
            throw NumericalError("kl_divergence: support mismatch, fitted density vanishes on an occupied bin");
        }
        kl += r * std::log(r / s) * empirical.bin_width(i);
    }
    return kl;
}

double kl_divergence(const Histogram& empirical, const Histogram& model) {
    if (empirical.bins() != model.bins()) {
        throw ValidationError("kl_divergence: histograms must share bin edges");
    }
    for (std::size_t i = 0; i < empirical.bin_edges.size(); ++i) {
        if (std::abs(empirical.bin_edges[i] - model.bin_edges[i]) > 1e-12) {
            throw ValidationError("kl_divergence: histograms must share bin edges");
        }
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < empirical.bins(); ++i) {
        const double r = empirical.densities[i];
        if (r == 0.0) continue;
        const double s = model.densities[i];
        if (!(s > 0.0)) {
            throw NumericalError("kl_divergence: support mismatch, model density vanishes on an occupied bin");
        }
        if (r != s) kl += r * std::log(r / s) * empirical.bin_width(i);
    }
    return kl;
}

DistributionFit fit_mle(std::span<const double> values, Family family, const FitOptions& opts) {
    if (values.size() < 100) throw ValidationError("fit_mle: need at least 100 samples");
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("fit_mle: non-finite value");
    }
    const DataSummary summary = summarize(values);
    if (family_positive_support(family) && !summary.all_positive) {
        throw ValidationError("fit_mle: " + family_name(family) + " requires positive data");
    }

    const auto objective = make_objective(family, values, opts.pin_mu);
    detail::NelderMeadOptions nm_opts;
    nm_opts.max_iterations = opts.max_iterations;
    nm_opts.tolerance = opts.tolerance;

    bool any_converged = false;
    double best_value = std::numeric_limits<double>::max();
    std::vector<double> best_u;
    for (const auto& start : starting_points(family, summary, opts.pin_mu)) {
        const auto res = detail::nelder_mead(objective, start, nm_opts);
        any_converged = any_converged || res.converged;
        if (res.value < best_value) {
            best_value = res.value;
            best_u = res.x;
        }
    }

    DistributionFit fit;
    fit.family = family;
    fit.params = decode(family, best_u, opts.pin_mu);
    fit.log_likelihood = -best_value * static_cast<double>(values.size());
    fit.converged = any_converged;
    fit.kl_to_empirical = kl_divergence(empirical_histogram(values, opts), fit);
    if (!any_converged) {
        throw FitError("fit_mle: " + family_name(family) +
                           " optimizer did not converge from any start",
                       fit);
    }
    return fit;
}

DistributionFit fit_mle(const TimeSeries& series, Family family, const FitOptions& opts) {
    return fit_mle(std::span<const double>(series.values), family, opts);
}

ModelSelection select_model(std::span<const double> values, const std::vector<Family>& families,
                            const FitOptions& opts) {
    if (families.empty()) throw ValidationError("select_model: need at least one family");
    ModelSelection out;
    for (Family f : families) {
        try {
            out.ranked.push_back(fit_mle(values, f, opts));
        } catch (const std::exception& e) {
            out.failures.emplace_back(f, e.what());
        }
    }
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [](const DistributionFit& a, const DistributionFit& b) {
                         return a.kl_to_empirical < b.kl_to_empirical;
                     });
    return out;
}

ModelSelection select_model(const TimeSeries& series, const std::vector<Family>& families,
                            const FitOptions& opts) {
    return select_model(std::span<const double>(series.values), families, opts);
}

}  // namespace spotstat::distfit
