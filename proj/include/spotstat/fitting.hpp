#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spotstat/distributions.hpp"
#include "spotstat/errors.hpp"
#include "spotstat/time_series.hpp"

namespace spotstat::distfit {

using DistParams = std::variant<GaussianParams, QGaussianParams, AlphaStableParams,
                                LogNormalParams, InverseGammaParams, GammaParams,
                                FisherFParams>;

struct DistributionFit {
    Family family = Family::gaussian;
    DistParams params;
    double log_likelihood = 0.0;
    double kl_to_empirical = 0.0;
    bool converged = false;
};

struct FitOptions {
    bool pin_mu = false;             // keep the location fixed at 0 (detrended data)
    std::size_t histogram_bins = 201;
    double histogram_range_sigmas = 8.0;
    std::size_t max_iterations = 4000;
    double tolerance = 1e-9;
};

/// Thrown when the simplex fails to converge from every start; carries the
/// best parameters seen so far.
class FitError : public NumericalError {
public:
    FitError(const std::string& what, DistributionFit best)
        : NumericalError(what), best_so_far(std::move(best)) {}
    DistributionFit best_so_far;
};

/// Density at x for a fitted model. For alpha-stable fits this builds a
/// fresh inversion grid per call; prefer make_density for repeated use.
double pdf(const DistributionFit& fit, double x);

/// Reusable density evaluator (one inversion grid for alpha-stable fits).
std::function<double(double)> make_density(const DistributionFit& fit);

/// Empirical density histogram used for the KL comparisons:
/// `histogram_bins` bins over [mu - k sigma, mu + k sigma], with the lower
/// edge clipped at 0 for all-positive data so every occupied bin center
/// stays inside positive-support families.
Histogram empirical_histogram(std::span<const double> values, const FitOptions& opts = {});

/// D_KL = sum r_i ln(r_i / s_i) dx_i over occupied bins, s evaluated at bin
/// centers. Throws NumericalError("support mismatch") if the model density
/// vanishes on an occupied bin.
double kl_divergence(const Histogram& empirical, const DistributionFit& fit);
/// Same definition with a binned model density (bins must coincide).
double kl_divergence(const Histogram& empirical, const Histogram& model);

/// Maximum-likelihood fit via multi-start Nelder-Mead. Starting points:
/// location = sample median, scale from the interquartile range,
/// q0 in {1.2, 1.5, 1.8} and alpha0 in {1.3, 1.6, 1.9}.
DistributionFit fit_mle(std::span<const double> values, Family family, const FitOptions& opts = {});
DistributionFit fit_mle(const TimeSeries& series, Family family, const FitOptions& opts = {});

struct ModelSelection {
    std::vector<DistributionFit> ranked;  // ascending KL divergence
    std::vector<std::pair<Family, std::string>> failures;
};

/// Fits every family and ranks by KL divergence to the shared empirical
/// histogram; individual family failures are recorded, not fatal.
ModelSelection select_model(std::span<const double> values, const std::vector<Family>& families,
                            const FitOptions& opts = {});
ModelSelection select_model(const TimeSeries& series, const std::vector<Family>& families,
                            const FitOptions& opts = {});

}  // namespace spotstat::distfit
