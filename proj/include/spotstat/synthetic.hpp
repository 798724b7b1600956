#pragma once

#include <cstdint>
#include <vector>

#include "spotstat/distributions.hpp"
#include "spotstat/time_series.hpp"
#include "spotstat/weather.hpp"

namespace spotstat::synth {

/// Superstatistical test-fixture process: a fast AR(1) kernel with skewed
/// innovations, modulated by a volatility that switches in regimes of
/// exponentially distributed duration (mean regime_hours). Calm regimes
/// carry positively skewed innovations and windy (high-volatility) regimes
/// negatively skewed ones, mimicking spike-versus-negative-price asymmetry.
/// Because pooled skewness weights regimes by sigma^3, short windows see
/// the positive average skew and long windows the negative tail, and the
/// sign change of the local skewness lands near the regime scale.
struct SuperstatProcessConfig {
    std::size_t n_samples = 43800;
    double resolution_minutes = 60.0;
    std::int64_t start = 1420070400;  // 2015-01-01T00:00:00Z
    double regime_hours = 96.0;

    enum class VolatilityLaw { log_normal, gamma };
    VolatilityLaw law = VolatilityLaw::log_normal;
    double dispersion = 0.5;   // sdlog of beta (log_normal) or 1/sqrt(shape) (gamma)

    double ar1 = 0.5;                      // within-regime lag-1 correlation
    double kernel_skewness = 1.2;          // innovation skewness in an average regime
    double skew_volatility_coupling = 1.4; // skewness drop per unit of relative sigma excess
    double base_level = 0.0;               // additive level (EUR/MWh for raw-like fixtures)
    double scale = 10.0;                   // overall amplitude
    std::uint64_t seed = 1;

    /// <beta^2>/<beta>^2 of the volatility law, the generator-side entropic index.
    double entropic_index() const;
};

TimeSeries superstat_process(const SuperstatProcessConfig& cfg);

/// iid q-Gaussian draws via the Student-t representation:
/// nu = (3-q)/(q-1), scale = 1/sqrt(c(3-q)).
std::vector<double> q_gaussian_sample(std::size_t n, const distfit::QGaussianParams& params,
                                      std::uint64_t seed);

/// iid standard-normal series on the same sampling contract.
TimeSeries white_noise(std::size_t n, double resolution_minutes, std::uint64_t seed,
                       double sigma = 1.0);

/// Weather fixture loosely coupled to a price-like series: the f-parameter
/// tracks (smoothed) local price depression and weather types persist in
/// blocks, westerly types favoured when f is high and anticyclonic when low.
weather::WeatherSeries coupled_weather(const TimeSeries& price, double coupling,
                                       std::uint64_t seed);

/// Residual-load fixture inverting a linear merit order plus noise.
TimeSeries coupled_residual_load(const TimeSeries& raw_price, double slope, double intercept,
                                 double noise_sd, std::uint64_t seed);

}  // namespace spotstat::synth
