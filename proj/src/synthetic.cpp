#include "spotstat/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "spotstat/errors.hpp"

namespace spotstat::synth {

namespace {

/// Standardized innovation with tunable skewness: a centred, scaled Gamma
/// draw (skewness 2/sqrt(shape)), or a plain normal when skewness is ~0.
class SkewedInnovation {
public:
    void set_skewness(double skewness) {
        skewness_ = skewness;
        const double s = std::abs(skewness_);
        if (s > 1e-3) {
            shape_ = 4.0 / (s * s);
            gamma_ = std::gamma_distribution<double>(shape_, 1.0);
        }
    }

    double operator()(std::mt19937_64& rng) {
        if (std::abs(skewness_) <= 1e-3) return normal_(rng);
        const double g = (gamma_(rng) - shape_) / std::sqrt(shape_);
        return skewness_ > 0.0 ? g : -g;
    }

private:
    double skewness_ = 0.0;
    double shape_ = 1.0;
    std::gamma_distribution<double> gamma_;
    std::normal_distribution<double> normal_;
};

}  // namespace

double SuperstatProcessConfig::entropic_index() const {
    if (law == VolatilityLaw::log_normal) {
        return std::exp(dispersion * dispersion);
    }
    // gamma with shape k: <b^2>/<b>^2 = (k+1)/k, with k = 1/dispersion^2
    const double k = 1.0 / (dispersion * dispersion);
    return (k + 1.0) / k;
}

TimeSeries superstat_process(const SuperstatProcessConfig& cfg) {
    if (cfg.n_samples < 16) throw ValidationError("superstat_process: n_samples too small");
    if (!(cfg.regime_hours > 0.0)) throw ValidationError("superstat_process: bad regime length");

    const double res_h = cfg.resolution_minutes / 60.0;

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    std::exponential_distribution<double> regime_length(res_h / cfg.regime_hours);
    SkewedInnovation innovation;

    double mean_sigma;
    const double k = 1.0 / (cfg.dispersion * cfg.dispersion);
    std::gamma_distribution<double> gamma_beta(k, 1.0 / k);  // mean-1 beta
    if (cfg.law == SuperstatProcessConfig::VolatilityLaw::log_normal) {
        // beta ~ logN(0, disp) => sigma = beta^{-1/2} ~ logN(0, disp/2)
        mean_sigma = std::exp(cfg.dispersion * cfg.dispersion / 8.0);
    } else {
        // E[beta^{-1/2}] = Gamma(k - 1/2) / Gamma(k) * sqrt(k)
        mean_sigma = std::exp(std::lgamma(k - 0.5) - std::lgamma(k) + 0.5 * std::log(k));
    }

    TimeSeries out;
    out.start = cfg.start;
    out.resolution_minutes = cfg.resolution_minutes;
    out.label = "synthetic superstat";
    out.values.resize(cfg.n_samples);

    const double rho = cfg.ar1;
    const double drive = std::sqrt(std::max(1.0 - rho * rho, 0.0));
    double eps = 0.0;
    double sigma = mean_sigma;
    std::size_t remaining = 0;  // samples left in the current regime
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        if (remaining == 0) {
            // regime durations are exponential with the configured mean, so
            // boundaries fall anywhere relative to analysis windows
            remaining = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(regime_length(rng))));
            if (cfg.law == SuperstatProcessConfig::VolatilityLaw::log_normal) {
                sigma = std::exp(-0.5 * cfg.dispersion * normal(rng));
            } else {
                sigma = 1.0 / std::sqrt(gamma_beta(rng));
            }
            // clamped so innovations never get spiky enough to produce
            // near-degenerate window variances
            const double skew = cfg.kernel_skewness -
                                cfg.skew_volatility_coupling * (sigma - mean_sigma) / mean_sigma;
            innovation.set_skewness(std::clamp(skew, -1.5, 1.5));
        }
        --remaining;
        eps = rho * eps + drive * innovation(rng);
        out.values[i] = cfg.base_level + cfg.scale * sigma * eps;
    }
    return out;
}

std::vector<double> q_gaussian_sample(std::size_t n, const distfit::QGaussianParams& params,
                                      std::uint64_t seed) {
    if (!(params.q > 1.0 && params.q < 3.0)) {
        throw ValidationError("q_gaussian_sample: q must lie in (1, 3)");
    }
    const double nu = (3.0 - params.q) / (params.q - 1.0);
    const double scale = 1.0 / std::sqrt(params.c * (3.0 - params.q));
    std::mt19937_64 rng(seed);
    std::student_t_distribution<double> student(nu);
    std::vector<double> out(n);
    for (auto& v : out) v = params.mu + scale * student(rng);
    return out;
}

TimeSeries white_noise(std::size_t n, double resolution_minutes, std::uint64_t seed, double sigma) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    TimeSeries out;
    out.start = 1420070400;
    out.resolution_minutes = resolution_minutes;
    out.label = "white noise";
    out.values.resize(n);
    for (auto& v : out.values) v = normal(rng);
    return out;
}

weather::WeatherSeries coupled_weather(const TimeSeries& price, double coupling,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const std::size_t n = price.size();
    weather::WeatherSeries out;
    out.start = price.start;
    out.resolution_minutes = price.resolution_minutes;
    out.label = "synthetic weather";
    out.f_param.resize(n);
    out.cwt.resize(n);

    // smoothed price level; high f when the local price runs low
    double level = 0.0;
    const double alpha = 1.0 / 24.0;
    double mean_price = 0.0;
    for (double v : price.values) mean_price += v;
    mean_price /= static_cast<double>(n);
    double scale = 0.0;
    for (double v : price.values) scale += (v - mean_price) * (v - mean_price);
    scale = std::sqrt(scale / static_cast<double>(n));
    if (!(scale > 0.0)) scale = 1.0;

    double smooth_noise = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        level = (1.0 - alpha) * level + alpha * (price.values[i] - mean_price) / scale;
        smooth_noise = 0.95 * smooth_noise + 0.05 * normal(rng);
        const double f = 12.0 + 6.0 * (-coupling * level + 4.0 * smooth_noise);
        out.f_param[i] = std::max(0.0, f);
    }

    // weather types persist in blocks; westerly favoured when f is high
    const auto res_h = price.resolution_hours();
    const auto mean_block = static_cast<double>(std::max(1.0, 18.0 / res_h));
    std::size_t i = 0;
    while (i < n) {
        std::geometric_distribution<int> geom(1.0 / mean_block);
        const std::size_t block = std::min<std::size_t>(n - i, 1 + geom(rng));
        const double f_here = out.f_param[i];
        weather::CwtType type;
        const double u = uniform(rng);
        if (f_here > 14.0) {
            type = u < 0.55 ? weather::CwtType::W
                            : (u < 0.75 ? weather::CwtType::SW : weather::CwtType::Cyclonic);
        } else if (f_here < 9.0) {
            type = u < 0.55 ? weather::CwtType::Anticyclonic
                            : (u < 0.75 ? weather::CwtType::E : weather::CwtType::SE);
        } else {
            const std::array<weather::CwtType, 5> mids{weather::CwtType::N, weather::CwtType::NE,
                                                       weather::CwtType::S, weather::CwtType::NW,
                                                       weather::CwtType::Mixed};
            type = mids[static_cast<std::size_t>(u * 5.0) % 5];
        }
        for (std::size_t k = 0; k < block; ++k) out.cwt[i + k] = type;
        i += block;
    }
    return out;
}

TimeSeries coupled_residual_load(const TimeSeries& raw_price, double slope, double intercept,
                                 double noise_sd, std::uint64_t seed) {
    if (!(slope != 0.0)) throw ValidationError("coupled_residual_load: slope must be non-zero");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sd);
    TimeSeries out;
    out.start = raw_price.start;
    out.resolution_minutes = raw_price.resolution_minutes;
    out.label = "synthetic residual load";
    out.values.resize(raw_price.size());
    for (std::size_t i = 0; i < raw_price.size(); ++i) {
        out.values[i] = (raw_price.values[i] - intercept) / slope + noise(rng);
    }
    return out;
}

}  // namespace spotstat::synth
