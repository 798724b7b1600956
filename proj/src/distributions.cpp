#include "spotstat/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "spotstat/detail/fft.hpp"
#include "spotstat/errors.hpp"

namespace spotstat::distfit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
    if (!cond) throw ValidationError(msg);
}

/// ln Gamma(a - 1/2) - ln Gamma(a), stable for large a where the direct
/// lgamma difference cancels catastrophically.
double lgamma_ratio_half(double a) {
    if (a > 1e7) {
        // Gamma(a-1/2)/Gamma(a) ~ a^(-1/2) (1 + 3/(8a) + ...)
        return -0.5 * std::log(a) + std::log1p(3.0 / (8.0 * a));
    }
    return std::lgamma(a - 0.5) - std::lgamma(a);
}

/// Leading tail coefficient K with f(x) ~ K |x|^-(1+alpha) for alpha < 2.
double stable_tail_coefficient(double alpha, double c) {
    return std::tgamma(alpha + 1.0) * std::sin(kPi * alpha / 2.0) * std::pow(c, alpha) / kPi;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::q_gaussian: return "qGaussian";
        case Family::alpha_stable: return "alphaStable";
        case Family::log_normal: return "logNormal";
        case Family::inverse_gamma: return "inverseGamma";
        case Family::gamma: return "gamma";
        case Family::fisher_f: return "fisherF";
    }
    return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::gaussian, Family::q_gaussian, Family::alpha_stable,
                     Family::log_normal, Family::inverse_gamma, Family::gamma,
                     Family::fisher_f}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

double gaussian_log_pdf(const GaussianParams& p, double x) {
    const double z = (x - p.mu) / p.sigma;
    return -0.5 * z * z - std::log(p.sigma) - 0.5 * std::log(2.0 * kPi);
}

double gaussian_pdf(const GaussianParams& p, double x) { return std::exp(gaussian_log_pdf(p, x)); }

double QGaussianParams::variance() const {
    if (!variance_defined()) {
        throw NumericalError("q-Gaussian variance undefined for q >= 5/3");
    }
    return 1.0 / (c * (5.0 - 3.0 * q));
}

double q_gaussian_normalization(double q) {
    require(q > 1.0 && q < 3.0, "q-Gaussian: q must lie in (1, 3)");
    const double a = 1.0 / (q - 1.0);
    // N_q = sqrt(pi/(q-1)) * Gamma(a - 1/2) / Gamma(a)
    const double ln_nq = 0.5 * std::log(kPi / (q - 1.0)) + lgamma_ratio_half(a);
    return std::exp(ln_nq);
}

double q_gaussian_log_pdf(const QGaussianParams& p, double x) {
    require(p.q > 1.0 && p.q < 3.0, "q-Gaussian: q must lie in (1, 3)");
    require(p.c > 0.0, "q-Gaussian: c must be positive");
    const double qm1 = p.q - 1.0;
    const double d = x - p.mu;
    const double arg = qm1 * p.c * d * d;  // >= 0 for q > 1, so the bracket stays positive
    const double a = 1.0 / (p.q - 1.0);
    const double ln_nq = 0.5 * std::log(kPi / qm1) + lgamma_ratio_half(a);
    return 0.5 * std::log(p.c) - ln_nq - std::log1p(arg) / qm1;
}

double q_gaussian_pdf(const QGaussianParams& p, double x) {
    return std::exp(q_gaussian_log_pdf(p, x));
}

double log_normal_log_pdf(const LogNormalParams& p, double x) {
    if (!(x > 0.0)) return kNegInf;
    const double z = (std::log(x) - p.mu) / p.s;
    return -0.5 * z * z - std::log(x * p.s) - 0.5 * std::log(2.0 * kPi);
}

double log_normal_pdf(const LogNormalParams& p, double x) {
    return x > 0.0 ? std::exp(log_normal_log_pdf(p, x)) : 0.0;
}

double inverse_gamma_log_pdf(const InverseGammaParams& p, double x) {
    if (!(x > 0.0)) return kNegInf;
    return p.shape * std::log(p.scale) - std::lgamma(p.shape) -
           (p.shape + 1.0) * std::log(x) - p.scale / x;
}

double inverse_gamma_pdf(const InverseGammaParams& p, double x) {
    return x > 0.0 ? std::exp(inverse_gamma_log_pdf(p, x)) : 0.0;
}

double gamma_log_pdf(const GammaParams& p, double x) {
    if (!(x > 0.0)) return kNegInf;
    return (p.shape - 1.0) * std::log(x) - x / p.scale - std::lgamma(p.shape) -
           p.shape * std::log(p.scale);
}

double gamma_pdf(const GammaParams& p, double x) {
    return x > 0.0 ? std::exp(gamma_log_pdf(p, x)) : 0.0;
}

double fisher_f_log_pdf(const FisherFParams& p, double x) {
    if (!(x > 0.0)) return kNegInf;
    const double h1 = 0.5 * p.d1;
    const double h2 = 0.5 * p.d2;
    const double ln_beta = std::lgamma(h1) + std::lgamma(h2) - std::lgamma(h1 + h2);
    return h1 * std::log(p.d1 / p.d2) + (h1 - 1.0) * std::log(x) -
           (h1 + h2) * std::log1p(p.d1 * x / p.d2) - ln_beta;
}

double fisher_f_pdf(const FisherFParams& p, double x) {
    return x > 0.0 ? std::exp(fisher_f_log_pdf(p, x)) : 0.0;
}

std::vector<double> alpha_stable_pdf(const AlphaStableParams& p, const GridSpec& grid) {
    require(p.alpha > 0.0 && p.alpha <= 2.0, "alpha-stable: alpha must lie in (0, 2]");
    require(p.c > 0.0, "alpha-stable: c must be positive");
    require(grid.n_points >= (1u << 12) && (grid.n_points & (grid.n_points - 1)) == 0,
            "alpha-stable: n_points must be a power of two >= 2^12");
    require(grid.hi - grid.lo >= 40.0 * p.c, "alpha-stable: grid must span >= 40 scale units");

    const std::size_t n_req = grid.n_points;
    const double dx = (grid.hi - grid.lo) / static_cast<double>(n_req - 1);

    // Sampling phi with step dt periodizes the density with period N*dx, so
    // the algebraic tails fold back into the window. Widen the transform
    // until the folded tail is below ~1e-8 of the central scale.
    double half_span = 0.5 * static_cast<double>(n_req) * dx;
    if (p.alpha < 2.0) {
        const double tail_k = stable_tail_coefficient(p.alpha, p.c);
        const double target = 1e-8 / p.c;
        const double needed = std::pow(tail_k / target, 1.0 / (1.0 + p.alpha));
        half_span = std::max(half_span, needed);
    }
    std::size_t n = detail::next_pow2(
        static_cast<std::size_t>(std::ceil(2.0 * half_span / dx)) + n_req);
    n = std::min<std::size_t>(n, 1u << 22);

    // Place the internal grid so that requested points fall exactly on it.
    const std::size_t shift = (n - n_req) / 2;
    const double lo_int = grid.lo - static_cast<double>(shift) * dx;

    const double dt = 2.0 * kPi / (static_cast<double>(n) * dx);
    std::vector<std::complex<double>> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * dt;
        const double mag = std::exp(-std::pow(std::abs(p.c * t), p.alpha));
        // phi(t) * exp(-i lo t); the location shift mu rides along in the phase
        const double phase = (p.mu - lo_int) * t;
        buf[k] = std::complex<double>(mag * std::cos(phase), mag * std::sin(phase));
    }
    detail::fft_inplace(buf, false);

    std::vector<double> full(n);
    const double scale = dt / (2.0 * kPi);
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double v = scale * buf[j].real();
        if (j % 2 == 1) v = -v;  // (-1)^j factor from centering t at zero
        if (v < 0.0) v = 0.0;    // clip numerical ripple
        full[j] = v;
        mass += v;
    }
    mass *= dx;
    if (!(mass > 0.0)) throw NumericalError("alpha-stable: FFT inversion produced no mass");
    const double renorm = 1.0 / mass;

    std::vector<double> out(n_req);
    for (std::size_t j = 0; j < n_req; ++j) out[j] = full[shift + j] * renorm;
    return out;
}

AlphaStableDensity::AlphaStableDensity(const AlphaStableParams& params, const GridSpec& grid)
    : params_(params), grid_(grid) {
    values_ = alpha_stable_pdf(params, grid);
    dx_ = (grid.hi - grid.lo) / static_cast<double>(grid.n_points - 1);
}

AlphaStableDensity AlphaStableDensity::with_default_grid(const AlphaStableParams& params) {
    GridSpec g;
    g.lo = params.mu - 50.0 * params.c;
    g.hi = params.mu + 50.0 * params.c;
    g.n_points = 1 << 14;
    return {params, g};
}

double AlphaStableDensity::pdf(double x) const {
    if (x >= grid_.lo && x <= grid_.hi) {
        const double pos = (x - grid_.lo) / dx_;
        auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= values_.size()) i = values_.size() - 2;
        const double w = pos - static_cast<double>(i);
        return values_[i] * (1.0 - w) + values_[i + 1] * w;
    }
    return std::exp(log_pdf(x));
}

double AlphaStableDensity::log_pdf(double x) const {
    if (x >= grid_.lo && x <= grid_.hi) {
        const double v = pdf(x);
        return v > 0.0 ? std::log(v) : kNegInf;
    }
    const double d = std::abs(x - params_.mu);
    if (params_.alpha >= 2.0) {
        // exact Gaussian: variance 2 c^2
        const GaussianParams g{params_.mu, params_.c * std::numbers::sqrt2};
        return gaussian_log_pdf(g, x);
    }
    const double k = stable_tail_coefficient(params_.alpha, params_.c);
    return std::log(k) - (1.0 + params_.alpha) * std::log(d);
}

}  // namespace spotstat::distfit
