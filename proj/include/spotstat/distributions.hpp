#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spotstat::distfit {

enum class Family {
    gaussian,
    q_gaussian,
    alpha_stable,
    log_normal,
    inverse_gamma,
    gamma,
    fisher_f,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct GaussianParams {
    double mu = 0.0;
    double sigma = 1.0;
};

/// Tsallis q-Gaussian, q in (1, 3):
///   G(x) = sqrt(c)/N_q * [1 + (q-1) c (x-mu)^2]^(-1/(q-1)).
/// The variance exists only for q < 5/3 and equals 1/(c(5-3q)); the
/// Gaussian limit q -> 1 has variance 1/(2c).
struct QGaussianParams {
    double q = 1.5;
    double c = 1.0;
    double mu = 0.0;

    bool variance_defined() const { return q < 5.0 / 3.0; }
    double variance() const;  // throws NumericalError when undefined
};

/// Symmetric alpha-stable law defined through its characteristic function
///   phi(t) = exp(i t mu - |c t|^alpha), alpha in (0, 2].
struct AlphaStableParams {
    double alpha = 1.5;
    double c = 1.0;
    double mu = 0.0;
};

struct LogNormalParams {
    double mu = 0.0;  // mean of ln(x)
    double s = 1.0;   // stddev of ln(x)
};

/// f(x) = b^c / Gamma(c) * x^(-c-1) * exp(-b/x), x > 0.
struct InverseGammaParams {
    double shape = 2.0;  // c
    double scale = 1.0;  // b
};

struct GammaParams {
    double shape = 2.0;
    double scale = 1.0;
};

struct FisherFParams {
    double d1 = 4.0;
    double d2 = 10.0;
};

double gaussian_pdf(const GaussianParams& p, double x);
double gaussian_log_pdf(const GaussianParams& p, double x);

/// Normalization N_q = sqrt(pi) Gamma((3-q)/(2(q-1))) / (sqrt(q-1) Gamma(1/(q-1))).
double q_gaussian_normalization(double q);
double q_gaussian_pdf(const QGaussianParams& p, double x);
double q_gaussian_log_pdf(const QGaussianParams& p, double x);

double log_normal_pdf(const LogNormalParams& p, double x);
double log_normal_log_pdf(const LogNormalParams& p, double x);
double inverse_gamma_pdf(const InverseGammaParams& p, double x);
double inverse_gamma_log_pdf(const InverseGammaParams& p, double x);
double gamma_pdf(const GammaParams& p, double x);
double gamma_log_pdf(const GammaParams& p, double x);
double fisher_f_pdf(const FisherFParams& p, double x);
double fisher_f_log_pdf(const FisherFParams& p, double x);

/// Uniform evaluation grid, inclusive of both endpoints.
struct GridSpec {
    double lo = -50.0;
    double hi = 50.0;
    std::size_t n_points = 1 << 14;  // must be a power of two >= 2^12
};

/// Symmetric alpha-stable density sampled on the grid, obtained by FFT
/// inversion of the characteristic function. The transform is computed on
/// an internally widened grid so that periodization of the heavy tails
/// cannot alias into the requested window; negative ripple is clipped to
/// zero and the density renormalized.
std::vector<double> alpha_stable_pdf(const AlphaStableParams& p, const GridSpec& grid);

/// Grid-backed evaluator with linear interpolation inside the window and
/// the leading series tail  f(x) ~ Gamma(alpha+1) sin(pi alpha/2) c^alpha /
/// (pi |x-mu|^(alpha+1))  outside (exact Gaussian for alpha = 2).
class AlphaStableDensity {
public:
    AlphaStableDensity(const AlphaStableParams& params, const GridSpec& grid);
    static AlphaStableDensity with_default_grid(const AlphaStableParams& params);

    double pdf(double x) const;
    double log_pdf(double x) const;

    const AlphaStableParams& params() const { return params_; }
    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& grid_pdf() const { return values_; }

private:
    AlphaStableParams params_;
    GridSpec grid_;
    std::vector<double> values_;
    double dx_ = 0.0;
};

}  // namespace spotstat::distfit
