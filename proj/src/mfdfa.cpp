#include "spotstat/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotstat/errors.hpp"

namespace spotstat::mfdfa {

namespace {

/// Least-squares polynomial residual variances for all segments of one
/// scale. Works on the centred sample index so the Gram matrix stays
/// well-conditioned; segment values are mean-centred before the fit to
/// avoid cancellation in the residual sum.
class SegmentDetrender {
public:
    SegmentDetrender(std::size_t r, int order) : r_(r), order_(order) {
        const auto dim = static_cast<std::size_t>(order) + 1;
        // power sums of centred x over 0..2*order
        std::vector<double> pow_sums(2 * dim - 1, 0.0);
        for (std::size_t i = 0; i < r; ++i) {
            const double x = static_cast<double>(i) - 0.5 * static_cast<double>(r - 1);
            double xp = 1.0;
            for (std::size_t p = 0; p < pow_sums.size(); ++p) {
                pow_sums[p] += xp;
                xp *= x;
            }
        }
        gram_.assign(dim, std::vector<double>(dim));
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) gram_[a][b] = pow_sums[a + b];
        }
    }

    double residual_variance(std::span<const double> y) const {
        const auto dim = static_cast<std::size_t>(order_) + 1;
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(r_);

        std::vector<double> b(dim, 0.0);
        double yy = 0.0;
        for (std::size_t i = 0; i < r_; ++i) {
            const double x = static_cast<double>(i) - 0.5 * static_cast<double>(r_ - 1);
            const double yc = y[i] - mean;
            yy += yc * yc;
            double xp = 1.0;
            for (std::size_t p = 0; p < dim; ++p) {
                b[p] += xp * yc;
                xp *= x;
            }
        }

        // solve gram * a = b (tiny SPD system, plain elimination)
        auto g = gram_;
        std::vector<double> rhs = b;
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t piv = col;
            for (std::size_t row = col + 1; row < dim; ++row) {
                if (std::abs(g[row][col]) > std::abs(g[piv][col])) piv = row;
            }
            std::swap(g[col], g[piv]);
            std::swap(rhs[col], rhs[piv]);
            for (std::size_t row = col + 1; row < dim; ++row) {
                const double f = g[row][col] / g[col][col];
                for (std::size_t k = col; k < dim; ++k) g[row][k] -= f * g[col][k];
                rhs[row] -= f * rhs[col];
            }
        }
        std::vector<double> a(dim);
        for (std::size_t col = dim; col-- > 0;) {
            double s = rhs[col];
            for (std::size_t k = col + 1; k < dim; ++k) s -= g[col][k] * a[k];
            a[col] = s / g[col][col];
        }

        double fitted = 0.0;
        for (std::size_t p = 0; p < dim; ++p) fitted += a[p] * b[p];
        const double ss = std::max(yy - fitted, 0.0);
        return ss / static_cast<double>(r_);
    }

private:
    std::size_t r_;
    int order_;
    std::vector<std::vector<double>> gram_;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += e * e;
    }
    if (x.size() > 2) {
        fit.slope_std_error = std::sqrt(ss_res / (n - 2.0) / sxx);
    }
    return fit;
}

}  // namespace

std::vector<std::size_t> MfdfaConfig::default_scales(std::size_t n, int poly_order) {
    const auto lo = static_cast<std::size_t>(poly_order) + 2;
    const std::size_t hi = n / 4;
    std::vector<std::size_t> scales;
    const double step = std::pow(10.0, 1.0 / 24.0);
    for (double s = static_cast<double>(lo); s <= static_cast<double>(hi) + 0.5; s *= step) {
        const auto r = static_cast<std::size_t>(std::llround(s));
        if (r > hi) break;
        if (scales.empty() || scales.back() != r) scales.push_back(r);
    }
    return scales;
}

std::vector<double> MfdfaConfig::default_powers() {
    std::vector<double> powers;
    for (int k = 1; k <= 40; ++k) {
        powers.push_back(0.1 + static_cast<double>(k) * 9.9 / 40.0);
    }
    powers.push_back(2.0);
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 powers.end());
    return powers;
}

MfdfaConfig MfdfaConfig::defaults(std::size_t n, int poly_order) {
    MfdfaConfig cfg;
    cfg.poly_order = poly_order;
    cfg.scales = default_scales(n, poly_order);
    cfg.powers = default_powers();
    return cfg;
}

FluctuationSurface fluctuation_surface(const TimeSeries& series, const MfdfaConfig& config) {
    const std::size_t n = series.size();
    if (n < 16) throw ValidationError("mfdfa: series too short");
    if (config.poly_order < 1) throw ValidationError("mfdfa: poly_order must be >= 1");
    if (config.scales.empty() || config.powers.empty()) {
        throw ValidationError("mfdfa: scales and powers must be non-empty");
    }
    for (double p : config.powers) {
        if (!(p >= 0.1 && p <= 10.0)) {
            throw ValidationError("mfdfa: powers must lie in [0.1, 10]");
        }
    }
    const auto min_scale = static_cast<std::size_t>(config.poly_order) + 2;
    for (std::size_t r : config.scales) {
        if (r < min_scale) {
            throw ValidationError("mfdfa: scale " + std::to_string(r) +
                                  " below poly_order + 2");
        }
    }

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : series.values) var += (v - mean) * (v - mean);
    if (!(var > 0.0)) throw NumericalError("mfdfa: zero-variance series");

    std::vector<double> profile(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += series.values[i] - mean;
        profile[i] = acc;
    }

    FluctuationSurface out;
    out.powers = config.powers;
    out.resolution_minutes = series.resolution_minutes;

    std::vector<std::size_t> scales = config.scales;
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    std::vector<std::vector<double>> values(config.powers.size());
    for (std::size_t r : scales) {
        const std::size_t n_seg = n / r;
        if (r > n / 4 || 2 * n_seg < 4) {
            out.warnings.push_back("scale " + std::to_string(r) +
                                   " dropped: fewer than 4 segments (or above n/4)");
            continue;
        }

        const SegmentDetrender detrender(r, config.poly_order);
        std::vector<double> seg_var;
        seg_var.reserve(2 * n_seg);
        for (std::size_t v = 0; v < n_seg; ++v) {
            seg_var.push_back(detrender.residual_variance(
                std::span<const double>(profile).subspan(v * r, r)));
        }
        for (std::size_t v = 0; v < n_seg; ++v) {
            seg_var.push_back(detrender.residual_variance(
                std::span<const double>(profile).subspan(n - (v + 1) * r, r)));
        }

        out.scales.push_back(r);
        for (std::size_t qi = 0; qi < config.powers.size(); ++qi) {
            const double q = config.powers[qi];
            double mean_pow = 0.0;
            for (double sv : seg_var) mean_pow += std::pow(sv, q / 2.0);
            mean_pow /= static_cast<double>(seg_var.size());
            values[qi].push_back(std::pow(mean_pow, 1.0 / q));
        }
    }
    if (out.scales.empty()) throw NumericalError("mfdfa: no usable scales for this series length");
    out.values = std::move(values);
    return out;
}

HurstFit hurst_in_band(const FluctuationSurface& surface, double power,
                       std::pair<double, double> band_hours) {
    std::size_t qi = surface.powers.size();
    for (std::size_t i = 0; i < surface.powers.size(); ++i) {
        if (std::abs(surface.powers[i] - power) < 1e-9) {
            qi = i;
            break;
        }
    }
    if (qi == surface.powers.size()) {
        throw ValidationError("hurst_in_band: power not present in the fluctuation surface");
    }

    // lower edge exclusive, upper inclusive: a boundary scale belongs to the
    // band below it
    std::vector<double> log_scale, log_f;
    for (std::size_t i = 0; i < surface.scales.size(); ++i) {
        const double sh = surface.scale_hours(i);
        if (sh <= band_hours.first || sh > band_hours.second) continue;
        const double f = surface.values[qi][i];
        if (!(f > 0.0)) continue;
        log_scale.push_back(std::log(sh));
        log_f.push_back(std::log(f));
    }
    if (log_scale.size() < 4) {
        throw NumericalError("hurst_in_band: fewer than 4 scales inside the band");
    }
    const LineFit fit = least_squares_line(log_scale, log_f);
    return {fit.slope, fit.slope_std_error, log_scale.size()};
}

SingularitySpectrum singularity_spectrum(std::span<const double> powers, std::span<const double> h) {
    if (powers.size() != h.size()) {
        throw ValidationError("singularity_spectrum: powers and h sizes differ");
    }
    const std::size_t m = powers.size();
    if (m < 5) throw ValidationError("singularity_spectrum: need at least 5 powers");
    for (double v : h) {
        if (!std::isfinite(v)) throw ValidationError("singularity_spectrum: non-finite h");
    }

    SingularitySpectrum out;
    out.points.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double dh;
        if (i == 0) {
            dh = (h[1] - h[0]) / (powers[1] - powers[0]);
        } else if (i == m - 1) {
            dh = (h[m - 1] - h[m - 2]) / (powers[m - 1] - powers[m - 2]);
        } else {
            dh = (h[i + 1] - h[i - 1]) / (powers[i + 1] - powers[i - 1]);
        }
        const double alpha = h[i] + powers[i] * dh;
        out.points[i] = {powers[i], h[i], alpha, powers[i] * (alpha - h[i]) + 1.0};
    }

    double min_alpha = out.points[0].alpha;
    double min_f = out.points[0].f, max_f = out.points[0].f;
    std::size_t argmax_f = 0;
    for (std::size_t i = 0; i < m; ++i) {
        min_alpha = std::min(min_alpha, out.points[i].alpha);
        min_f = std::min(min_f, out.points[i].f);
        if (out.points[i].f > max_f) {
            max_f = out.points[i].f;
            argmax_f = i;
        }
        if (i > 0 && out.points[i].alpha > out.points[i - 1].alpha + 1e-9) {
            out.foldback_warning = true;  // spectrum fold-back
        }
    }
    out.width_alpha = out.points[argmax_f].alpha - min_alpha;
    out.width_f = max_f - min_f;
    return out;
}

std::vector<std::pair<double, double>> default_bands_hours() {
    return {{0.0, 12.0}, {12.0, 48.0}, {48.0, std::numeric_limits<double>::infinity()}};
}

MfdfaResult banded_analysis(const TimeSeries& series,
                            const std::vector<std::pair<double, double>>& bands_hours,
                            const MfdfaConfig& config) {
    const double res_h = series.resolution_hours();
    for (const auto& band : bands_hours) {
        if (!(band.first < band.second)) {
            throw ValidationError("banded_analysis: empty band");
        }
        if (band.second <= res_h) {
            throw ValidationError("banded_analysis: band (" + std::to_string(band.first) + ", " +
                                  std::to_string(band.second) +
                                  ") h lies below the series resolution");
        }
    }

    MfdfaResult result;
    result.surface = fluctuation_surface(series, config);

    for (const auto& band : bands_hours) {
        BandResult br;
        br.band_hours = band;
        std::vector<double> h_vals;
        for (double q : result.surface.powers) {
            const HurstFit fit = hurst_in_band(result.surface, q, band);
            br.h_of_power.push_back(fit.exponent);
            br.h_std_error.push_back(fit.std_error);
            h_vals.push_back(fit.exponent);
        }
        br.hurst = hurst_in_band(result.surface, 2.0, band).exponent;
        br.spectrum = singularity_spectrum(result.surface.powers, h_vals);
        result.bands.push_back(std::move(br));
    }
    return result;
}

MfdfaResult banded_analysis(const TimeSeries& series) {
    return banded_analysis(series, default_bands_hours(),
                           MfdfaConfig::defaults(series.size(), 1));
}

}  // namespace spotstat::mfdfa
