#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spotstat/time_series.hpp"

namespace spotstat::mfdfa {

/// Analysis configuration. Scales are segment sizes in samples; powers are
/// the moment orders applied to the segment variances. Scales below
/// poly_order + 2 and powers with |power| < 0.1 are rejected outright;
/// scales too large for the data (above n/4, or leaving fewer than 4
/// segments) are dropped with a warning at run time.
struct MfdfaConfig {
    std::vector<std::size_t> scales;
    std::vector<double> powers;
    int poly_order = 1;

    /// 24 log-spaced integer scales per decade between poly_order + 2 and n/4.
    static std::vector<std::size_t> default_scales(std::size_t n, int poly_order = 1);
    /// 40 uniform powers on (0.1, 10], plus 2.0 for the Hurst readout.
    static std::vector<double> default_powers();
    static MfdfaConfig defaults(std::size_t n, int poly_order = 1);
};

/// Fluctuation function F_power(scale) on the surviving scale grid.
struct FluctuationSurface {
    std::vector<double> powers;
    std::vector<std::size_t> scales;
    std::vector<std::vector<double>> values;  // [power][scale]
    double resolution_minutes = 60.0;
    std::vector<std::string> warnings;

    double scale_hours(std::size_t i) const {
        return static_cast<double>(scales[i]) * resolution_minutes / 60.0;
    }
};

/// Builds the mean-centred profile, detrends non-overlapping segments of
/// each size with least-squares polynomials (segmenting from both ends, so
/// 2*floor(n/r) segments), and aggregates the segment variances under each
/// power.
FluctuationSurface fluctuation_surface(const TimeSeries& series, const MfdfaConfig& config);

struct HurstFit {
    double exponent = 0.0;
    double std_error = 0.0;
    std::size_t n_scales = 0;
};

/// Least-squares slope of log F(scale) within a scale band (hours, lower
/// edge exclusive / upper edge inclusive so a boundary scale belongs to the
/// band below it). Requires at least 4 in-band scales.
HurstFit hurst_in_band(const FluctuationSurface& surface, double power,
                       std::pair<double, double> band_hours);

struct SpectrumPoint {
    double power = 0.0;
    double h = 0.0;      // generalised Hurst exponent
    double alpha = 0.0;  // singularity strength
    double f = 0.0;      // spectrum value
};

struct SingularitySpectrum {
    std::vector<SpectrumPoint> points;
    double width_alpha = 0.0;  // alpha at the spectrum maximum minus min(alpha)
    double width_f = 0.0;      // max f - min f
    bool foldback_warning = false;
};

/// Legendre transform of h(power) with central finite differences
/// (one-sided at the ends): alpha = h + power*h', f = power*(alpha - h) + 1.
/// Requires at least 5 powers.
SingularitySpectrum singularity_spectrum(std::span<const double> powers, std::span<const double> h);

struct BandResult {
    std::pair<double, double> band_hours;
    std::vector<double> h_of_power;
    std::vector<double> h_std_error;
    double hurst = 0.0;  // h at power 2
    SingularitySpectrum spectrum;
};

struct MfdfaResult {
    FluctuationSurface surface;
    std::vector<BandResult> bands;
};

/// Paper defaults: bands below 12 h, 12-48 h, and above 48 h.
std::vector<std::pair<double, double>> default_bands_hours();

/// Full pipeline: fluctuation surface, per-band generalised Hurst
/// exponents, singularity spectra and widths.
MfdfaResult banded_analysis(const TimeSeries& series,
                            const std::vector<std::pair<double, double>>& bands_hours,
                            const MfdfaConfig& config);
MfdfaResult banded_analysis(const TimeSeries& series);

}  // namespace spotstat::mfdfa
