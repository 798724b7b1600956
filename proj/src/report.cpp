#include "spotstat/report.hpp"

#include <cmath>
#include <fstream>

#include "spotstat/errors.hpp"

namespace spotstat::io {

namespace {

ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json params_to_json(const distfit::DistParams& params) {
    using namespace distfit;
    ordered_json j;
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianParams>) {
                j["mu"] = p.mu;
                j["sigma"] = p.sigma;
            } else if constexpr (std::is_same_v<T, QGaussianParams>) {
                j["q"] = p.q;
                j["c"] = p.c;
                j["mu"] = p.mu;
                j["variance"] = p.variance_defined() ? ordered_json(p.variance())
                                                     : ordered_json(nullptr);
            } else if constexpr (std::is_same_v<T, AlphaStableParams>) {
                j["alpha"] = p.alpha;
                j["c"] = p.c;
                j["mu"] = p.mu;
            } else if constexpr (std::is_same_v<T, LogNormalParams>) {
                j["mu"] = p.mu;
                j["s"] = p.s;
            } else if constexpr (std::is_same_v<T, InverseGammaParams>) {
                j["shape"] = p.shape;
                j["scale"] = p.scale;
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                j["shape"] = p.shape;
                j["scale"] = p.scale;
            } else if constexpr (std::is_same_v<T, FisherFParams>) {
                j["d1"] = p.d1;
                j["d2"] = p.d2;
            }
        },
        params);
    return j;
}

}  // namespace

ordered_json to_json(const MomentSummary& m) {
    ordered_json j;
    j["mean"] = m.mean;
    j["std"] = m.stddev;
    j["skewness"] = m.skewness_defined ? ordered_json(m.skewness) : ordered_json(nullptr);
    j["kurtosis"] = m.kurtosis_defined ? ordered_json(m.kurtosis) : ordered_json(nullptr);
    j["count"] = m.count;
    return j;
}

ordered_json to_json(const Histogram& h) {
    ordered_json j;
    j["bin_edges"] = h.bin_edges;
    j["densities"] = h.densities;
    j["normalization"] = h.normalization;
    return j;
}

ordered_json to_json(const distfit::DistributionFit& fit) {
    ordered_json j;
    j["family"] = distfit::family_name(fit.family);
    j["params"] = params_to_json(fit.params);
    j["log_likelihood"] = fit.log_likelihood;
    j["kl_to_empirical"] = fit.kl_to_empirical;
    j["converged"] = fit.converged;
    return j;
}

ordered_json to_json(const distfit::ModelSelection& selection) {
    ordered_json j;
    j["ranked"] = ordered_json::array();
    for (const auto& fit : selection.ranked) j["ranked"].push_back(to_json(fit));
    j["failures"] = ordered_json::array();
    for (const auto& [family, message] : selection.failures) {
        j["failures"].push_back({{"family", distfit::family_name(family)}, {"error", message}});
    }
    return j;
}

ordered_json to_json(const emd::EmdDecomposition& dec) {
    ordered_json j;
    j["n_imfs"] = dec.imfs.size();
    j["sift_counts"] = dec.sift_counts;
    ordered_json imfs = ordered_json::array();
    for (const auto& imf : dec.imfs) {
        const MomentSummary m = moments(imf);
        imfs.push_back({{"label", imf.label}, {"std", m.stddev}});
    }
    j["imfs"] = imfs;
    return j;
}

ordered_json to_json(const mfdfa::MfdfaResult& result) {
    ordered_json j;
    j["powers"] = result.surface.powers;
    ordered_json scales = ordered_json::array();
    for (std::size_t i = 0; i < result.surface.scales.size(); ++i) {
        scales.push_back(result.surface.scale_hours(i));
    }
    j["scale_hours"] = scales;
    j["warnings"] = result.surface.warnings;

    ordered_json bands = ordered_json::array();
    for (const auto& band : result.bands) {
        ordered_json b;
        b["band_hours"] = {finite_or_null(band.band_hours.first),
                           finite_or_null(band.band_hours.second)};
        b["hurst"] = band.hurst;
        b["h_of_power"] = band.h_of_power;
        b["h_std_error"] = band.h_std_error;
        b["width_alpha"] = band.spectrum.width_alpha;
        b["width_f"] = band.spectrum.width_f;
        b["foldback_warning"] = band.spectrum.foldback_warning;
        ordered_json points = ordered_json::array();
        for (const auto& pt : band.spectrum.points) {
            points.push_back({{"power", pt.power}, {"h", pt.h}, {"alpha", pt.alpha}, {"f", pt.f}});
        }
        b["spectrum"] = points;
        bands.push_back(std::move(b));
    }
    j["bands"] = bands;
    return j;
}

ordered_json to_json(const superstat::SuperstatResult& result) {
    ordered_json j;
    j["tau_hours"] = result.tau_hours ? ordered_json(*result.tau_hours) : ordered_json(nullptr);
    j["T_hours"] = result.T_hours ? ordered_json(*result.T_hours) : ordered_json(nullptr);
    j["early_crossing_hours"] = result.early_crossing_hours
                                    ? ordered_json(*result.early_crossing_hours)
                                    : ordered_json(nullptr);
    j["q_bar"] = result.q_bar ? ordered_json(*result.q_bar) : ordered_json(nullptr);
    j["validity"] = result.validity;
    j["beta_windows"] = result.beta_series ? result.beta_series->size() : 0;
    j["beta_fits"] = to_json(result.beta_fits);
    j["stage_errors"] = result.stage_errors;
    return j;
}

ordered_json to_json(const weather::ConditionalStats& stats) {
    ordered_json j;
    j["label"] = stats.label;
    j["f_lo"] = stats.f_lo;
    j["f_hi"] = stats.f_hi;
    j["moments"] = to_json(stats.moments);
    j["negative_hours"] = stats.negative_hours;
    j["high_price_hours"] = stats.high_price_hours;
    j["sample_count"] = stats.sample_count;
    j["low_count"] = stats.low_count;
    return j;
}

ordered_json to_json(const weather::CwtSegments& segments) {
    ordered_json j;
    j["n_segments"] = segments.segments.size();
    j["pooled"] = to_json(segments.pooled);
    ordered_json segs = ordered_json::array();
    for (const auto& s : segments.segments) segs.push_back(to_json(s));
    j["segments"] = segs;
    return j;
}

ordered_json to_json(const weather::MeritOrderFit& fit) {
    ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["slope_std_error"] = fit.slope_std_error;
    return j;
}

void write_report(const std::filesystem::path& path, const ordered_json& report) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << report.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

ordered_json read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open report: " + path.string());
    ordered_json j;
    in >> j;
    return j;
}

}  // namespace spotstat::io
