#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spotstat/emd.hpp"
#include "spotstat/fitting.hpp"
#include "spotstat/mfdfa.hpp"
#include "spotstat/pipeline.hpp"
#include "spotstat/superstat.hpp"
#include "spotstat/synthetic.hpp"
#include "spotstat/time_series.hpp"

namespace py = pybind11;
using namespace spotstat;

namespace {

py::dict moments_dict(const MomentSummary& m) {
    py::dict d;
    d["mean"] = m.mean;
    d["std"] = m.stddev;
    d["skewness"] = m.skewness_defined ? py::object(py::float_(m.skewness)) : py::none();
    d["kurtosis"] = m.kurtosis_defined ? py::object(py::float_(m.kurtosis)) : py::none();
    d["count"] = m.count;
    return d;
}

py::dict fit_dict(const distfit::DistributionFit& fit) {
    py::dict d;
    d["family"] = distfit::family_name(fit.family);
    d["log_likelihood"] = fit.log_likelihood;
    d["kl_to_empirical"] = fit.kl_to_empirical;
    d["converged"] = fit.converged;
    py::dict p;
    std::visit(
        [&p](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, distfit::GaussianParams>) {
                p["mu"] = params.mu;
                p["sigma"] = params.sigma;
            } else if constexpr (std::is_same_v<T, distfit::QGaussianParams>) {
                p["q"] = params.q;
                p["c"] = params.c;
                p["mu"] = params.mu;
            } else if constexpr (std::is_same_v<T, distfit::AlphaStableParams>) {
                p["alpha"] = params.alpha;
                p["c"] = params.c;
                p["mu"] = params.mu;
            } else if constexpr (std::is_same_v<T, distfit::LogNormalParams>) {
                p["mu"] = params.mu;
                p["s"] = params.s;
            } else if constexpr (std::is_same_v<T, distfit::InverseGammaParams>) {
                p["shape"] = params.shape;
                p["scale"] = params.scale;
            } else if constexpr (std::is_same_v<T, distfit::GammaParams>) {
                p["shape"] = params.shape;
                p["scale"] = params.scale;
            } else if constexpr (std::is_same_v<T, distfit::FisherFParams>) {
                p["d1"] = params.d1;
                p["d2"] = params.d2;
            }
        },
        fit.params);
    d["params"] = p;
    return d;
}

distfit::Family family_arg(const std::string& name) {
    const auto fam = distfit::family_from_name(name);
    if (!fam) throw py::value_error("unknown family '" + name + "'");
    return *fam;
}

TimeSeries make_series(std::vector<double> values, double resolution_minutes,
                       const std::string& label) {
    TimeSeries ts;
    ts.values = std::move(values);
    ts.resolution_minutes = resolution_minutes;
    ts.label = label;
    return ts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spotstat core bindings: detrending, heavy-tail fitting, MFDFA, superstatistics";

    py::register_exception<ValidationError>(m, "SpotstatValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "SpotstatNumericalError", PyExc_ArithmeticError);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init([](std::vector<double> values, double resolution_minutes,
                         const std::string& label) {
                 return make_series(std::move(values), resolution_minutes, label);
             }),
             py::arg("values"), py::arg("resolution_minutes") = 60.0, py::arg("label") = "")
        .def_readwrite("values", &TimeSeries::values)
        .def_readwrite("resolution_minutes", &TimeSeries::resolution_minutes)
        .def_readwrite("start", &TimeSeries::start)
        .def_readwrite("label", &TimeSeries::label)
        .def("__len__", [](const TimeSeries& ts) { return ts.size(); });

    m.def(
        "moments",
        [](const TimeSeries& ts) { return moments_dict(moments(ts)); },
        py::arg("series"));

    m.def(
        "autocorrelation",
        [](const TimeSeries& ts, double max_lag_hours) {
            const auto acf = autocorrelation(ts, max_lag_hours);
            std::vector<std::pair<double, double>> out;
            out.reserve(acf.size());
            for (const auto& pt : acf) out.emplace_back(pt.lag_hours, pt.correlation);
            return out;
        },
        py::arg("series"), py::arg("max_lag_hours"));

    m.def(
        "decompose",
        [](const TimeSeries& ts, int max_imfs, double sift_tolerance) {
            const auto dec = emd::decompose(ts, max_imfs, sift_tolerance);
            py::dict d;
            py::list imfs;
            for (const auto& imf : dec.imfs) imfs.append(imf.values);
            d["imfs"] = imfs;
            d["residual"] = dec.residual.values;
            d["sift_counts"] = dec.sift_counts;
            return d;
        },
        py::arg("series"), py::arg("max_imfs") = 32, py::arg("sift_tolerance") = 0.05);

    m.def(
        "detrend",
        [](const TimeSeries& ts, int n_slowest, double sift_tolerance) {
            auto [detrended, trend] = emd::detrend(ts, n_slowest, sift_tolerance);
            return py::make_tuple(detrended.values, trend.values);
        },
        py::arg("series"), py::arg("n_slowest") = 3, py::arg("sift_tolerance") = 0.05);

    m.def(
        "q_gaussian_pdf",
        [](double q, double c, double mu, double x) {
            return distfit::q_gaussian_pdf({q, c, mu}, x);
        },
        py::arg("q"), py::arg("c"), py::arg("mu"), py::arg("x"));

    m.def(
        "alpha_stable_pdf",
        [](double alpha, double c, double mu, double lo, double hi, std::size_t n_points) {
            return distfit::alpha_stable_pdf({alpha, c, mu}, {lo, hi, n_points});
        },
        py::arg("alpha"), py::arg("c"), py::arg("mu"), py::arg("lo"), py::arg("hi"),
        py::arg("n_points") = std::size_t{1} << 14);

    m.def(
        "fit_mle",
        [](const TimeSeries& ts, const std::string& family, bool pin_mu) {
            distfit::FitOptions opts;
            opts.pin_mu = pin_mu;
            return fit_dict(distfit::fit_mle(ts, family_arg(family), opts));
        },
        py::arg("series"), py::arg("family"), py::arg("pin_mu") = false);

    m.def(
        "select_model",
        [](const TimeSeries& ts, const std::vector<std::string>& families, bool pin_mu) {
            std::vector<distfit::Family> fams;
            fams.reserve(families.size());
            for (const auto& name : families) fams.push_back(family_arg(name));
            distfit::FitOptions opts;
            opts.pin_mu = pin_mu;
            const auto selection = distfit::select_model(ts, fams, opts);
            py::list ranked;
            for (const auto& fit : selection.ranked) ranked.append(fit_dict(fit));
            py::dict d;
            d["ranked"] = ranked;
            py::list failures;
            for (const auto& [fam, msg] : selection.failures) {
                failures.append(py::make_tuple(distfit::family_name(fam), msg));
            }
            d["failures"] = failures;
            return d;
        },
        py::arg("series"), py::arg("families"), py::arg("pin_mu") = false);

    m.def(
        "banded_analysis",
        [](const TimeSeries& ts) {
            const auto result = mfdfa::banded_analysis(ts);
            py::dict d;
            d["powers"] = result.surface.powers;
            std::vector<double> scale_hours(result.surface.scales.size());
            for (std::size_t i = 0; i < scale_hours.size(); ++i) {
                scale_hours[i] = result.surface.scale_hours(i);
            }
            d["scale_hours"] = scale_hours;
            d["fluctuation"] = result.surface.values;
            py::list bands;
            for (const auto& band : result.bands) {
                py::dict b;
                b["band_hours"] = band.band_hours;
                b["hurst"] = band.hurst;
                b["h_of_power"] = band.h_of_power;
                b["width_alpha"] = band.spectrum.width_alpha;
                b["width_f"] = band.spectrum.width_f;
                bands.append(b);
            }
            d["bands"] = bands;
            return d;
        },
        py::arg("series"));

    m.def(
        "hurst",
        [](const TimeSeries& ts, double power, std::pair<double, double> band_hours) {
            const auto surface =
                mfdfa::fluctuation_surface(ts, mfdfa::MfdfaConfig::defaults(ts.size()));
            const auto fit = mfdfa::hurst_in_band(surface, power, band_hours);
            return py::make_tuple(fit.exponent, fit.std_error);
        },
        py::arg("series"), py::arg("power") = 2.0,
        py::arg("band_hours") = std::pair<double, double>{0.0, 1e300});

    m.def(
        "superstat_pipeline",
        [](const TimeSeries& ts) {
            const auto result = superstat::superstat_pipeline(ts);
            py::dict d;
            d["tau_hours"] = result.tau_hours ? py::object(py::float_(*result.tau_hours))
                                              : py::none();
            d["T_hours"] = result.T_hours ? py::object(py::float_(*result.T_hours)) : py::none();
            d["q_bar"] = result.q_bar ? py::object(py::float_(*result.q_bar)) : py::none();
            d["validity"] = result.validity;
            d["stage_errors"] = result.stage_errors;
            py::list fits;
            for (const auto& fit : result.beta_fits.ranked) fits.append(fit_dict(fit));
            d["beta_fits"] = fits;
            if (result.beta_series) d["beta"] = result.beta_series->values;
            return d;
        },
        py::arg("detrended"));

    m.def(
        "superstat_process",
        [](std::size_t n_samples, double resolution_minutes, double regime_hours,
           double dispersion, std::uint64_t seed, double ar1, double kernel_skewness,
           double skew_volatility_coupling, double base_level, double scale) {
            synth::SuperstatProcessConfig cfg;
            cfg.n_samples = n_samples;
            cfg.resolution_minutes = resolution_minutes;
            cfg.regime_hours = regime_hours;
            cfg.dispersion = dispersion;
            cfg.seed = seed;
            cfg.ar1 = ar1;
            cfg.kernel_skewness = kernel_skewness;
            cfg.skew_volatility_coupling = skew_volatility_coupling;
            cfg.base_level = base_level;
            cfg.scale = scale;
            return synth::superstat_process(cfg);
        },
        py::arg("n_samples"), py::arg("resolution_minutes") = 60.0,
        py::arg("regime_hours") = 96.0, py::arg("dispersion") = 0.5, py::arg("seed") = 1,
        py::arg("ar1") = 0.5, py::arg("kernel_skewness") = 1.2,
        py::arg("skew_volatility_coupling") = 1.4, py::arg("base_level") = 0.0,
        py::arg("scale") = 10.0);

    m.def(
        "q_gaussian_sample",
        [](std::size_t n, double q, double c, double mu, std::uint64_t seed) {
            return synth::q_gaussian_sample(n, {q, c, mu}, seed);
        },
        py::arg("n"), py::arg("q"), py::arg("c") = 1.0, py::arg("mu") = 0.0, py::arg("seed") = 1);

    m.attr("__version__") = cli::kVersion;
}
