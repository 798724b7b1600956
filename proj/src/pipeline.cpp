#include "spotstat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

#include "spotstat/csv.hpp"
#include "spotstat/emd.hpp"
#include "spotstat/errors.hpp"

namespace spotstat::cli {

namespace {

using io::format_double;
using io::ordered_json;

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("stage ") + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw NumericalError(std::string("stage ") + name + ": " + e.what());
    }
}

std::string timestamp_cell(const TimeSeries& series, std::size_t i) {
    return io::format_iso8601_utc(static_cast<std::int64_t>(std::llround(series.timestamp_at(i))));
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series,
                      const char* value_column) {
    std::vector<std::string> rows;
    rows.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        rows.push_back(timestamp_cell(series, i) + "," + format_double(series.values[i]));
    }
    io::write_csv(path, std::string("timestamp,") + value_column, rows);
}

ordered_json ingest_log_json(const io::IngestLog& log) {
    ordered_json j;
    j["rows_read"] = log.rows_read;
    j["interpolated_gaps"] = log.interpolated_gaps;
    j["interpolated_samples"] = log.interpolated_samples;
    j["truncated_to_longest_run"] = log.truncated_to_longest_run;
    if (!log.note.empty()) j["note"] = log.note;
    return j;
}

ordered_json provenance_entry(const std::filesystem::path& path, const io::IngestLog& log) {
    ordered_json j;
    j["path"] = path.string();
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(io::fnv1a64_file(path)));
    j["fnv1a64"] = hex;
    j["ingest"] = ingest_log_json(log);
    return j;
}

void run_synth(const AnalysisConfig& cfg, ordered_json& report) {
    synth::SuperstatProcessConfig synth_cfg = cfg.synth_config;
    synth_cfg.seed = cfg.seed;

    TimeSeries prices;
    if (cfg.synth_kind == "white_noise") {
        prices = synth::white_noise(synth_cfg.n_samples, synth_cfg.resolution_minutes, cfg.seed);
        for (double& v : prices.values) v = synth_cfg.base_level + synth_cfg.scale * v;
        prices.label = "synthetic white noise";
    } else if (cfg.synth_kind == "superstat") {
        prices = synth::superstat_process(synth_cfg);
    } else {
        throw ValidationError("synth: unknown kind '" + cfg.synth_kind +
                              "' (expected superstat or white_noise)");
    }
    write_series_csv(cfg.out_dir / "prices.csv", prices, "price");

    ordered_json j;
    j["kind"] = cfg.synth_kind;
    j["n_samples"] = prices.size();
    j["resolution_minutes"] = prices.resolution_minutes;
    j["seed"] = cfg.seed;
    if (cfg.synth_kind == "superstat") {
        j["regime_hours"] = synth_cfg.regime_hours;
        j["generator_entropic_index"] = synth_cfg.entropic_index();

        const auto weather_series = synth::coupled_weather(prices, 1.0, cfg.seed + 1);
        std::vector<std::string> rows;
        rows.reserve(weather_series.size());
        for (std::size_t i = 0; i < weather_series.size(); ++i) {
            rows.push_back(timestamp_cell(prices, i) + "," +
                           format_double(weather_series.f_param[i]) + "," +
                           weather::cwt_name(weather_series.cwt[i]));
        }
        io::write_csv(cfg.out_dir / "weather.csv", "timestamp,f_param,cwt", rows);

        const auto load = synth::coupled_residual_load(prices, 0.001, 5.0, 2000.0, cfg.seed + 2);
        write_series_csv(cfg.out_dir / "residual_load.csv", load, "residual_load_mw");
        j["files"] = {"prices.csv", "weather.csv", "residual_load.csv"};
    } else {
        j["files"] = {"prices.csv"};
    }
    report["synth"] = j;
}

void run_fit_dist(const AnalysisConfig& cfg, const TimeSeries& detrended, ordered_json& report) {
    const auto selection = stage("fit-dist", [&] {
        return distfit::select_model(detrended, cfg.families, cfg.fit_options);
    });
    ordered_json j = io::to_json(selection);
    j["moments"] = io::to_json(moments(detrended));
    j["histogram_bins"] = cfg.fit_options.histogram_bins;
    j["histogram_range_sigmas"] = cfg.fit_options.histogram_range_sigmas;
    report["distfit"] = j;

    const Histogram hist = distfit::empirical_histogram(detrended.values, cfg.fit_options);
    std::string header = "bin_center,empirical_density";
    std::vector<std::function<double(double)>> densities;
    for (const auto& fit : selection.ranked) {
        header += "," + distfit::family_name(fit.family) + "_density";
        densities.push_back(distfit::make_density(fit));
    }
    std::vector<std::string> rows;
    rows.reserve(hist.bins());
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        std::string row = format_double(hist.bin_center(i)) + "," + format_double(hist.densities[i]);
        for (const auto& dens : densities) row += "," + format_double(dens(hist.bin_center(i)));
        rows.push_back(std::move(row));
    }
    io::write_csv(cfg.out_dir / "distribution_fits.csv", header, rows);
}

void run_mfdfa(const AnalysisConfig& cfg, const TimeSeries& detrended, ordered_json& report) {
    const auto result = stage("mfdfa", [&] {
        const auto bands = cfg.bands_hours.empty() ? mfdfa::default_bands_hours() : cfg.bands_hours;
        return mfdfa::banded_analysis(detrended, bands,
                                      mfdfa::MfdfaConfig::defaults(detrended.size(), cfg.poly_order));
    });
    report["mfdfa"] = io::to_json(result);

    std::vector<std::string> rows;
    for (std::size_t qi = 0; qi < result.surface.powers.size(); ++qi) {
        for (std::size_t si = 0; si < result.surface.scales.size(); ++si) {
            rows.push_back(format_double(result.surface.powers[qi]) + "," +
                           format_double(result.surface.scale_hours(si)) + "," +
                           format_double(result.surface.values[qi][si]));
        }
    }
    io::write_csv(cfg.out_dir / "fluctuation.csv", "power,scale_hours,fluctuation", rows);

    rows.clear();
    for (const auto& band : result.bands) {
        const std::string band_label = format_double(band.band_hours.first) + "," +
                                       (std::isfinite(band.band_hours.second)
                                            ? format_double(band.band_hours.second)
                                            : std::string("inf"));
        for (const auto& pt : band.spectrum.points) {
            rows.push_back(band_label + "," + format_double(pt.power) + "," + format_double(pt.h) +
                           "," + format_double(pt.alpha) + "," + format_double(pt.f));
        }
    }
    io::write_csv(cfg.out_dir / "singularity_spectrum.csv",
                  "band_lo_hours,band_hi_hours,power,h,alpha,f", rows);
}

void run_superstat(const AnalysisConfig& cfg, const TimeSeries& detrended, ordered_json& report) {
    const auto result = stage("superstat", [&] {
        return superstat::superstat_pipeline(detrended, cfg.superstat_options);
    });
    report["superstat"] = io::to_json(result);

    std::vector<std::string> rows;
    for (const auto& pt : result.price_acf) {
        rows.push_back(format_double(pt.lag_hours) + "," + format_double(pt.correlation));
    }
    io::write_csv(cfg.out_dir / "autocorrelation_price.csv", "lag_hours,correlation", rows);

    if (!result.beta_acf.empty()) {
        rows.clear();
        for (const auto& pt : result.beta_acf) {
            rows.push_back(format_double(pt.lag_hours) + "," + format_double(pt.correlation));
        }
        io::write_csv(cfg.out_dir / "autocorrelation_beta.csv", "lag_hours,correlation", rows);
    }

    rows.clear();
    for (std::size_t i = 0; i < result.skew_curve.size(); ++i) {
        const auto& s = result.skew_curve[i];
        std::string row = format_double(s.window_hours) + "," + format_double(s.value) + "," +
                          format_double(s.std_error);
        if (i < result.kurt_curve.size()) {
            row += "," + format_double(result.kurt_curve[i].value) + "," +
                   format_double(result.kurt_curve[i].std_error);
        } else {
            row += ",,";
        }
        row += "," + std::to_string(s.segments);
        rows.push_back(std::move(row));
    }
    io::write_csv(cfg.out_dir / "local_moments.csv",
                  "window_hours,skewness,skewness_std_error,kurtosis,kurtosis_std_error,segments",
                  rows);

    if (result.beta_series) {
        write_series_csv(cfg.out_dir / "beta_series.csv", *result.beta_series, "beta");
        try {
            const Histogram hist =
                distfit::empirical_histogram(result.beta_series->values, cfg.fit_options);
            std::string header = "bin_center,empirical_density";
            std::vector<std::function<double(double)>> densities;
            for (const auto& fit : result.beta_fits.ranked) {
                header += "," + distfit::family_name(fit.family) + "_density";
                densities.push_back(distfit::make_density(fit));
            }
            rows.clear();
            for (std::size_t i = 0; i < hist.bins(); ++i) {
                std::string row = format_double(hist.bin_center(i)) + "," +
                                  format_double(hist.densities[i]);
                for (const auto& dens : densities) {
                    row += "," + format_double(dens(hist.bin_center(i)));
                }
                rows.push_back(std::move(row));
            }
            io::write_csv(cfg.out_dir / "beta_histogram.csv", header, rows);
        } catch (const std::exception&) {
            // degenerate beta distribution: histogram skipped, fits already carry the error
        }
    }
}

void run_weather(const AnalysisConfig& cfg, const TimeSeries& raw, const TimeSeries& detrended,
                 ordered_json& report) {
    if (!cfg.weather_path) {
        throw ValidationError("stage weather: no weather input configured");
    }
    io::IngestLog weather_log;
    const auto weather_series = stage("weather-ingest", [&] {
        return io::ingest_weather(*cfg.weather_path, {cfg.allow_gaps, 3}, &weather_log);
    });

    ordered_json j;
    j["input"] = provenance_entry(*cfg.weather_path, weather_log);

    const auto joined = stage("weather-align", [&] { return weather::align(raw, weather_series); });
    j["joined_samples"] = joined.size();
    j["dropped_samples"] = joined.dropped_samples;

    const auto stats = stage("weather-condition", [&] {
        const auto edges = weather::equal_count_f_bins(joined, cfg.f_bins);
        return weather::condition_on_f(joined, detrended, raw, edges);
    });
    ordered_json bins = ordered_json::array();
    std::vector<std::string> rows;
    for (const auto& cs : stats) {
        bins.push_back(io::to_json(cs));
        rows.push_back(format_double(cs.f_lo) + "," + format_double(cs.f_hi) + "," +
                       std::to_string(cs.sample_count) + "," + format_double(cs.moments.mean) +
                       "," + format_double(cs.moments.stddev) + "," +
                       (cs.moments.skewness_defined ? format_double(cs.moments.skewness) : "") +
                       "," +
                       (cs.moments.kurtosis_defined ? format_double(cs.moments.kurtosis) : "") +
                       "," + std::to_string(cs.negative_hours) + "," +
                       std::to_string(cs.high_price_hours) + "," +
                       (cs.low_count ? "1" : "0"));
    }
    j["f_bins"] = bins;
    io::write_csv(cfg.out_dir / "f_conditional_stats.csv",
                  "f_lo,f_hi,samples,mean,std,skewness,kurtosis,negative_hours,high_price_hours,"
                  "low_count",
                  rows);

    ordered_json cwt_json = ordered_json::array();
    rows.clear();
    for (const weather::CwtType type : cfg.cwt_types) {
        for (const double g : cfg.persistence_hours) {
            const auto segs = stage("weather-cwt", [&] {
                return weather::cwt_segments(joined, detrended, raw, type, g);
            });
            ordered_json entry;
            entry["type"] = weather::cwt_name(type);
            entry["min_persistence_hours"] = g;
            entry["result"] = io::to_json(segs);
            cwt_json.push_back(std::move(entry));

            auto append_row = [&](const weather::ConditionalStats& cs, long long index) {
                rows.push_back(weather::cwt_name(type) + "," + format_double(g) + "," +
                               std::to_string(index) + "," + std::to_string(cs.sample_count) + "," +
                               format_double(cs.moments.mean) + "," +
                               format_double(cs.moments.stddev) + "," +
                               (cs.moments.skewness_defined ? format_double(cs.moments.skewness)
                                                            : ""));
            };
            append_row(segs.pooled, -1);
            for (std::size_t i = 0; i < segs.segments.size(); ++i) {
                append_row(segs.segments[i], static_cast<long long>(i));
            }
        }
    }
    j["cwt"] = cwt_json;
    io::write_csv(cfg.out_dir / "cwt_segments.csv",
                  "type,min_persistence_hours,segment,samples,mean,std,skewness", rows);

    if (cfg.residual_load_path) {
        io::IngestLog load_log;
        const auto load = stage("weather-load-ingest", [&] {
            return io::ingest_residual_load(*cfg.residual_load_path, {cfg.allow_gaps, 3}, &load_log);
        });
        const auto fit = stage("merit-order", [&] {
            if (load.size() != raw.size() || load.start != raw.start) {
                // align on the common overlap
                TimeSeries p = raw, rl = load;
                const auto t0 = std::max(p.start, rl.start);
                const auto step = static_cast<std::int64_t>(std::llround(p.resolution_minutes * 60));
                auto skip_p = static_cast<std::size_t>((t0 - p.start) / step);
                auto skip_rl = static_cast<std::size_t>((t0 - rl.start) / step);
                p.values.erase(p.values.begin(),
                               p.values.begin() + static_cast<std::ptrdiff_t>(skip_p));
                rl.values.erase(rl.values.begin(),
                                rl.values.begin() + static_cast<std::ptrdiff_t>(skip_rl));
                const std::size_t m = std::min(p.values.size(), rl.values.size());
                p.values.resize(m);
                rl.values.resize(m);
                p.start = rl.start = t0;
                return weather::merit_order_fit(p, rl);
            }
            return weather::merit_order_fit(raw, load);
        });
        j["merit_order"] = io::to_json(fit);
        j["merit_order"]["input"] = provenance_entry(*cfg.residual_load_path, load_log);

        rows.clear();
        const auto& joint = fit.joint;
        for (std::size_t bx = 0; bx + 1 < joint.x_edges.size(); ++bx) {
            for (std::size_t by = 0; by + 1 < joint.y_edges.size(); ++by) {
                const double d = joint.density[bx][by];
                rows.push_back(
                    format_double(0.5 * (joint.x_edges[bx] + joint.x_edges[bx + 1])) + "," +
                    format_double(0.5 * (joint.y_edges[by] + joint.y_edges[by + 1])) + "," +
                    format_double(d) + "," + (d > 0.0 ? format_double(std::log10(d)) : ""));
            }
        }
        io::write_csv(cfg.out_dir / "merit_order.csv",
                      "residual_load_center,price_center,density,log10_density", rows);
    }
    report["weather"] = j;
}

}  // namespace

AnalysisConfig AnalysisConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("config parse error in " + path.string() + ": " + e.what());
    }

    AnalysisConfig cfg;
    if (j.contains("input")) {
        const auto& input = j["input"];
        if (input.contains("prices")) cfg.prices_path = input["prices"].get<std::string>();
        if (input.contains("weather")) cfg.weather_path = input["weather"].get<std::string>();
        if (input.contains("residual_load")) {
            cfg.residual_load_path = input["residual_load"].get<std::string>();
        }
    }
    if (j.contains("detrend")) {
        const auto& d = j["detrend"];
        cfg.n_slowest = d.value("n_slowest", cfg.n_slowest);
        cfg.sift_tolerance = d.value("sift_tolerance", cfg.sift_tolerance);
        cfg.max_imfs = d.value("max_imfs", cfg.max_imfs);
    }
    if (j.contains("distfit")) {
        const auto& d = j["distfit"];
        if (d.contains("families")) {
            cfg.families.clear();
            for (const auto& name : d["families"]) {
                const auto fam = distfit::family_from_name(name.get<std::string>());
                if (!fam) {
                    throw ValidationError("config: unknown family '" + name.get<std::string>() +
                                          "'");
                }
                cfg.families.push_back(*fam);
            }
        }
        cfg.fit_options.histogram_bins = d.value("bins", cfg.fit_options.histogram_bins);
        cfg.fit_options.histogram_range_sigmas =
            d.value("range_sigmas", cfg.fit_options.histogram_range_sigmas);
        cfg.fit_options.pin_mu = d.value("pin_mu", cfg.fit_options.pin_mu);
    }
    if (j.contains("mfdfa")) {
        const auto& d = j["mfdfa"];
        cfg.poly_order = d.value("poly_order", cfg.poly_order);
        if (d.contains("bands_hours")) {
            cfg.bands_hours.clear();
            for (const auto& band : d["bands_hours"]) {
                const double lo = band.at(0).get<double>();
                const double hi = band.at(1).is_null() ? std::numeric_limits<double>::infinity()
                                                       : band.at(1).get<double>();
                cfg.bands_hours.emplace_back(lo, hi);
            }
        }
    }
    if (j.contains("superstat")) {
        const auto& d = j["superstat"];
        auto& opts = cfg.superstat_options;
        if (d.contains("t_search_hours")) {
            opts.t_search.lo_hours = d["t_search_hours"].at(0).get<double>();
            opts.t_search.hi_hours = d["t_search_hours"].at(1).get<double>();
        }
        opts.t_search.min_significance =
            d.value("crossing_significance", opts.t_search.min_significance);
        opts.max_lag_hours = d.value("max_lag_hours", opts.max_lag_hours);
        opts.extended_beta_fits = d.value("extended_beta_fits", opts.extended_beta_fits);
        const std::string method = d.value("tau_method", std::string("crossing"));
        if (method == "crossing") {
            opts.tau_method = superstat::TauMethod::crossing;
        } else if (method == "log_linear_fit") {
            opts.tau_method = superstat::TauMethod::log_linear_fit;
        } else {
            throw ValidationError("config: unknown tau_method '" + method + "'");
        }
    }
    if (j.contains("weather")) {
        const auto& d = j["weather"];
        cfg.f_bins = d.value("f_bins", cfg.f_bins);
        if (d.contains("persistence_hours")) {
            cfg.persistence_hours = d["persistence_hours"].get<std::vector<double>>();
        }
        if (d.contains("cwt_types")) {
            cfg.cwt_types.clear();
            for (const auto& name : d["cwt_types"]) {
                const auto type = weather::cwt_from_name(name.get<std::string>());
                if (!type) {
                    throw ValidationError("config: unknown weather type '" +
                                          name.get<std::string>() + "'");
                }
                cfg.cwt_types.push_back(*type);
            }
        }
    }
    if (j.contains("synth")) {
        const auto& d = j["synth"];
        cfg.synth_kind = d.value("kind", cfg.synth_kind);
        auto& s = cfg.synth_config;
        s.n_samples = d.value("n_samples", s.n_samples);
        s.resolution_minutes = d.value("resolution_minutes", s.resolution_minutes);
        s.regime_hours = d.value("regime_hours", s.regime_hours);
        s.dispersion = d.value("dispersion", s.dispersion);
        s.ar1 = d.value("ar1", s.ar1);
        s.kernel_skewness = d.value("kernel_skewness", s.kernel_skewness);
        s.skew_volatility_coupling = d.value("skew_volatility_coupling", s.skew_volatility_coupling);
        s.base_level = d.value("base_level", s.base_level);
        s.scale = d.value("scale", s.scale);
        const std::string law = d.value("law", std::string("log_normal"));
        if (law == "log_normal") {
            s.law = synth::SuperstatProcessConfig::VolatilityLaw::log_normal;
        } else if (law == "gamma") {
            s.law = synth::SuperstatProcessConfig::VolatilityLaw::gamma;
        } else {
            throw ValidationError("config: unknown volatility law '" + law + "'");
        }
    }
    if (j.contains("output") && j["output"].contains("dir")) {
        cfg.out_dir = j["output"]["dir"].get<std::string>();
    }
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

io::ordered_json AnalysisConfig::echo() const {
    ordered_json j;
    j["input"]["prices"] = prices_path.string();
    if (weather_path) j["input"]["weather"] = weather_path->string();
    if (residual_load_path) j["input"]["residual_load"] = residual_load_path->string();
    j["detrend"] = {{"n_slowest", n_slowest},
                    {"sift_tolerance", sift_tolerance},
                    {"max_imfs", max_imfs}};
    ordered_json fams = ordered_json::array();
    for (const auto f : families) fams.push_back(distfit::family_name(f));
    j["distfit"] = {{"families", fams},
                    {"bins", fit_options.histogram_bins},
                    {"range_sigmas", fit_options.histogram_range_sigmas},
                    {"pin_mu", fit_options.pin_mu}};
    ordered_json bands = ordered_json::array();
    for (const auto& band : (bands_hours.empty() ? mfdfa::default_bands_hours() : bands_hours)) {
        bands.push_back({band.first, std::isfinite(band.second) ? ordered_json(band.second)
                                                                : ordered_json(nullptr)});
    }
    j["mfdfa"] = {{"bands_hours", bands}, {"poly_order", poly_order}};
    j["superstat"] = {
        {"t_search_hours",
         {superstat_options.t_search.lo_hours, superstat_options.t_search.hi_hours}},
        {"crossing_significance", superstat_options.t_search.min_significance},
        {"max_lag_hours", superstat_options.max_lag_hours},
        {"tau_method", superstat_options.tau_method == superstat::TauMethod::crossing
                           ? "crossing"
                           : "log_linear_fit"},
        {"extended_beta_fits", superstat_options.extended_beta_fits}};
    ordered_json types = ordered_json::array();
    for (const auto t : cwt_types) types.push_back(weather::cwt_name(t));
    j["weather"] = {{"f_bins", f_bins}, {"persistence_hours", persistence_hours},
                    {"cwt_types", types}};
    j["output"] = {{"dir", out_dir.string()}};
    j["allow_gaps"] = allow_gaps;
    j["seed"] = seed;
    return j;
}

io::ordered_json run(const std::string& subcommand, const AnalysisConfig& config) {
    if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end()) {
        throw ValidationError("unknown subcommand '" + subcommand + "'");
    }
    std::filesystem::create_directories(config.out_dir);

    ordered_json report;
    report["tool"] = "spotstat";
    report["version"] = kVersion;
    report["subcommand"] = subcommand;
    report["config"] = config.echo();

    if (subcommand == "synth") {
        run_synth(config, report);
        io::write_report(config.out_dir / "report.json", report);
        return report;
    }

    if (config.prices_path.empty()) {
        throw ValidationError("no price input configured (input.prices)");
    }
    if (!std::filesystem::exists(config.prices_path)) {
        throw ValidationError("price input file does not exist: " + config.prices_path.string());
    }

    io::IngestLog price_log;
    const TimeSeries raw = stage("ingest", [&] {
        return io::ingest_prices(config.prices_path, {config.allow_gaps, 3}, &price_log);
    });
    report["inputs"] = ordered_json::array({provenance_entry(config.prices_path, price_log)});

    const auto [detrended, trend] = stage("detrend", [&] {
        return emd::detrend(raw, config.n_slowest, config.sift_tolerance, config.max_imfs);
    });

    const bool all = subcommand == "all";
    if (all || subcommand == "detrend") {
        const auto dec = stage("detrend", [&] {
            return emd::decompose(raw, config.max_imfs, config.sift_tolerance);
        });
        ordered_json j = io::to_json(dec);
        j["n_slowest_removed"] = config.n_slowest;
        j["raw_moments"] = io::to_json(moments(raw));
        j["detrended_moments"] = io::to_json(moments(detrended));
        report["detrend"] = j;
        write_series_csv(config.out_dir / "detrended.csv", detrended, "price");
        write_series_csv(config.out_dir / "trend.csv", trend, "price");
    }
    if (all || subcommand == "fit-dist") run_fit_dist(config, detrended, report);
    if (all || subcommand == "mfdfa") run_mfdfa(config, detrended, report);
    if (all || subcommand == "superstat") run_superstat(config, detrended, report);
    if (all || subcommand == "weather") run_weather(config, raw, detrended, report);

    io::write_report(config.out_dir / "report.json", report);
    return report;
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ValidationError&) {
        return 1;
    } catch (const std::exception&) {
        return 2;
    } catch (...) {
        return 2;
    }
}

}  // namespace spotstat::cli
