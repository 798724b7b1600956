#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spotstat/report.hpp"
#include "spotstat/superstat.hpp"
#include "spotstat/synthetic.hpp"
#include "spotstat/weather.hpp"

namespace spotstat::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Declarative analysis configuration. Loaded from a JSON file; CLI flags
/// override individual fields afterwards.
struct AnalysisConfig {
    std::filesystem::path prices_path;
    std::optional<std::filesystem::path> weather_path;
    std::optional<std::filesystem::path> residual_load_path;

    int n_slowest = 3;
    double sift_tolerance = 0.05;
    int max_imfs = 32;

    std::vector<distfit::Family> families{distfit::Family::gaussian, distfit::Family::q_gaussian,
                                          distfit::Family::alpha_stable};
    distfit::FitOptions fit_options;

    std::vector<std::pair<double, double>> bands_hours;  // empty: paper defaults
    int poly_order = 1;

    superstat::SuperstatOptions superstat_options;

    std::size_t f_bins = 10;
    std::vector<double> persistence_hours{12.0, 24.0};
    std::vector<weather::CwtType> cwt_types{weather::CwtType::W, weather::CwtType::Anticyclonic};

    synth::SuperstatProcessConfig synth_config;
    std::string synth_kind = "superstat";  // or "white_noise"

    std::filesystem::path out_dir = "out";
    bool allow_gaps = false;
    std::uint64_t seed = 1;

    static AnalysisConfig from_file(const std::filesystem::path& path);
    io::ordered_json echo() const;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"detrend", "fit-dist", "mfdfa",
                                                "superstat", "weather", "all", "synth"};
    return names;
}

/// Executes one subcommand: loads and validates inputs, runs the module
/// pipelines, writes report.json plus the plot-data CSVs into out_dir, and
/// returns the report. Throws ValidationError (exit 1) or NumericalError
/// (exit 2) with the failing stage named.
io::ordered_json run(const std::string& subcommand, const AnalysisConfig& config);

/// Exit-code mapping used by the executable: 1 for validation problems,
/// 2 for numerical failures.
int exit_code_for_current_exception();

}  // namespace spotstat::cli
