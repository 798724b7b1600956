#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spotstat/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spotstat — spot-price time-series analysis"};
    app.set_version_flag("--version", spotstat::cli::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool allow_gaps = false;
    std::uint64_t seed = 0;
    bool seed_given = false;

    for (const auto& name : spotstat::cli::subcommands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--allow-gaps", allow_gaps,
                      "keep the longest contiguous run instead of failing on large gaps");
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](std::uint64_t value) {
                seed = value;
                seed_given = true;
            },
            "seed for synthetic fixture generation (overrides config)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string subcommand = app.get_subcommands().front()->get_name();

    try {
        auto config = spotstat::cli::AnalysisConfig::from_file(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (allow_gaps) config.allow_gaps = true;
        if (seed_given) config.seed = seed;

        spotstat::cli::run(subcommand, config);
        std::cout << "spotstat " << subcommand << ": report written to "
                  << (config.out_dir / "report.json").string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "spotstat " << subcommand << ": " << e.what() << "\n";
        return spotstat::cli::exit_code_for_current_exception();
    }
}
