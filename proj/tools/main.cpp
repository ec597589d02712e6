#include "noma/config.hpp"
#include "noma/csv_io.hpp"
#include "noma/errors.hpp"
#include "noma/svg_plot.hpp"
#include "noma/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#ifndef NOMA_PRESET_DIR
#define NOMA_PRESET_DIR "presets"
#endif

namespace {

std::string default_preset_dir() {
    const char* env = std::getenv("NOMA_OUTAGE_PRESETS");
    return (env && *env) ? env : NOMA_PRESET_DIR;
}

struct RunArgs {
    std::string config;
    std::string preset;
    std::string preset_dir = default_preset_dir();
    std::string out_dir = "out";
    std::uint64_t trials = 0;
    bool trials_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string methods;
    std::string format = "csv,svg";
    unsigned workers = 0;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto end = (comma == std::string::npos) ? s.size() : comma;
        std::string tok = s.substr(pos, end - pos);
        const auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) tok.clear();
        else tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
        out.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void do_run(const RunArgs& args) {
    namespace fs = std::filesystem;

    if (args.config.empty() == args.preset.empty())
        throw noma::validation_error("give exactly one of --config or --preset");

    const std::string cfg_path =
        !args.config.empty() ? args.config
                             : (fs::path(args.preset_dir) / (args.preset + ".cfg")).string();

    noma::RunConfig cfg = noma::load_config(cfg_path, &std::cerr);

    if (args.trials_set) {
        if (args.trials == 0) throw noma::validation_error("--trials must be >= 1");
        cfg.sweep.trials = args.trials;
    }
    if (args.seed_set) cfg.sweep.seed = args.seed;
    if (!args.methods.empty()) {
        cfg.sweep.method_analytic = cfg.sweep.method_mc = false;
        for (const std::string& tok : split_list(args.methods)) {
            if (tok == "analytic") cfg.sweep.method_analytic = true;
            else if (tok == "mc") cfg.sweep.method_mc = true;
            else throw noma::validation_error("--methods: unknown method '" + tok + "' (analytic or mc)");
        }
        if (!cfg.sweep.method_analytic && !cfg.sweep.method_mc)
            throw noma::validation_error("--methods must list at least one method");
    }

    bool want_csv = false, want_svg = false;
    for (const std::string& tok : split_list(args.format)) {
        if (tok == "csv") want_csv = true;
        else if (tok == "svg") want_svg = true;
        else throw noma::validation_error("--format: unknown format '" + tok + "' (csv or svg)");
    }
    if (!want_csv && !want_svg)
        throw noma::validation_error("--format must list at least one of csv, svg");

    const std::vector<noma::ResultRow> rows =
        noma::run_sweep(cfg.params, cfg.sweep, args.workers, &std::cerr);

    fs::create_directories(args.out_dir);
    const std::string stem = fs::path(cfg_path).stem().string();
    if (want_csv) {
        const std::string path = (fs::path(args.out_dir) / (stem + ".csv")).string();
        noma::emit_csv(rows, path);
        std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
    }
    if (want_svg) {
        const std::string path = (fs::path(args.out_dir) / (stem + ".svg")).string();
        noma::emit_plot(rows, cfg.sweep, stem + ": outage vs " + cfg.sweep.param, path);
        std::cout << "wrote " << path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage-probability sweeps for a wireless-powered two-user relay downlink"};
    app.require_subcommand(1);

    RunArgs args;
    CLI::App* run = app.add_subcommand("run", "Evaluate a sweep from a config file or preset");
    run->add_option("--config", args.config, "Config file path (mutually exclusive with --preset)");
    run->add_option("--preset", args.preset, "Built-in figure preset")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    run->add_option("--preset-dir", args.preset_dir,
                    "Directory holding the preset .cfg files (default: $NOMA_OUTAGE_PRESETS "
                    "or " NOMA_PRESET_DIR ")");
    run->add_option("--out", args.out_dir, "Output directory (default: out)");
    auto* trials_opt = run->add_option("--trials", args.trials, "Override sweep trial count");
    auto* seed_opt = run->add_option("--seed", args.seed, "Override sweep master seed");
    run->add_option("--methods", args.methods, "Override methods: analytic,mc");
    run->add_option("--format", args.format, "Outputs to write: csv,svg (default both)");
    run->add_option("--workers", args.workers, "Worker threads (default 0 = hardware)");

    try {
        app.parse(argc, argv);
        args.trials_set = trials_opt->count() > 0;
        args.seed_set = seed_opt->count() > 0;
        do_run(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the usage message
        return 1;
    } catch (const noma::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const noma::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
