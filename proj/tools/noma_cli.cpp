// Scenario-driven front end: runs the analytic + Monte Carlo pipelines over
// config-defined SNR sweeps and emits figure-ready CSV/JSON.
//
// Exit codes: 0 success, 1 validation-check failure, 2 configuration error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "noma/rates.hpp"
#include "noma/scenario.hpp"
#include "noma/sweep.hpp"
#include "noma/validate.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> quadrature_n;
    std::optional<int> workers;
    bool oma_split = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* cfg = cmd->add_option("--config", args.config_path, "scenario JSON file");
    if (config_required) cfg->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: .)");
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--trials", args.trials, "override the config trial count");
    cmd->add_option("--quadrature-n", args.quadrature_n, "override the quadrature order");
    cmd->add_option("--workers", args.workers, "worker threads (0 = hardware)");
    cmd->add_flag("--oma-split", args.oma_split,
                  "time-share the orthogonal baseline across users");
}

noma::cli::ScenarioConfig effective_config(const CommonArgs& args) {
    noma::cli::ScenarioConfig cfg = noma::cli::load_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.trials) cfg.trials = *args.trials;
    if (args.quadrature_n) cfg.quadrature_n = *args.quadrature_n;
    if (args.workers) cfg.workers = *args.workers;
    if (args.oma_split) cfg.oma_split = true;
    noma::cli::validate_config(cfg);
    return cfg;
}

void warn_on_infeasible(const noma::cli::ScenarioConfig& cfg) {
    if (!cfg.targets_bpcu.has_value()) return;
    Eigen::ArrayXd t(cfg.targets_bpcu->size());
    for (std::size_t i = 0; i < cfg.targets_bpcu->size(); ++i) {
        t[static_cast<Eigen::Index>(i)] = (*cfg.targets_bpcu)[i];
    }
    const auto ok = noma::rates::feasibility(noma::cli::resolve_alloc(cfg),
                                             noma::rates::RateTargets(t));
    for (int j = 0; j < ok.size(); ++j) {
        if (!ok[j]) {
            std::cerr << "warning: user " << (j + 1)
                      << " violates the decodability condition; its outage "
                         "probability is one at every SNR\n";
        }
    }
}

void ensure_out_dir(const std::string& dir) {
    if (!dir.empty() && !fs::exists(dir)) fs::create_directories(dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"downlink NOMA outage / ergodic-rate toolkit"};
    app.require_subcommand(1);

    CommonArgs outage_args;
    CommonArgs ergodic_args;
    CommonArgs sweep_args;
    CommonArgs validate_args;

    auto* cmd_outage =
        app.add_subcommand("outage", "per-user outage sweep (needs targets_bpcu)");
    add_common(cmd_outage, outage_args, true);

    auto* cmd_ergodic =
        app.add_subcommand("ergodic", "sum-rate sweep with opportunistic targets");
    add_common(cmd_ergodic, ergodic_args, true);

    auto* cmd_sweep =
        app.add_subcommand("sweep", "grid sweep over users/alpha (sweep_users, sweep_alpha)");
    add_common(cmd_sweep, sweep_args, true);

    auto* cmd_validate =
        app.add_subcommand("validate", "run the built-in cross-validation battery");
    add_common(cmd_validate, validate_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are configuration errors
    }

    try {
        if (cmd_outage->parsed()) {
            const auto cfg = effective_config(outage_args);
            if (!cfg.targets_bpcu.has_value()) {
                throw noma::cli::ConfigError("outage: config must define targets_bpcu");
            }
            warn_on_infeasible(cfg);
            const auto rows = noma::cli::run_outage_sweep(cfg);
            ensure_out_dir(outage_args.out_dir);
            const fs::path base(outage_args.out_dir);
            noma::cli::write_text_file((base / "outage.csv").string(),
                                       noma::cli::outage_csv(cfg, rows));
            noma::cli::write_text_file((base / "outage.json").string(),
                                       noma::cli::outage_json(cfg, rows));
            std::cout << "wrote " << (base / "outage.csv").string() << " and .json ("
                      << rows.size() << " SNR points)\n";
        } else if (cmd_ergodic->parsed()) {
            const auto cfg = effective_config(ergodic_args);
            if (cfg.targets_bpcu.has_value()) {
                throw noma::cli::ConfigError(
                    "ergodic: remove targets_bpcu (rates are opportunistic)");
            }
            const auto rows = noma::cli::run_ergodic_sweep(cfg);
            ensure_out_dir(ergodic_args.out_dir);
            const fs::path base(ergodic_args.out_dir);
            noma::cli::write_text_file((base / "ergodic.csv").string(),
                                       noma::cli::ergodic_csv(cfg, rows));
            noma::cli::write_text_file((base / "ergodic.json").string(),
                                       noma::cli::ergodic_json(cfg, rows));
            std::cout << "wrote " << (base / "ergodic.csv").string() << " and .json ("
                      << rows.size() << " SNR points)\n";
        } else if (cmd_sweep->parsed()) {
            const auto cfg = effective_config(sweep_args);
            if (cfg.targets_bpcu.has_value()) warn_on_infeasible(cfg);
            const auto result = noma::cli::run_grid_sweep(cfg);
            ensure_out_dir(sweep_args.out_dir);
            const fs::path base(sweep_args.out_dir);
            noma::cli::write_text_file((base / "sweep.csv").string(), result.csv);
            noma::cli::write_text_file((base / "sweep.json").string(), result.json);
            std::cout << "wrote " << (base / "sweep.csv").string() << " and .json\n";
        } else if (cmd_validate->parsed()) {
            noma::cli::ValidateOptions opt;
            if (!validate_args.config_path.empty()) {
                const auto cfg = effective_config(validate_args);
                opt.seed = cfg.seed;
                opt.trials = cfg.trials;
                opt.workers = cfg.workers;
                opt.quadrature_n = cfg.quadrature_n;
            } else {
                if (validate_args.seed) opt.seed = *validate_args.seed;
                if (validate_args.trials) opt.trials = *validate_args.trials;
                if (validate_args.workers) opt.workers = *validate_args.workers;
                if (validate_args.quadrature_n) opt.quadrature_n = *validate_args.quadrature_n;
            }
            const auto results = noma::cli::run_validation(opt);
            const int failures = noma::cli::print_report(std::cout, results);
            return failures == 0 ? 0 : 1;
        }
    } catch (const noma::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
