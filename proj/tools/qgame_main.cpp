#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgame/cli_support.hpp"

namespace {

using qgame::cli::RunConfig;

struct FlagSet {
    std::optional<std::string> config_path, pd, matrix, gamma, phases, x, y, out, grid, tol,
        seed;
    bool inject_sign_flip = false;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
    cmd->add_option("--config", f.config_path, "key=value config file; flags override it");
    cmd->add_option("--pd", f.pd, "prisoner's-dilemma payoffs a,b,c");
    cmd->add_option("--matrix", f.matrix, "game matrix entries a00,a01,a10,a11");
    cmd->add_option("--gamma", f.gamma,
                    "entanglement angle: value or min:max:count (pi fractions allowed)");
    cmd->add_option("--phases", f.phases,
                    "trivial|pseudo|case3|case4 or xi0,xi1 (axis sweeps for sweep-phases)");
    cmd->add_option("--x", f.x, "player-1 density x0,x1");
    cmd->add_option("--y", f.y, "player-2 density y0,y1");
    cmd->add_option("--out", f.out, "output CSV path (stdout when omitted)");
    cmd->add_option("--grid", f.grid, "solver scan / oracle grid size");
    cmd->add_option("--tol", f.tol, "solver refinement tolerance");
    cmd->add_option("--seed", f.seed, "seed for randomized verification");
}

int build_config(const FlagSet& f, RunConfig& cfg) {
    if (f.config_path) cfg = qgame::cli::load_config_file(*f.config_path);
    if (f.pd) qgame::cli::apply_key_value(cfg, "pd", *f.pd);
    if (f.matrix) qgame::cli::apply_key_value(cfg, "matrix", *f.matrix);
    if (f.gamma) qgame::cli::apply_key_value(cfg, "gamma", *f.gamma);
    if (f.phases) qgame::cli::apply_key_value(cfg, "phases", *f.phases);
    if (f.x) qgame::cli::apply_key_value(cfg, "x", *f.x);
    if (f.y) qgame::cli::apply_key_value(cfg, "y", *f.y);
    if (f.out) qgame::cli::apply_key_value(cfg, "out", *f.out);
    if (f.grid) qgame::cli::apply_key_value(cfg, "grid", *f.grid);
    if (f.tol) qgame::cli::apply_key_value(cfg, "tol", *f.tol);
    if (f.seed) qgame::cli::apply_key_value(cfg, "seed", *f.seed);
    cfg.inject_sign_flip = f.inject_sign_flip;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qgame: payoffs, density-restricted Nash equilibria and deterministic parameter "
        "sweeps of entangled symmetric 2x2 games"};
    app.require_subcommand(1);

    FlagSet payoff_flags, nash_flags, sweep_gamma_flags, sweep_phases_flags, verify_flags;

    CLI::App* payoff = app.add_subcommand(
        "payoff", "classical and quantum payoffs of two fixed strategies");
    add_common_flags(payoff, payoff_flags);

    CLI::App* nash = app.add_subcommand(
        "nash", "symmetric equilibria and the Pareto optimum at fixed gamma and phases");
    add_common_flags(nash, nash_flags);

    CLI::App* sweep_gamma =
        app.add_subcommand("sweep-gamma", "equilibrium sweep over the entanglement angle");
    add_common_flags(sweep_gamma, sweep_gamma_flags);

    CLI::App* sweep_phases =
        app.add_subcommand("sweep-phases", "equilibrium sweep over phase angles and gamma");
    add_common_flags(sweep_phases, sweep_phases_flags);

    CLI::App* verify = app.add_subcommand(
        "verify", "run the built-in identity and oracle-equivalence checks");
    add_common_flags(verify, verify_flags);
    verify->add_flag("--inject-sign-flip", verify_flags.inject_sign_flip)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qgame::cli::kExitConfig;
    }

    auto dispatch = [&](CLI::App* cmd, const FlagSet& flags,
                        int (*runner)(const RunConfig&, std::ostream&, std::ostream&)) -> int {
        if (!cmd->parsed()) return -1;
        RunConfig cfg;
        try {
            build_config(flags, cfg);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return qgame::cli::kExitConfig;
        }
        return runner(cfg, std::cout, std::cerr);
    };

    int rc;
    if ((rc = dispatch(payoff, payoff_flags, qgame::cli::run_payoff)) >= 0) return rc;
    if ((rc = dispatch(nash, nash_flags, qgame::cli::run_nash)) >= 0) return rc;
    if ((rc = dispatch(sweep_gamma, sweep_gamma_flags, qgame::cli::run_sweep_gamma)) >= 0)
        return rc;
    if ((rc = dispatch(sweep_phases, sweep_phases_flags, qgame::cli::run_sweep_phases)) >= 0)
        return rc;
    if ((rc = dispatch(verify, verify_flags, qgame::cli::run_verify)) >= 0) return rc;
    return qgame::cli::kExitConfig;
}
