#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qgame/scenarios.hpp"

namespace qgame::cli {

/// Process exit codes: configuration problems and numerical failures are
/// distinguishable by the caller.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Serializes a double with 17 significant digits, locale-independent;
/// round-trips exactly through parsing.
std::string format_double(double v);

/// Parses an angle given as a decimal literal or as a pi fraction such as
/// "pi/2", "3pi/4", "-pi/6", "pi", "2pi". Throws std::invalid_argument.
double parse_angle(const std::string& token);

/// A fixed value or a uniform grid "min:max:count" over an axis.
struct AxisSpec {
    bool is_sweep = false;
    double value = 0.0;
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    std::vector<double> grid() const;
    bool operator==(const AxisSpec&) const = default;
};

/// Parses "v" or "min:max:count"; components may use pi fractions.
AxisSpec parse_axis(const std::string& token);

/// Phase selection: a named class, or one axis spec per angle.
struct PhasesOption {
    std::optional<PhaseClass> named;  // trivial / pseudo / case3 / case4
    std::optional<AxisSpec> xi0;
    std::optional<AxisSpec> xi1;

    bool operator==(const PhasesOption&) const = default;
};

PhasesOption parse_phases(const std::string& token);

/// Parsed run configuration shared by all commands. Values may come from a
/// key=value config file and from command-line flags; flags win.
struct RunConfig {
    std::optional<PrisonersDilemmaParams> pd;  // pd=a,b,c
    std::optional<GameMatrix2> matrix;         // matrix=a00,a01,a10,a11
    std::optional<AxisSpec> gamma;             // gamma=v | min:max:count
    std::optional<PhasesOption> phases;        // phases=pseudo | xi0,xi1 | spec,spec
    std::optional<std::pair<double, double>> x;  // x=x0,x1
    std::optional<std::pair<double, double>> y;
    std::optional<std::string> out;            // out=path
    std::optional<int> grid;                   // grid=n
    std::optional<double> tol;                 // tol=eps
    std::optional<std::uint64_t> seed;         // seed=n
    bool inject_sign_flip = false;             // verify fault-injection hook

    bool operator==(const RunConfig&) const;
};

/// Applies one key=value setting. Throws std::invalid_argument on unknown
/// keys or malformed values.
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Loads a plain-text key=value file ('#' starts a comment). Throws on
/// unreadable files or malformed lines.
RunConfig load_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Emits the configuration as key=value text; parsing it back yields an
/// equal configuration.
std::string serialize_config(const RunConfig& cfg);

/// CSV emission. Float columns use format_double; rows end with '\n'.
std::string gamma_sweep_csv(const std::vector<GammaSweepRecord>& records);
std::string phase_sweep_csv(const std::vector<PhaseSweepRecord>& records);

/// Writes content to path; on any failure no partial file is left behind.
bool write_file_exact(const std::string& path, const std::string& content);

/// Command entry points. Reports go to `out`; a single-line
/// "error: ..." diagnostic goes to `err` on failure. Return an exit code.
int run_payoff(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_nash(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep_gamma(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep_phases(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace qgame::cli
