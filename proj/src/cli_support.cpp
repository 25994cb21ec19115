#include "qgame/cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace qgame::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

double parse_number(const std::string& token) {
    const std::string t = trim(token);
    if (t.empty()) throw std::invalid_argument("empty numeric token");
    double v = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("malformed number '" + t + "'");
    return v;
}

long long parse_integer(const std::string& token) {
    const std::string t = trim(token);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw std::invalid_argument("malformed integer '" + t + "'");
    return v;
}

PhaseProfile fixed_profile(const PhasesOption& opt) {
    if (opt.named) {
        switch (*opt.named) {
            case PhaseClass::Trivial: return PhaseProfile::trivial();
            case PhaseClass::Pseudoclassical: return PhaseProfile::pseudoclassical();
            case PhaseClass::SeparableCase3: return PhaseProfile::separable_case3();
            case PhaseClass::SeparableCase4: return PhaseProfile::separable_case4();
            case PhaseClass::Generic: break;
        }
        throw std::invalid_argument("phase class has no fixed profile");
    }
    if (!opt.xi0 || !opt.xi1 || opt.xi0->is_sweep || opt.xi1->is_sweep)
        throw std::invalid_argument("this command needs fixed phases, not a sweep");
    return PhaseProfile::symmetric(opt.xi0->value, opt.xi1->value);
}

GameMatrix2 game_matrix_of(const RunConfig& cfg) {
    if (cfg.pd.has_value() == cfg.matrix.has_value())
        throw std::invalid_argument("exactly one of --pd and --matrix must be given");
    if (cfg.pd) return PrisonersDilemmaParams::checked(cfg.pd->a, cfg.pd->b, cfg.pd->c).matrix();
    if (!cfg.matrix->is_finite())
        throw std::invalid_argument("game matrix entries must be finite");
    return *cfg.matrix;
}

SolverSettings solver_settings_of(const RunConfig& cfg) {
    SolverSettings s;
    if (cfg.grid) s.scan_points = *cfg.grid;
    if (cfg.tol) s.refine_tol = *cfg.tol;
    return s;
}

int config_error(std::ostream& err, const std::string& what) {
    err << "error: " << what << "\n";
    return kExitConfig;
}

std::string axis_to_string(const AxisSpec& a) {
    if (!a.is_sweep) return format_double(a.value);
    return format_double(a.min) + ":" + format_double(a.max) + ":" + std::to_string(a.count);
}

const char* named_phase_token(PhaseClass c) {
    switch (c) {
        case PhaseClass::Trivial: return "trivial";
        case PhaseClass::Pseudoclassical: return "pseudo";
        case PhaseClass::SeparableCase3: return "case3";
        case PhaseClass::SeparableCase4: return "case4";
        case PhaseClass::Generic: break;
    }
    return "generic";
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_angle(const std::string& token) {
    const std::string t = trim(token);
    const auto pipos = t.find("pi");
    if (pipos == std::string::npos) return parse_number(t);

    std::string prefix = trim(t.substr(0, pipos));
    std::string suffix = trim(t.substr(pipos + 2));

    double mult = 1.0;
    if (prefix == "-")
        mult = -1.0;
    else if (!prefix.empty())
        mult = parse_number(prefix);

    double div = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/')
            throw std::invalid_argument("malformed angle '" + t + "'");
        div = parse_number(suffix.substr(1));
        if (div == 0.0) throw std::invalid_argument("zero divisor in angle '" + t + "'");
    }
    return mult * kPi / div;
}

std::vector<double> AxisSpec::grid() const {
    if (!is_sweep) return {value};
    std::vector<double> g(count);
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = min + i * step;
    return g;
}

AxisSpec parse_axis(const std::string& token) {
    const auto parts = split(token, ':');
    AxisSpec spec;
    if (parts.size() == 1) {
        spec.value = parse_angle(parts[0]);
        return spec;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("axis must be 'value' or 'min:max:count', got '" + token + "'");
    spec.is_sweep = true;
    spec.min = parse_angle(parts[0]);
    spec.max = parse_angle(parts[1]);
    const long long n = parse_integer(parts[2]);
    if (n < 2) throw std::invalid_argument("sweep count must be at least 2");
    spec.count = static_cast<int>(n);
    return spec;
}

PhasesOption parse_phases(const std::string& token) {
    const std::string t = trim(token);
    PhasesOption opt;
    if (t == "trivial") {
        opt.named = PhaseClass::Trivial;
        return opt;
    }
    if (t == "pseudo" || t == "pseudoclassical") {
        opt.named = PhaseClass::Pseudoclassical;
        return opt;
    }
    if (t == "case3") {
        opt.named = PhaseClass::SeparableCase3;
        return opt;
    }
    if (t == "case4") {
        opt.named = PhaseClass::SeparableCase4;
        return opt;
    }
    const auto parts = split(t, ',');
    if (parts.size() != 2)
        throw std::invalid_argument(
            "phases must be a named class or 'xi0,xi1' (each a value or min:max:count)");
    opt.xi0 = parse_axis(parts[0]);
    opt.xi1 = parse_axis(parts[1]);
    return opt;
}

bool RunConfig::operator==(const RunConfig& o) const {
    return pd == o.pd && matrix == o.matrix && gamma == o.gamma && phases == o.phases &&
           x == o.x && y == o.y && out == o.out && grid == o.grid && tol == o.tol &&
           seed == o.seed && inject_sign_flip == o.inject_sign_flip;
}

void apply_key_value(RunConfig& cfg, const std::string& rawkey, const std::string& rawvalue) {
    const std::string key = trim(rawkey);
    const std::string value = trim(rawvalue);
    if (key == "pd") {
        const auto parts = split(value, ',');
        if (parts.size() != 3) throw std::invalid_argument("pd needs 'a,b,c'");
        cfg.pd = PrisonersDilemmaParams::checked(
            parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]));
    } else if (key == "matrix") {
        const auto parts = split(value, ',');
        if (parts.size() != 4) throw std::invalid_argument("matrix needs 'a00,a01,a10,a11'");
        cfg.matrix = GameMatrix2{parse_number(parts[0]), parse_number(parts[1]),
                                 parse_number(parts[2]), parse_number(parts[3])};
        if (!cfg.matrix->is_finite())
            throw std::invalid_argument("game matrix entries must be finite");
    } else if (key == "gamma") {
        cfg.gamma = parse_axis(value);
    } else if (key == "phases") {
        cfg.phases = parse_phases(value);
    } else if (key == "x" || key == "y") {
        const auto parts = split(value, ',');
        if (parts.size() != 2) throw std::invalid_argument(key + " needs 'w0,w1'");
        const std::pair<double, double> d{parse_number(parts[0]), parse_number(parts[1])};
        (key == "x" ? cfg.x : cfg.y) = d;
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "grid") {
        const long long n = parse_integer(value);
        if (n < 3) throw std::invalid_argument("grid must be at least 3");
        cfg.grid = static_cast<int>(n);
    } else if (key == "tol") {
        const double t = parse_number(value);
        if (!(t > 0.0)) throw std::invalid_argument("tol must be positive");
        cfg.tol = t;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_integer(value));
    } else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: '" + line + "'");
        apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    if (cfg.pd)
        out += "pd=" + format_double(cfg.pd->a) + "," + format_double(cfg.pd->b) + "," +
               format_double(cfg.pd->c) + "\n";
    if (cfg.matrix)
        out += "matrix=" + format_double(cfg.matrix->a00) + "," + format_double(cfg.matrix->a01) +
               "," + format_double(cfg.matrix->a10) + "," + format_double(cfg.matrix->a11) + "\n";
    if (cfg.gamma) out += "gamma=" + axis_to_string(*cfg.gamma) + "\n";
    if (cfg.phases) {
        if (cfg.phases->named)
            out += std::string("phases=") + named_phase_token(*cfg.phases->named) + "\n";
        else
            out += "phases=" + axis_to_string(*cfg.phases->xi0) + "," +
                   axis_to_string(*cfg.phases->xi1) + "\n";
    }
    if (cfg.x) out += "x=" + format_double(cfg.x->first) + "," + format_double(cfg.x->second) + "\n";
    if (cfg.y) out += "y=" + format_double(cfg.y->first) + "," + format_double(cfg.y->second) + "\n";
    if (cfg.out) out += "out=" + *cfg.out + "\n";
    if (cfg.grid) out += "grid=" + std::to_string(*cfg.grid) + "\n";
    if (cfg.tol) out += "tol=" + format_double(*cfg.tol) + "\n";
    if (cfg.seed) out += "seed=" + std::to_string(*cfg.seed) + "\n";
    return out;
}

std::string gamma_sweep_csv(const std::vector<GammaSweepRecord>& records) {
    std::string csv = "gamma,t_star,payoff_classical,payoff_quantum,branch,eq_count\n";
    for (const auto& r : records) {
        csv += format_double(r.gamma) + "," + format_double(r.t_star) + "," +
               format_double(r.payoff_classical_at_eq) + "," +
               format_double(r.payoff_quantum_at_eq) + "," + to_string(r.branch) + "," +
               std::to_string(r.equilibrium_count) + "\n";
    }
    return csv;
}

std::string phase_sweep_csv(const std::vector<PhaseSweepRecord>& records) {
    std::string csv = "xi0,xi1,gamma,t_star,payoff_classical,payoff_quantum\n";
    for (const auto& r : records) {
        csv += format_double(r.xi0) + "," + format_double(r.xi1) + "," +
               format_double(r.gamma) + "," + format_double(r.t_star) + "," +
               format_double(r.payoff_classical) + "," + format_double(r.payoff_quantum) + "\n";
    }
    return csv;
}

bool write_file_exact(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        out.close();
        std::remove(path.c_str());
        return false;
    }
    return true;
}

namespace {

int emit_csv(const RunConfig& cfg, const std::string& csv, std::ostream& out,
             std::ostream& err) {
    if (!cfg.out) {
        out << csv;
        return kExitOk;
    }
    if (!write_file_exact(*cfg.out, csv))
        return config_error(err, "cannot write output file '" + *cfg.out + "'");
    return kExitOk;
}

} // namespace

int run_payoff(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const GameMatrix2 A = game_matrix_of(cfg);
        if (!cfg.gamma || cfg.gamma->is_sweep)
            return config_error(err, "payoff needs a fixed --gamma value");
        if (!cfg.x || !cfg.y) return config_error(err, "payoff needs --x and --y densities");
        const PhaseProfile phases =
            cfg.phases ? fixed_profile(*cfg.phases) : PhaseProfile::trivial();
        const EntanglementParam gamma = EntanglementParam::checked(cfg.gamma->value);

        const StrategyDensity x = StrategyDensity::checked(cfg.x->first, cfg.x->second);
        const StrategyDensity y = StrategyDensity::checked(cfg.y->first, cfg.y->second);
        const QuantumStrategy alpha{x, phases.xi0, phases.xi1};
        const QuantumStrategy beta{y, phases.ups0, phases.ups1};

        const double classical = classical_payoff(x, y, A);
        const double conjugate = conjugate_payoff(x, y, A);
        const double q1 = quantum_payoff(gamma, alpha, beta, A);
        const double q2 = quantum_payoff_player2(gamma, alpha, beta, A);
        const auto d = effective_decomposition(gamma, phases, A);
        const double residual = std::abs(payoff_from_decomposition(d, x, y) - q1);

        out << "gamma                     : " << format_double(gamma.gamma) << "\n";
        out << "phases (xi0, xi1)         : " << format_double(phases.xi0) << ", "
            << format_double(phases.xi1) << "  [" << to_string(classify_phase_profile(phases))
            << "]\n";
        out << "classical payoff          : " << format_double(classical) << "\n";
        out << "conjugate payoff          : " << format_double(conjugate) << "\n";
        out << "quantum payoff (player 1) : " << format_double(q1) << "\n";
        out << "quantum payoff (player 2) : " << format_double(q2) << "\n";
        out << "decomposition residual    : " << format_double(residual) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        return config_error(err, e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int run_nash(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const GameMatrix2 A = game_matrix_of(cfg);
        if (!cfg.gamma || cfg.gamma->is_sweep)
            return config_error(err, "nash needs a fixed --gamma value");
        const PhaseProfile phases =
            cfg.phases ? fixed_profile(*cfg.phases) : PhaseProfile::trivial();
        const EntanglementParam gamma = EntanglementParam::checked(cfg.gamma->value);
        const SolverSettings settings = solver_settings_of(cfg);
        const double coincidence_tol = cfg.tol.value_or(1e-6);

        const PayoffFn game = make_quantum_payoff(gamma, phases, A);
        auto classical_diag = [&A](double t) {
            return (1.0 - t) * (A.a00 * (1.0 - t) + A.a01 * t) +
                   t * (A.a10 * (1.0 - t) + A.a11 * t);
        };
        const EquilibriumReport report = symmetric_nash(game, classical_diag, settings);

        out << "equilibria: " << report.equilibria.size() << "\n";
        for (const auto& e : report.equilibria) {
            out << "  t = " << format_double(e.t_star)
                << "  payoff_classical = " << format_double(e.payoff_classical)
                << "  payoff_quantum = " << format_double(e.payoff_quantum) << "  ["
                << to_string(e.kind) << "]";
            if (e.pareto_dominant) out << " [dominant]";
            if (e.pareto_efficient) out << " [pareto-efficient]";
            out << "\n";
        }
        if (report.equilibria.empty())
            out << "  none; least-exploitable t = " << format_double(report.least_exploitable_t)
                << " (gain " << format_double(report.least_exploitable_gain) << ")\n";
        out << "pareto optimum: t = " << format_double(report.pareto.t)
            << "  payoff = " << format_double(report.pareto.payoff) << "\n";
        const bool coincide = check_pareto_nash_coincidence(report, coincidence_tol);
        out << "nash-pareto coincidence: " << (coincide ? "true" : "false") << "\n";

        if (cfg.out) {
            double t = report.least_exploitable_t;
            SweepBranch branch = SweepBranch::Interior;
            for (const auto& e : report.equilibria)
                if (e.pareto_dominant) t = e.t_star;
            if (t <= settings.merge_tol) branch = SweepBranch::BoundaryLow;
            else if (t >= 1.0 - settings.merge_tol) branch = SweepBranch::BoundaryHigh;
            std::string csv =
                "gamma,t_star,payoff_classical,payoff_quantum,branch,eq_count,pareto_t,"
                "pareto_payoff,coincidence\n";
            csv += format_double(gamma.gamma) + "," + format_double(t) + "," +
                   format_double(classical_diag(t)) + "," + format_double(game(t, t)) + "," +
                   to_string(branch) + "," + std::to_string(report.equilibria.size()) + "," +
                   format_double(report.pareto.t) + "," + format_double(report.pareto.payoff) +
                   "," + (coincide ? "true" : "false") + "\n";
            if (!write_file_exact(*cfg.out, csv))
                return config_error(err, "cannot write output file '" + *cfg.out + "'");
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        return config_error(err, e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int run_sweep_gamma(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const GameMatrix2 A = game_matrix_of(cfg);
        if (!cfg.gamma || !cfg.gamma->is_sweep)
            return config_error(err, "sweep-gamma needs --gamma min:max:count");
        const PhaseProfile phases =
            cfg.phases ? fixed_profile(*cfg.phases) : PhaseProfile::trivial();
        const auto records = gamma_sweep_matrix(A, phases, cfg.gamma->min, cfg.gamma->max,
                                                cfg.gamma->count);
        return emit_csv(cfg, gamma_sweep_csv(records), out, err);
    } catch (const std::invalid_argument& e) {
        return config_error(err, e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int run_sweep_phases(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const GameMatrix2 A = game_matrix_of(cfg);
        if (!cfg.gamma) return config_error(err, "sweep-phases needs --gamma (value or sweep)");
        if (!cfg.phases) return config_error(err, "sweep-phases needs --phases");

        std::vector<double> xi0s, xi1s;
        if (cfg.phases->named) {
            const PhaseProfile p = fixed_profile(*cfg.phases);
            xi0s = {p.xi0};
            xi1s = {p.xi1};
        } else {
            xi0s = cfg.phases->xi0->grid();
            xi1s = cfg.phases->xi1->grid();
        }
        const auto records = phase_sweep_matrix(A, cfg.gamma->grid(), xi0s, xi1s);
        return emit_csv(cfg, phase_sweep_csv(records), out, err);
    } catch (const std::invalid_argument& e) {
        return config_error(err, e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

namespace {

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual <= tolerance; }
};

// Shared random draws for the verification batteries.
struct VerifyRng {
    std::mt19937_64 gen;
    std::uniform_real_distribution<double> unit{0.0, 1.0};

    explicit VerifyRng(std::uint64_t seed) : gen(seed) {}

    double gamma() { return unit(gen) * kPi / 2; }
    double angle() { return unit(gen) * 2 * kPi; }
    double interior() { return 0.02 + 0.96 * unit(gen); }
    GameMatrix2 matrix() {
        auto e = [this] { return -5.0 + 10.0 * unit(gen); };
        return {e(), e(), e(), e()};
    }
};

} // namespace

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::uint64_t seed = cfg.seed.value_or(20240801u);
        std::vector<VerifyCheck> checks;

        {
            VerifyRng rng(seed);
            VerifyCheck c{"decomposition-equivalence", 0.0, 1e-10};
            for (int i = 0; i < 1000; ++i) {
                const EntanglementParam g{rng.gamma()};
                const PhaseProfile phases{rng.angle(), rng.angle(), rng.angle(), rng.angle()};
                const GameMatrix2 A = rng.matrix();
                const StrategyDensity x = StrategyDensity::from_weight(rng.interior());
                const StrategyDensity y = StrategyDensity::from_weight(rng.interior());
                const QuantumStrategy alpha{x, phases.xi0, phases.xi1};
                const QuantumStrategy beta{y, phases.ups0, phases.ups1};
                auto d = effective_decomposition(g, phases, A);
                if (cfg.inject_sign_flip) d.correlation_coefficient = -d.correlation_coefficient;
                const double lhs = payoff_from_decomposition(d, x, y);
                const double rhs = quantum_payoff(g, alpha, beta, A);
                c.residual = std::max(c.residual, std::abs(lhs - rhs));
            }
            checks.push_back(c);
        }
        {
            VerifyRng rng(seed + 1);
            VerifyCheck c{"classical-limit", 0.0, 1e-12};
            for (int i = 0; i < 1000; ++i) {
                const PhaseProfile phases{rng.angle(), rng.angle(), rng.angle(), rng.angle()};
                const GameMatrix2 A = rng.matrix();
                const StrategyDensity x = StrategyDensity::from_weight(rng.unit(rng.gen));
                const StrategyDensity y = StrategyDensity::from_weight(rng.unit(rng.gen));
                const QuantumStrategy alpha{x, phases.xi0, phases.xi1};
                const QuantumStrategy beta{y, phases.ups0, phases.ups1};
                const double q = quantum_payoff({0.0}, alpha, beta, A);
                c.residual = std::max(c.residual, std::abs(q - classical_payoff(x, y, A)));
            }
            checks.push_back(c);
        }
        {
            VerifyRng rng(seed + 2);
            VerifyCheck mix{"pseudoclassical-mixture", 0.0, 1e-12};
            VerifyCheck diag{"pseudoclassical-diagonal", 0.0, 1e-12};
            const PhaseProfile phases = PhaseProfile::pseudoclassical();
            for (int i = 0; i < 1000; ++i) {
                const EntanglementParam g{rng.gamma()};
                const GameMatrix2 A = rng.matrix();
                const StrategyDensity x = StrategyDensity::from_weight(rng.unit(rng.gen));
                const StrategyDensity y = StrategyDensity::from_weight(rng.unit(rng.gen));
                const QuantumStrategy alpha{x, phases.xi0, phases.xi1};
                const QuantumStrategy beta{y, phases.ups0, phases.ups1};
                const double q = quantum_payoff(g, alpha, beta, A);
                const double cs = std::cos(g.gamma) * std::cos(g.gamma);
                const double mixture = cs * classical_payoff(x, y, A) +
                                       (1.0 - cs) * conjugate_payoff(x, y, A);
                mix.residual = std::max(mix.residual, std::abs(q - mixture));
                const QuantumStrategy ax{x, phases.xi0, phases.xi1};
                const double qd = quantum_payoff(g, ax, ax, A);
                diag.residual = std::max(diag.residual, std::abs(qd - diagonal_payoff(x, A)));
            }
            checks.push_back(mix);
            checks.push_back(diag);
        }
        {
            VerifyRng rng(seed + 3);
            VerifyCheck c{"correlation-vanishing", 0.0, 1e-12};
            const PhaseProfile named[] = {
                PhaseProfile::trivial(), PhaseProfile::symmetric(kPi / 2, kPi / 2),
                PhaseProfile::pseudoclassical(), PhaseProfile::symmetric(kPi / 2, 0.0),
                PhaseProfile::separable_case3(),
                PhaseProfile::symmetric(3 * kPi / 4, 3 * kPi / 4),
                PhaseProfile::separable_case4(),
                PhaseProfile::symmetric(3 * kPi / 4, kPi / 4)};
            for (const auto& phases : named) {
                for (int i = 0; i < 100; ++i) {
                    const EntanglementParam g{rng.gamma()};
                    const auto d = effective_decomposition(g, phases, rng.matrix());
                    c.residual = std::max(c.residual, std::abs(d.correlation_coefficient));
                }
            }
            checks.push_back(c);
        }
        {
            VerifyCheck solver{"pd-closed-form-vs-solver", 0.0, 1e-6};
            VerifyCheck oracle{"pd-closed-form-vs-oracle", 0.0, 2e-3};
            const auto p = PrisonersDilemmaParams::checked(1.0, 2.0, 4.0);
            const PhaseProfile phases = PhaseProfile::pseudoclassical();
            for (int k = 0; k < 21; ++k) {
                const EntanglementParam g{k * (kPi / 2) / 20};
                const auto closed = pd_pseudoclassical_equilibrium(p, g);
                const PayoffFn game = make_quantum_payoff(g, phases, p.matrix());
                const auto numeric = symmetric_nash(game);
                // dominant equilibria must agree
                double tc = 0.0, tn = 0.0;
                for (const auto& e : closed.equilibria)
                    if (e.pareto_dominant) tc = e.t_star;
                for (const auto& e : numeric.equilibria)
                    if (e.pareto_dominant) tn = e.t_star;
                solver.residual = std::max(solver.residual, std::abs(tc - tn));
                const auto flagged = brute_force_nash(game, 1001);
                for (const auto& e : closed.equilibria) {
                    double nearest = 1e9;
                    for (double f : flagged) nearest = std::min(nearest, std::abs(f - e.t_star));
                    oracle.residual = std::max(oracle.residual, nearest);
                }
            }
            checks.push_back(solver);
            checks.push_back(oracle);
        }

        bool all_pass = true;
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass();
            out << (c.pass() ? "[ok]   " : "[FAIL] ") << c.name
                << "  max residual = " << format_double(c.residual)
                << "  (tol " << format_double(c.tolerance) << ")\n";
        }
        out << "verify: " << (all_pass ? "PASS" : "FAIL") << "\n";
        return all_pass ? kExitOk : kExitNumerical;
    } catch (const std::invalid_argument& e) {
        return config_error(err, e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace qgame::cli
