#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qgame/cli_support.hpp"

using namespace qgame;
using namespace qgame::cli;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_CASE("angle parsing: pi fractions are exact") {
    CHECK(parse_angle("pi/2") == kPi / 2);
    CHECK(parse_angle("pi/4") == kPi / 4);
    CHECK(parse_angle("pi/6") == kPi / 6);
    CHECK(parse_angle("pi/3") == kPi / 3);
    CHECK(parse_angle("pi") == kPi);
    CHECK(parse_angle("3pi/4") == 3 * kPi / 4);
    CHECK(parse_angle("-pi/8") == -kPi / 8);
    CHECK(parse_angle("2pi") == 2 * kPi);
    CHECK(parse_angle("0.25") == 0.25);
    CHECK(parse_angle("-0.4") == -0.4);
    CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1.2.3"), std::invalid_argument);
}

TEST_CASE("axis parsing: single values and sweeps") {
    const AxisSpec v = parse_axis("pi/4");
    CHECK_FALSE(v.is_sweep);
    CHECK(v.value == kPi / 4);
    CHECK(v.grid() == std::vector<double>{kPi / 4});

    const AxisSpec s = parse_axis("0:pi/2:101");
    CHECK(s.is_sweep);
    CHECK(s.min == 0.0);
    CHECK(s.max == kPi / 2);
    CHECK(s.count == 101);
    const auto g = s.grid();
    REQUIRE(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(kPi / 2));

    CHECK_THROWS_AS(parse_axis("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_axis("0:1:1"), std::invalid_argument);
}

TEST_CASE("phases parsing: named classes and axis pairs") {
    CHECK(parse_phases("pseudo").named == PhaseClass::Pseudoclassical);
    CHECK(parse_phases("trivial").named == PhaseClass::Trivial);
    CHECK(parse_phases("case3").named == PhaseClass::SeparableCase3);
    CHECK(parse_phases("case4").named == PhaseClass::SeparableCase4);

    const PhasesOption p = parse_phases("0.3,1.1");
    REQUIRE(p.xi0.has_value());
    CHECK(p.xi0->value == 0.3);
    CHECK(p.xi1->value == 1.1);

    const PhasesOption sweep = parse_phases("-0.4:0.4:21,1.1:2.0:21");
    CHECK(sweep.xi0->is_sweep);
    CHECK(sweep.xi1->count == 21);

    CHECK_THROWS_AS(parse_phases("0.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phases("bogus"), std::invalid_argument);
}

TEST_CASE("double formatting round-trips exactly") {
    std::mt19937_64 gen(5150);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int i = 0; i < 2000; ++i) {
        const double v = dist(gen) * std::pow(10.0, int(gen() % 13) - 6);
        const std::string s = format_double(v);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("config text parses, serializes, and round-trips") {
    const std::string text =
        "# sweep configuration\n"
        "pd=1,2,4\n"
        "gamma=0:pi/2:101\n"
        "phases=pseudo\n"
        "grid=2001\n"
        "tol=1e-9\n"
        "seed=7\n";
    const RunConfig cfg = parse_config_text(text);
    REQUIRE(cfg.pd.has_value());
    CHECK(cfg.pd->a == 1.0);
    CHECK(cfg.pd->c == 4.0);
    REQUIRE(cfg.gamma.has_value());
    CHECK(cfg.gamma->is_sweep);
    CHECK(cfg.gamma->count == 101);
    CHECK(cfg.phases->named == PhaseClass::Pseudoclassical);
    CHECK(cfg.grid == 2001);
    CHECK(cfg.tol == 1e-9);
    CHECK(cfg.seed == 7);

    const RunConfig back = parse_config_text(serialize_config(cfg));
    CHECK(back == cfg);
}

TEST_CASE("config round-trip covers every field kind") {
    RunConfig cfg;
    apply_key_value(cfg, "matrix", "2,0,4,1");
    apply_key_value(cfg, "gamma", "pi/3");
    apply_key_value(cfg, "phases", "0.3,1.1");
    apply_key_value(cfg, "x", "0.25,0.75");
    apply_key_value(cfg, "y", "1,0");
    apply_key_value(cfg, "out", "/tmp/some.csv");
    const RunConfig back = parse_config_text(serialize_config(cfg));
    CHECK(back == cfg);

    RunConfig sweepy;
    apply_key_value(sweepy, "pd", "1,2,5");
    apply_key_value(sweepy, "phases", "-0.4:0.4:21,1.1707963267948966:1.9707963267948966:21");
    apply_key_value(sweepy, "gamma", "0:pi/2:5");
    CHECK(parse_config_text(serialize_config(sweepy)) == sweepy);
}

TEST_CASE("config errors: unknown keys and malformed values") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_key_value(cfg, "bogus", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_key_value(cfg, "pd", "1,2"), std::invalid_argument);
    CHECK_THROWS_AS(apply_key_value(cfg, "pd", "4,2,1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_key_value(cfg, "grid", "2"), std::invalid_argument);
    CHECK_THROWS_AS(apply_key_value(cfg, "tol", "-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("pd 1,2,4\n"), std::invalid_argument);
}

TEST_CASE("payoff command: classical point") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "0");
    apply_key_value(cfg, "phases", "trivial");
    apply_key_value(cfg, "x", "0,1");
    apply_key_value(cfg, "y", "0,1");
    std::ostringstream out, err;
    CHECK(run_payoff(cfg, out, err) == kExitOk);
    CHECK(out.str().find("classical payoff          : 1\n") != std::string::npos);
    CHECK(out.str().find("quantum payoff (player 1) : 1\n") != std::string::npos);
    CHECK(err.str().empty());
}

TEST_CASE("payoff command: maximally entangled altruistic point") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "pi/2");
    apply_key_value(cfg, "phases", "pseudo");
    apply_key_value(cfg, "x", "1,0");
    apply_key_value(cfg, "y", "0,1");
    std::ostringstream out, err;
    CHECK(run_payoff(cfg, out, err) == kExitOk);
    CHECK(out.str().find("quantum payoff (player 1) : 4\n") != std::string::npos);
}

TEST_CASE("payoff command: malformed density fails with a config error") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "0");
    apply_key_value(cfg, "x", "0.5,0.6");
    apply_key_value(cfg, "y", "0,1");
    std::ostringstream out, err;
    CHECK(run_payoff(cfg, out, err) == kExitConfig);
    CHECK(err.str().rfind("error: ", 0) == 0);
    CHECK(err.str().find('\n') == err.str().size() - 1);  // single line
}

TEST_CASE("payoff command: both matrix sources rejected") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "matrix", "2,0,4,1");
    apply_key_value(cfg, "gamma", "0");
    apply_key_value(cfg, "x", "1,0");
    apply_key_value(cfg, "y", "1,0");
    std::ostringstream out, err;
    CHECK(run_payoff(cfg, out, err) == kExitConfig);
}

TEST_CASE("nash command: balanced mixture of the (1,2,5) dilemma") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,5");
    apply_key_value(cfg, "gamma", "pi/4");
    apply_key_value(cfg, "phases", "pseudo");
    std::ostringstream out, err;
    CHECK(run_nash(cfg, out, err) == kExitOk);
    CHECK(out.str().find("equilibria: 1") != std::string::npos);
    CHECK(out.str().find("nash-pareto coincidence: true") != std::string::npos);
    CHECK(out.str().find("0.25") != std::string::npos);
}

TEST_CASE("nash command: classical dilemma misses the Pareto payoff") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "0");
    apply_key_value(cfg, "phases", "trivial");
    std::ostringstream out, err;
    CHECK(run_nash(cfg, out, err) == kExitOk);
    CHECK(out.str().find("nash-pareto coincidence: false") != std::string::npos);
    CHECK(out.str().find("pareto optimum: t = 0 ") != std::string::npos);
}

TEST_CASE("sweep-gamma command writes a deterministic CSV file") {
    TempFile tmp("qgame_test_sweep_gamma.csv");
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "0:pi/2:21");
    apply_key_value(cfg, "phases", "pseudo");
    apply_key_value(cfg, "out", tmp.path.string());

    std::ostringstream out, err;
    REQUIRE(run_sweep_gamma(cfg, out, err) == kExitOk);
    const std::string first = slurp(tmp.path.string());
    REQUIRE(run_sweep_gamma(cfg, out, err) == kExitOk);
    const std::string second = slurp(tmp.path.string());
    CHECK(first == second);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "gamma,t_star,payoff_classical,payoff_quantum,branch,eq_count");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 21);
    CHECK(first.find("\r") == std::string::npos);
}

TEST_CASE("sweep-gamma requires a sweep spec") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "pi/4");
    std::ostringstream out, err;
    CHECK(run_sweep_gamma(cfg, out, err) == kExitConfig);
}

TEST_CASE("sweep-gamma: unwritable path leaves no partial file") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "0:pi/2:5");
    apply_key_value(cfg, "phases", "pseudo");
    apply_key_value(cfg, "out", "/nonexistent_dir_qgame/x.csv");
    std::ostringstream out, err;
    CHECK(run_sweep_gamma(cfg, out, err) == kExitConfig);
    CHECK_FALSE(std::filesystem::exists("/nonexistent_dir_qgame/x.csv"));
    CHECK(err.str().rfind("error: ", 0) == 0);
}

TEST_CASE("sweep-phases: single-point grids emit one row") {
    RunConfig cfg;
    apply_key_value(cfg, "pd", "1,2,4");
    apply_key_value(cfg, "gamma", "pi/4");
    apply_key_value(cfg, "phases", "0,pi/2");
    std::ostringstream out, err;
    REQUIRE(run_sweep_phases(cfg, out, err) == kExitOk);
    std::istringstream lines(out.str());
    std::string header, row, extra;
    REQUIRE(std::getline(lines, header));
    CHECK(header == "xi0,xi1,gamma,t_star,payoff_classical,payoff_quantum");
    REQUIRE(std::getline(lines, row));
    CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("verify command passes with the default seed and is seed-robust") {
    for (std::uint64_t seed : {1u, 2u, 3u, 42u, 99u}) {
        RunConfig cfg;
        cfg.seed = seed;
        std::ostringstream out, err;
        CHECK(run_verify(cfg, out, err) == kExitOk);
        CHECK(out.str().find("verify: PASS") != std::string::npos);
    }
}

TEST_CASE("verify command fails under an injected correlation sign flip") {
    RunConfig cfg;
    cfg.inject_sign_flip = true;
    std::ostringstream out, err;
    CHECK(run_verify(cfg, out, err) == kExitNumerical);
    CHECK(out.str().find("[FAIL] decomposition-equivalence") != std::string::npos);
    CHECK(out.str().find("verify: FAIL") != std::string::npos);
}
