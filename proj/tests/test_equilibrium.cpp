#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_utils.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/scenarios.hpp"

using namespace qgame;
using qgame_test::TestRng;

namespace {

constexpr double kPi = std::numbers::pi;

PayoffFn bilinear_game(const GameMatrix2& M) {
    return [M](double t, double s) {
        return (1.0 - t) * (M.a00 * (1.0 - s) + M.a01 * s) +
               t * (M.a10 * (1.0 - s) + M.a11 * s);
    };
}

const PrisonersDilemmaParams kPd124{1.0, 2.0, 4.0};
const PrisonersDilemmaParams kPd125{1.0, 2.0, 5.0};
const PrisonersDilemmaParams kPd234{2.0, 3.0, 4.0};

} // namespace

TEST_CASE("best response: defection dominates the classical dilemma") {
    const PayoffFn game = bilinear_game(kPd124.matrix());
    for (double s : {0.0, 0.3, 0.5, 1.0}) {
        const auto br = best_response(s, game, 1e-9);
        REQUIRE(br.points.size() == 1);
        CHECK(br.points[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(br.whole_interval);
    }
}

TEST_CASE("best response: the fully altruistic game cooperates") {
    const PayoffFn game = bilinear_game(pseudoclassical_matrix({kPi / 2}, kPd124.matrix()));
    for (double s : {0.0, 0.4, 1.0}) {
        const auto br = best_response(s, game, 1e-9);
        REQUIRE(br.points.size() == 1);
        CHECK(br.points[0] == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("best response: constant payoff reports the whole interval") {
    const PayoffFn game = bilinear_game({3.0, 3.0, 3.0, 3.0});
    const auto br = best_response(0.5, game, 1e-9);
    CHECK(br.whole_interval);
    CHECK(br.points.empty());
}

TEST_CASE("best response rejects invalid input") {
    const PayoffFn game = bilinear_game(kPd124.matrix());
    CHECK_THROWS_AS(best_response(1.5, game, 1e-9), std::invalid_argument);
    const PayoffFn bad = [](double, double) { return std::nan(""); };
    CHECK_THROWS_AS(best_response(0.5, bad, 1e-9), std::domain_error);
}

TEST_CASE("symmetric nash: classical dilemma has the single defect equilibrium") {
    const auto r = symmetric_nash(bilinear_game(kPd124.matrix()));
    REQUIRE(r.equilibria.size() == 1);
    CHECK(r.equilibria[0].t_star == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.equilibria[0].payoff_quantum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.equilibria[0].kind == EquilibriumKind::PureBoundary);
    CHECK(r.equilibria[0].pareto_dominant);
    CHECK_FALSE(r.equilibria[0].pareto_efficient);
    CHECK(r.pareto.t == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.pareto.payoff == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(check_pareto_nash_coincidence(r, 1e-6));
}

TEST_CASE("symmetric nash: interior equilibrium of the balanced mixture") {
    const auto r =
        symmetric_nash(bilinear_game(pseudoclassical_matrix({kPi / 4}, kPd125.matrix())));
    REQUIRE(r.equilibria.size() == 1);
    CHECK(std::abs(r.equilibria[0].t_star - 0.25) <= 1e-6);
    CHECK(std::abs(r.equilibria[0].payoff_quantum - 2.125) <= 1e-6);
    CHECK(r.equilibria[0].kind == EquilibriumKind::MixedInterior);
    CHECK(std::abs(r.pareto.t - 0.25) <= 1e-6);
    CHECK(check_pareto_nash_coincidence(r, 1e-6));
}

TEST_CASE("symmetric nash: coexisting boundary equilibria are both reported") {
    const auto r =
        symmetric_nash(bilinear_game(pseudoclassical_matrix({kPi / 4}, kPd234.matrix())));
    REQUIRE(r.equilibria.size() == 2);
    CHECK(r.equilibria[0].t_star == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.equilibria[0].payoff_quantum == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.equilibria[0].pareto_dominant);
    CHECK(r.equilibria[0].pareto_efficient);
    CHECK(r.equilibria[1].t_star == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.equilibria[1].payoff_quantum == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(r.equilibria[1].pareto_dominant);
}

TEST_CASE("symmetric nash: three equilibria inside the coexistence window") {
    // between the two transition angles of the a+b>c dilemma, both boundaries
    // and the unstable interior indifference point are equilibria
    const double g = 0.589;  // between pi/6 and pi/4 for (2,3,4)
    const GameMatrix2 M = pseudoclassical_matrix({g}, kPd234.matrix());
    const double t_int = (3.0 - 4.0 * std::cos(g) * std::cos(g)) / 1.0;
    const auto r = symmetric_nash(bilinear_game(M));
    REQUIRE(r.equilibria.size() == 3);
    CHECK(r.equilibria[0].t_star == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(r.equilibria[1].t_star - t_int) <= 1e-6);
    CHECK(r.equilibria[1].kind == EquilibriumKind::MixedInterior);
    CHECK(r.equilibria[2].t_star == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.equilibria[0].pareto_dominant);  // payoff b beats a and the mix
}

TEST_CASE("symmetric nash: full indifference reports a continuum") {
    const auto r = symmetric_nash(bilinear_game({2.0, 2.0, 2.0, 2.0}));
    REQUIRE(r.equilibria.size() == 1);
    CHECK(r.equilibria[0].kind == EquilibriumKind::IndifferenceContinuum);
    CHECK(r.equilibria[0].payoff_quantum == doctest::Approx(2.0));
}

TEST_CASE("symmetric nash: no symmetric equilibrium under strong negative correlation") {
    // convex-in-own-weight quantum payoff with tempting boundary deviations
    const PayoffFn game = make_quantum_payoff(
        {kPi / 4}, PhaseProfile::symmetric(-0.4, kPi / 2 - 0.4), kPd124.matrix());
    const auto r = symmetric_nash(game);
    CHECK(r.equilibria.empty());
    CHECK(r.least_exploitable_t >= 0.0);
    CHECK(r.least_exploitable_t <= 1.0);
    CHECK(r.least_exploitable_gain > 0.0);
    CHECK(std::isfinite(r.least_exploitable_gain));
}

TEST_CASE("pure-boundary fallback follows the gradient sign") {
    // payoffs strictly increasing in t: equilibrium at t=1
    const auto up = symmetric_nash(bilinear_game({0.0, 0.0, 1.0, 1.0}));
    REQUIRE(up.equilibria.size() == 1);
    CHECK(up.equilibria[0].t_star == doctest::Approx(1.0));
    // strictly decreasing: equilibrium at t=0
    const auto down = symmetric_nash(bilinear_game({1.0, 1.0, 0.0, 0.0}));
    REQUIRE(down.equilibria.size() == 1);
    CHECK(down.equilibria[0].t_star == doctest::Approx(0.0));
}

TEST_CASE("reported equilibria survive a dense random deviation test") {
    TestRng rng(4242);
    const GameMatrix2 games[] = {kPd124.matrix(),
                                 pseudoclassical_matrix({kPi / 4}, kPd125.matrix()),
                                 pseudoclassical_matrix({kPi / 4}, kPd234.matrix()),
                                 pseudoclassical_matrix({kPi / 3}, kPd124.matrix())};
    for (const auto& M : games) {
        const PayoffFn game = bilinear_game(M);
        const auto r = symmetric_nash(game);
        for (const auto& e : r.equilibria) {
            const double base = game(e.t_star, e.t_star);
            for (int i = 0; i < 10000; ++i) {
                const double tp = rng.weight();
                CHECK(game(tp, e.t_star) <= base + 1e-6);
            }
        }
    }
}

TEST_CASE("pareto optimum: closed-form dilemma values") {
    auto diag124 = [](double t) {
        return 2.0 * (1 - t) * (1 - t) + 4.0 * t * (1 - t) + 1.0 * t * t;
    };
    const auto p124 = pareto_optimum(diag124);
    CHECK(std::abs(p124.t - 0.0) <= 1e-9);
    CHECK(std::abs(p124.payoff - 2.0) <= 1e-9);

    auto diag125 = [](double t) {
        return 2.0 * (1 - t) * (1 - t) + 5.0 * t * (1 - t) + 1.0 * t * t;
    };
    const auto p125 = pareto_optimum(diag125);
    CHECK(std::abs(p125.t - 0.25) <= 1e-7);
    CHECK(std::abs(p125.payoff - 2.125) <= 1e-9);

    const auto flat = pareto_optimum([](double) { return 7.0; });
    CHECK(flat.t == 0.0);
    CHECK(flat.payoff == doctest::Approx(7.0));
}

TEST_CASE("brute-force oracle: classical dilemma flags only near-full defection") {
    const auto flagged = brute_force_nash(bilinear_game(kPd124.matrix()), 1001);
    REQUIRE_FALSE(flagged.empty());
    CHECK(flagged.back() == doctest::Approx(1.0));
    for (double t : flagged) CHECK(t >= 0.99);
}

TEST_CASE("brute-force oracle: interior equilibrium is bracketed within one cell") {
    const auto flagged = brute_force_nash(
        bilinear_game(pseudoclassical_matrix({kPi / 4}, kPd125.matrix())), 1001);
    REQUIRE_FALSE(flagged.empty());
    for (double t : flagged) CHECK(std::abs(t - 0.25) <= 1.1e-3);
    bool has_exact = false;
    for (double t : flagged) has_exact = has_exact || std::abs(t - 0.25) <= 1e-12;
    CHECK(has_exact);
}

TEST_CASE("brute-force oracle: zero matrix flags every grid point") {
    const auto flagged = brute_force_nash(bilinear_game({0, 0, 0, 0}), 101);
    CHECK(flagged.size() == 101);
}

TEST_CASE("brute-force oracle rejects tiny grids") {
    CHECK_THROWS_AS(brute_force_nash(bilinear_game(kPd124.matrix()), 51),
                    std::invalid_argument);
}

TEST_CASE("parallel and serial brute force agree bit for bit") {
    const PayoffFn game = make_quantum_payoff({kPi / 3}, PhaseProfile::pseudoclassical(),
                                              kPd124.matrix());
    CHECK(brute_force_nash(game, 1001) == brute_force_nash_serial(game, 1001));
}

TEST_CASE("solver and oracle agree on the dilemma instances") {
    const double agreement = 2.0 / 1001;
    for (const auto& p : {kPd124, kPd125, kPd234}) {
        for (double g : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
            const PayoffFn game = bilinear_game(pseudoclassical_matrix({g}, p.matrix()));
            const auto report = symmetric_nash(game);
            const auto flagged = brute_force_nash(game, 1001);
            REQUIRE_FALSE(flagged.empty());
            // every solver equilibrium is near a flagged point
            for (const auto& e : report.equilibria) {
                double nearest = 1e9;
                for (double f : flagged) nearest = std::min(nearest, std::abs(f - e.t_star));
                CHECK(nearest <= agreement);
            }
            // every flagged cluster hosts a solver equilibrium
            REQUIRE_FALSE(report.equilibria.empty());
            std::vector<std::pair<double, double>> clusters;
            for (double f : flagged) {
                if (clusters.empty() || f - clusters.back().second > 3.0 / 1001)
                    clusters.emplace_back(f, f);
                else
                    clusters.back().second = f;
            }
            for (const auto& [lo, hi] : clusters) {
                bool hosted = false;
                for (const auto& e : report.equilibria)
                    hosted = hosted ||
                             (e.t_star >= lo - agreement && e.t_star <= hi + agreement);
                CHECK(hosted);
            }
        }
    }
}

TEST_CASE("balanced mixture yields a Pareto-efficient equilibrium for random dilemmas") {
    TestRng rng(777);
    int done = 0;
    while (done < 20) {
        const double a = rng.uniform(0.5, 3.0);
        const double b = a + rng.uniform(0.1, 2.0);
        const double c = a + b + rng.uniform(0.05, 3.0);  // a + b < c
        const auto p = PrisonersDilemmaParams::checked(a, b, c);
        const auto r = symmetric_nash(bilinear_game(pseudoclassical_matrix({kPi / 4}, p.matrix())));
        CHECK(check_pareto_nash_coincidence(r, 1e-6));
        ++done;
    }
}

TEST_CASE("self-adjoint classical games have Pareto-efficient equilibria") {
    TestRng rng(888);
    for (int k = 0; k < 20; ++k) {
        GameMatrix2 A = rng.matrix(0.0, 4.0);
        A.a10 = A.a01;  // symmetric payoff operator
        const auto r = symmetric_nash(bilinear_game(A));
        REQUIRE_FALSE(r.equilibria.empty());
        CHECK(check_pareto_nash_coincidence(r, 1e-6));
    }
}
