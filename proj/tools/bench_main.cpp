// Benchmark comparing the OpenMP kernels against their serial references.
// Both paths must produce identical results; the table reports wall times,
// speedup, and an equality check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qgame/cli_support.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/scenarios.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "identical" : "MISMATCH");
}

} // namespace

int main() {
    using namespace qgame;
    constexpr double pi = std::numbers::pi;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "");

    const auto p = PrisonersDilemmaParams::checked(1.0, 2.0, 4.0);
    const PhaseProfile pseudo = PhaseProfile::pseudoclassical();

    {
        const PayoffFn game = make_quantum_payoff({pi / 3}, pseudo, p.matrix());
        std::vector<double> serial, parallel;
        const double ts = time_ms([&] { serial = brute_force_nash_serial(game, 2001); });
        const double tp = time_ms([&] { parallel = brute_force_nash(game, 2001); });
        report("brute-force lattice (2001)", ts, tp, serial == parallel);
    }
    {
        std::vector<GammaSweepRecord> serial, parallel;
        const double ts = time_ms([&] { serial = gamma_sweep_serial(p, pseudo, 101); });
        const double tp = time_ms([&] { parallel = gamma_sweep(p, pseudo, 101); });
        bool equal = serial.size() == parallel.size();
        for (std::size_t i = 0; equal && i < serial.size(); ++i)
            equal = serial[i].gamma == parallel[i].gamma &&
                    serial[i].t_star == parallel[i].t_star &&
                    serial[i].payoff_classical_at_eq == parallel[i].payoff_classical_at_eq &&
                    serial[i].payoff_quantum_at_eq == parallel[i].payoff_quantum_at_eq;
        report("gamma sweep (101 points)", ts, tp, equal);
    }
    {
        std::vector<double> gammas{0.0, pi / 4, pi / 2};
        std::vector<double> xi0s, xi1s;
        for (int i = 0; i < 11; ++i) xi0s.push_back(-0.4 + 0.08 * i);
        for (int i = 0; i < 11; ++i) xi1s.push_back(pi / 2 - 0.4 + 0.08 * i);
        std::vector<PhaseSweepRecord> serial, parallel;
        const double ts = time_ms([&] { serial = phase_sweep_serial(p, gammas, xi0s, xi1s); });
        const double tp = time_ms([&] { parallel = phase_sweep(p, gammas, xi0s, xi1s); });
        bool equal = serial.size() == parallel.size();
        for (std::size_t i = 0; equal && i < serial.size(); ++i)
            equal = serial[i].t_star == parallel[i].t_star &&
                    serial[i].payoff_quantum == parallel[i].payoff_quantum;
        report("phase sweep (11x11x3)", ts, tp, equal);
    }
    return 0;
}
