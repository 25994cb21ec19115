#pragma once

#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/game_core.hpp"
#include "qgame/quantum_engine.hpp"

namespace qgame {

enum class SweepBranch { Interior, BoundaryLow, BoundaryHigh };

const char* to_string(SweepBranch b);

/// One point of an entanglement sweep. t_star is the payoff-dominant
/// equilibrium of that point's game; when no exact symmetric equilibrium
/// exists (equilibrium_count = 0) it falls back to the least-exploitable
/// weight.
struct GammaSweepRecord {
    double gamma = 0.0;
    double t_star = 0.0;
    double payoff_classical_at_eq = 0.0;
    double payoff_quantum_at_eq = 0.0;
    SweepBranch branch = SweepBranch::Interior;
    int equilibrium_count = 0;
};

/// One point of a phase-angle sweep; same t_star convention as above.
struct PhaseSweepRecord {
    double xi0 = 0.0;
    double xi1 = 0.0;
    double gamma = 0.0;
    double t_star = 0.0;
    double payoff_classical = 0.0;
    double payoff_quantum = 0.0;
};

/// Payoff function of the correlated game at fixed gamma and phases, in the
/// weight coordinates used by the equilibrium solvers. The returned callable
/// is cheap and safe for concurrent evaluation.
PayoffFn make_quantum_payoff(EntanglementParam gamma, const PhaseProfile& phases,
                             const GameMatrix2& A);

/// The dominant defect-weight equilibrium of the classical dilemma: always
/// t = 1 with payoff a.
EquilibriumPoint pd_classical_equilibrium(const PrisonersDilemmaParams& p);

/// Closed-form symmetric equilibria of the dilemma under the pseudoclassical
/// family at entanglement gamma. The interior candidate is
///   t = (b - c cos^2(gamma)) / (a + b - c),
/// reported when it lies in [0, 1]; boundary equilibria are determined by the
/// sign of the payoff slope at t = 0 and t = 1. All equilibria are listed;
/// the highest-payoff one carries the dominant flag.
EquilibriumReport pd_pseudoclassical_equilibrium(const PrisonersDilemmaParams& p,
                                                 EntanglementParam gamma);

struct PdPayoffFormula {
    double value = 0.0;
    /// False when the interior equilibrium lies outside [0, 1], in which case
    /// the value is the analytic continuation of the interior expression, not
    /// an equilibrium payoff.
    bool interior_branch_active = false;
};

/// Interior-equilibrium payoff expression
///   (a b - (c^2/4) sin^2(2 gamma)) / (a + b - c),
/// together with the flag telling whether the interior branch is active.
PdPayoffFormula pd_payoff_formula(const PrisonersDilemmaParams& p, EntanglementParam gamma);

/// Equilibrium sweep of the dilemma over a uniform gamma grid on [0, pi/2].
/// Records are emitted in grid order. OpenMP-parallel over grid points.
std::vector<GammaSweepRecord> gamma_sweep(const PrisonersDilemmaParams& p,
                                          const PhaseProfile& phases, int n_points);

/// Serial reference of gamma_sweep; returns identical records.
std::vector<GammaSweepRecord> gamma_sweep_serial(const PrisonersDilemmaParams& p,
                                                 const PhaseProfile& phases, int n_points);

/// gamma_sweep over an arbitrary matrix and gamma range (used by the CLI).
std::vector<GammaSweepRecord> gamma_sweep_matrix(const GameMatrix2& A,
                                                 const PhaseProfile& phases,
                                                 double gamma_min, double gamma_max,
                                                 int n_points, bool parallel = true);

/// Equilibrium sweep over symmetric phase profiles (xi0, xi1) and gamma.
/// Row order is lexicographic in (xi0 index, xi1 index, gamma index).
/// OpenMP-parallel over sweep points.
std::vector<PhaseSweepRecord> phase_sweep(const PrisonersDilemmaParams& p,
                                          const std::vector<double>& gammas,
                                          const std::vector<double>& xi0s,
                                          const std::vector<double>& xi1s);

/// Serial reference of phase_sweep; returns identical records.
std::vector<PhaseSweepRecord> phase_sweep_serial(const PrisonersDilemmaParams& p,
                                                 const std::vector<double>& gammas,
                                                 const std::vector<double>& xi0s,
                                                 const std::vector<double>& xi1s);

std::vector<PhaseSweepRecord> phase_sweep_matrix(const GameMatrix2& A,
                                                 const std::vector<double>& gammas,
                                                 const std::vector<double>& xi0s,
                                                 const std::vector<double>& xi1s,
                                                 bool parallel = true);

/// Compares the equilibrium payoff of the case-3 matrix game against the
/// pseudoclassical game of the dilemma with a and b both replaced by their
/// average. The difference is reported as observed, not assumed to vanish.
struct Case3AverageReport {
    double payoff_case3 = 0.0;
    double payoff_substituted = 0.0;
    double difference = 0.0;
    bool within_tol = false;
};

Case3AverageReport case3_average_check(const PrisonersDilemmaParams& p,
                                       EntanglementParam gamma, double tol);

} // namespace qgame
