#include "qgame/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace qgame {

namespace {

constexpr double kPi = std::numbers::pi;

struct GamePoint {
    double t = 0.0;
    double payoff_classical = 0.0;
    double payoff_quantum = 0.0;
    SweepBranch branch = SweepBranch::Interior;
    int count = 0;
};

SweepBranch branch_of(double t, double tol) {
    if (t <= tol) return SweepBranch::BoundaryLow;
    if (t >= 1.0 - tol) return SweepBranch::BoundaryHigh;
    return SweepBranch::Interior;
}

// Dominant equilibrium of the correlated game at one sweep point, falling
// back to the least-exploitable weight when no equilibrium exists.
GamePoint solve_point(EntanglementParam gamma, const PhaseProfile& phases,
                      const GameMatrix2& A) {
    const EffectiveMatrixDecomposition d = effective_decomposition(gamma, phases, A);
    const GameMatrix2 B = d.effective();
    const double K = d.correlation_coefficient;
    auto game = [B, K](double t, double s) {
        const double bilinear = (1.0 - t) * (B.a00 * (1.0 - s) + B.a01 * s) +
                                t * (B.a10 * (1.0 - s) + B.a11 * s);
        return bilinear + K * std::sqrt(std::max(t * (1.0 - t) * s * (1.0 - s), 0.0));
    };
    auto classical_diag = [&A](double t) {
        return (1.0 - t) * (A.a00 * (1.0 - t) + A.a01 * t) +
               t * (A.a10 * (1.0 - t) + A.a11 * t);
    };
    const EquilibriumReport report = symmetric_nash(game, classical_diag);

    GamePoint out;
    out.count = static_cast<int>(report.equilibria.size());
    double t = report.least_exploitable_t;
    for (const auto& e : report.equilibria)
        if (e.pareto_dominant) t = e.t_star;
    out.t = t;
    out.payoff_quantum = game(t, t);
    out.payoff_classical = classical_diag(t);
    out.branch = branch_of(t, report.settings.merge_tol);
    return out;
}

} // namespace

const char* to_string(SweepBranch b) {
    switch (b) {
        case SweepBranch::Interior: return "interior";
        case SweepBranch::BoundaryLow: return "boundary-low";
        case SweepBranch::BoundaryHigh: return "boundary-high";
    }
    return "?";
}

PayoffFn make_quantum_payoff(EntanglementParam gamma, const PhaseProfile& phases,
                             const GameMatrix2& A) {
    const EffectiveMatrixDecomposition d = effective_decomposition(gamma, phases, A);
    const GameMatrix2 B = d.effective();
    const double K = d.correlation_coefficient;
    return [B, K](double t, double s) {
        const double bilinear = (1.0 - t) * (B.a00 * (1.0 - s) + B.a01 * s) +
                                t * (B.a10 * (1.0 - s) + B.a11 * s);
        return bilinear + K * std::sqrt(std::max(t * (1.0 - t) * s * (1.0 - s), 0.0));
    };
}

EquilibriumPoint pd_classical_equilibrium(const PrisonersDilemmaParams& p) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    EquilibriumPoint e;
    e.t_star = 1.0;
    e.payoff_classical = p.a;
    e.payoff_quantum = p.a;
    e.kind = EquilibriumKind::PureBoundary;
    // Pareto optimum of the dilemma diagonal never sits at full defection.
    e.pareto_efficient = false;
    e.pareto_dominant = true;
    return e;
}

namespace {

// Diagonal payoff of the dilemma, identical for the classical and the
// pseudoclassical game.
double pd_diag(const PrisonersDilemmaParams& p, double t) {
    return p.b * (1.0 - t) * (1.0 - t) + p.c * t * (1.0 - t) + p.a * t * t;
}

ParetoPoint pd_pareto(const PrisonersDilemmaParams& p) {
    const double curb = p.a + p.b - p.c;
    if (curb < 0.0) {
        const double vertex = (2.0 * p.b - p.c) / (2.0 * curb);
        if (vertex > 0.0 && vertex <= 1.0) return {vertex, pd_diag(p, vertex)};
    }
    return {0.0, p.b};
}

} // namespace

EquilibriumReport pd_pseudoclassical_equilibrium(const PrisonersDilemmaParams& p,
                                                 EntanglementParam gamma) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    EntanglementParam::checked(gamma.gamma);

    const double cos2 = std::cos(gamma.gamma) * std::cos(gamma.gamma);
    const double slope = p.a + p.b - p.c;      // d/ds of the payoff gradient
    const double f0 = p.c * cos2 - p.b;        // payoff gradient at s = 0
    const double f1 = f0 + slope;              // payoff gradient at s = 1

    // gradient-sign tolerance: a marginal boundary equilibrium must not be
    // lost to rounding at transition angles like pi/6 or pi/4
    constexpr double kGradTol = 1e-12;

    EquilibriumReport report;
    report.pareto = pd_pareto(p);

    std::vector<double> ts;
    if (f0 <= kGradTol) ts.push_back(0.0);
    if (slope != 0.0) {
        const double t_int = (p.b - p.c * cos2) / slope;
        if (t_int > 0.0 && t_int < 1.0) ts.push_back(t_int);
    }
    if (f1 >= -kGradTol) ts.push_back(1.0);

    const double merge = report.settings.merge_tol;
    std::sort(ts.begin(), ts.end());
    std::vector<double> merged;
    for (double t : ts)
        if (merged.empty() || t - merged.back() > merge) merged.push_back(t);

    if (slope == 0.0 && std::abs(f0) <= kGradTol) {
        // gradient vanishes identically: every common weight is an equilibrium
        EquilibriumPoint e;
        e.t_star = 0.0;
        e.payoff_classical = e.payoff_quantum = pd_diag(p, 0.0);
        e.kind = EquilibriumKind::IndifferenceContinuum;
        e.pareto_efficient = std::abs(report.pareto.t) <= merge;
        e.pareto_dominant = true;
        report.equilibria.push_back(e);
        return report;
    }

    for (double t : merged) {
        EquilibriumPoint e;
        e.t_star = t;
        e.payoff_classical = e.payoff_quantum = pd_diag(p, t);
        e.kind = (t <= merge || t >= 1.0 - merge) ? EquilibriumKind::PureBoundary
                                                  : EquilibriumKind::MixedInterior;
        e.pareto_efficient = std::abs(t - report.pareto.t) <= merge;
        report.equilibria.push_back(e);
    }
    if (!report.equilibria.empty()) {
        std::size_t dom = 0;
        for (std::size_t i = 1; i < report.equilibria.size(); ++i)
            if (report.equilibria[i].payoff_quantum > report.equilibria[dom].payoff_quantum)
                dom = i;
        report.equilibria[dom].pareto_dominant = true;
        report.least_exploitable_t = report.equilibria[dom].t_star;
    }
    return report;
}

PdPayoffFormula pd_payoff_formula(const PrisonersDilemmaParams& p, EntanglementParam gamma) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    EntanglementParam::checked(gamma.gamma);
    const double slope = p.a + p.b - p.c;
    if (slope == 0.0)
        throw std::domain_error("interior payoff expression undefined for a + b = c");

    const double s2g = std::sin(2.0 * gamma.gamma);
    PdPayoffFormula out;
    out.value = (p.a * p.b - 0.25 * p.c * p.c * s2g * s2g) / slope;

    const double cos2 = std::cos(gamma.gamma) * std::cos(gamma.gamma);
    const double t_int = (p.b - p.c * cos2) / slope;
    out.interior_branch_active = t_int >= 0.0 && t_int <= 1.0;
    return out;
}

namespace {

std::vector<GammaSweepRecord> gamma_sweep_impl(const GameMatrix2& A,
                                               const PhaseProfile& phases,
                                               double gamma_min, double gamma_max,
                                               int n_points, bool parallel) {
    if (n_points < 2) throw std::invalid_argument("gamma sweep needs at least 2 points");
    EntanglementParam::checked(gamma_min);
    EntanglementParam::checked(gamma_max);

    std::vector<GammaSweepRecord> records(n_points);
    const double step = (gamma_max - gamma_min) / (n_points - 1);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int k = 0; k < n_points; ++k) {
        const double g = gamma_min + k * step;
        const GamePoint pt = solve_point({g}, phases, A);
        records[k] = {g, pt.t, pt.payoff_classical, pt.payoff_quantum, pt.branch, pt.count};
    }
    return records;
}

std::vector<PhaseSweepRecord> phase_sweep_impl(const GameMatrix2& A,
                                               const std::vector<double>& gammas,
                                               const std::vector<double>& xi0s,
                                               const std::vector<double>& xi1s,
                                               bool parallel) {
    if (gammas.empty() || xi0s.empty() || xi1s.empty())
        throw std::invalid_argument("phase sweep needs nonempty grids");
    for (double g : gammas) EntanglementParam::checked(g);

    const std::size_t total = xi0s.size() * xi1s.size() * gammas.size();
    std::vector<PhaseSweepRecord> records(total);
    const long long n = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long idx = 0; idx < n; ++idx) {
        const std::size_t gi = idx % gammas.size();
        const std::size_t rest = idx / gammas.size();
        const std::size_t x1i = rest % xi1s.size();
        const std::size_t x0i = rest / xi1s.size();
        const PhaseProfile phases = PhaseProfile::symmetric(xi0s[x0i], xi1s[x1i]);
        const GamePoint pt = solve_point({gammas[gi]}, phases, A);
        records[idx] = {xi0s[x0i], xi1s[x1i], gammas[gi],
                        pt.t,       pt.payoff_classical, pt.payoff_quantum};
    }
    return records;
}

} // namespace

std::vector<GammaSweepRecord> gamma_sweep(const PrisonersDilemmaParams& p,
                                          const PhaseProfile& phases, int n_points) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    return gamma_sweep_impl(p.matrix(), phases, 0.0, kPi / 2, n_points, true);
}

std::vector<GammaSweepRecord> gamma_sweep_serial(const PrisonersDilemmaParams& p,
                                                 const PhaseProfile& phases, int n_points) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    return gamma_sweep_impl(p.matrix(), phases, 0.0, kPi / 2, n_points, false);
}

std::vector<GammaSweepRecord> gamma_sweep_matrix(const GameMatrix2& A,
                                                 const PhaseProfile& phases,
                                                 double gamma_min, double gamma_max,
                                                 int n_points, bool parallel) {
    return gamma_sweep_impl(A, phases, gamma_min, gamma_max, n_points, parallel);
}

std::vector<PhaseSweepRecord> phase_sweep(const PrisonersDilemmaParams& p,
                                          const std::vector<double>& gammas,
                                          const std::vector<double>& xi0s,
                                          const std::vector<double>& xi1s) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    return phase_sweep_impl(p.matrix(), gammas, xi0s, xi1s, true);
}

std::vector<PhaseSweepRecord> phase_sweep_serial(const PrisonersDilemmaParams& p,
                                                 const std::vector<double>& gammas,
                                                 const std::vector<double>& xi0s,
                                                 const std::vector<double>& xi1s) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    return phase_sweep_impl(p.matrix(), gammas, xi0s, xi1s, false);
}

std::vector<PhaseSweepRecord> phase_sweep_matrix(const GameMatrix2& A,
                                                 const std::vector<double>& gammas,
                                                 const std::vector<double>& xi0s,
                                                 const std::vector<double>& xi1s,
                                                 bool parallel) {
    return phase_sweep_impl(A, gammas, xi0s, xi1s, parallel);
}

Case3AverageReport case3_average_check(const PrisonersDilemmaParams& p,
                                       EntanglementParam gamma, double tol) {
    PrisonersDilemmaParams::checked(p.a, p.b, p.c);
    EntanglementParam::checked(gamma.gamma);

    auto dominant_payoff = [](const GameMatrix2& M) {
        auto game = [&M](double t, double s) {
            return (1.0 - t) * (M.a00 * (1.0 - s) + M.a01 * s) +
                   t * (M.a10 * (1.0 - s) + M.a11 * s);
        };
        const EquilibriumReport r = symmetric_nash(game);
        double payoff = game(r.least_exploitable_t, r.least_exploitable_t);
        for (const auto& e : r.equilibria)
            if (e.pareto_dominant) payoff = e.payoff_quantum;
        return payoff;
    };

    const double avg = 0.5 * (p.a + p.b);
    const GameMatrix2 substituted{avg, 0.0, p.c, avg};

    Case3AverageReport out;
    out.payoff_case3 = dominant_payoff(case3_matrix(gamma, p.matrix()));
    out.payoff_substituted = dominant_payoff(pseudoclassical_matrix(gamma, substituted));
    out.difference = out.payoff_case3 - out.payoff_substituted;
    out.within_tol = std::abs(out.difference) <= tol;
    return out;
}

} // namespace qgame
