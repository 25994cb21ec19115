#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qgame {

/// Payoff of the row player when she weights strategy 1 with t and the
/// opponent weights it with s. All solvers in this header work on such
/// functions restricted to [0,1]^2.
using PayoffFn = std::function<double(double t, double s)>;

/// Common payoff along the diagonal t -> payoff(t, t).
using DiagFn = std::function<double(double t)>;

struct SolverSettings {
    int scan_points = 2001;      // dense grid for scans and best responses
    double refine_tol = 1e-9;    // golden-section / bisection target width
    double merge_tol = 1e-6;     // coalescing tolerance for equilibria
    double accept_scale = 1e-7;  // deviation-gain acceptance, x max(1, payoff range)
};

enum class EquilibriumKind { PureBoundary, MixedInterior, IndifferenceContinuum };

inline const char* to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::PureBoundary: return "pure-boundary";
        case EquilibriumKind::MixedInterior: return "mixed-interior";
        case EquilibriumKind::IndifferenceContinuum: return "indifference-continuum";
    }
    return "?";
}

/// A symmetric equilibrium: no unilateral change of the own weight t improves
/// the payoff beyond the solver tolerance.
struct EquilibriumPoint {
    double t_star = 0.0;
    double payoff_classical = 0.0;       // diagonal payoff of the base game
    double payoff_quantum = 0.0;         // diagonal payoff of the solved game
    EquilibriumKind kind = EquilibriumKind::PureBoundary;
    bool pareto_efficient = false;       // coincides with the diagonal maximizer
    bool pareto_dominant = false;        // best payoff among the found equilibria
};

struct ParetoPoint {
    double t = 0.0;
    double payoff = 0.0;
};

struct EquilibriumReport {
    std::vector<EquilibriumPoint> equilibria;  // ascending in t_star
    ParetoPoint pareto;
    /// Weight minimizing the best-reply gain; coincides with an equilibrium
    /// when one exists, and is the natural fallback when none does (possible
    /// for payoffs convex in the own weight).
    double least_exploitable_t = 0.0;
    double least_exploitable_gain = 0.0;
    SolverSettings settings;
};

struct BestResponseResult {
    std::vector<double> points;   // maximizers, ascending
    bool whole_interval = false;  // payoff flat in t within tolerance
};

namespace detail {

/// Golden-section maximization of f on [lo, hi] down to width tol.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

inline void check_finite(double v) {
    if (!std::isfinite(v)) throw std::domain_error("payoff evaluation is not finite");
}

/// Grid argmax of t -> payoff(t, s), refined by a golden-section pass around
/// the best cell. Returns the refined maximizer and its value.
template <class Payoff>
std::pair<double, double> refined_best_reply(Payoff&& payoff, double s, int n,
                                             double refine_tol) {
    const double step = 1.0 / (n - 1);
    int best = 0;
    double best_v = payoff(0.0, s);
    check_finite(best_v);
    for (int i = 1; i < n; ++i) {
        const double v = payoff(i * step, s);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    check_finite(best_v);
    const double lo = std::max(0.0, (best - 1) * step);
    const double hi = std::min(1.0, (best + 1) * step);
    const double t = golden_max([&](double u) { return payoff(u, s); }, lo, hi, refine_tol);
    const double v = payoff(t, s);
    if (v > best_v) return {t, v};
    return {best * step, best_v};
}

/// Spread of the payoff over a coarse sample of [0,1]^2, used to scale
/// acceptance tolerances.
template <class Payoff>
double payoff_range(Payoff&& payoff) {
    constexpr int kSample = 33;
    double lo = payoff(0.0, 0.0), hi = lo;
    for (int i = 0; i < kSample; ++i) {
        for (int j = 0; j < kSample; ++j) {
            const double v = payoff(i / double(kSample - 1), j / double(kSample - 1));
            check_finite(v);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

} // namespace detail

/// Global maximizer of the common diagonal payoff over [0, 1]: grid scan plus
/// golden-section refinement, ties resolved toward smaller t.
template <class Diag>
    requires std::invocable<Diag&, double>
ParetoPoint pareto_optimum(Diag&& diag_payoff, SolverSettings settings = {}) {
    const int n = std::max(settings.scan_points, 3);
    const double step = 1.0 / (n - 1);
    int best = 0;
    double best_v = diag_payoff(0.0);
    detail::check_finite(best_v);
    double lo_v = best_v;
    for (int i = 1; i < n; ++i) {
        const double v = diag_payoff(i * step);
        detail::check_finite(v);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
        lo_v = std::min(lo_v, v);
    }
    if (best_v - lo_v <= settings.accept_scale) return {0.0, diag_payoff(0.0)};

    const double lo = std::max(0.0, (best - 1) * step);
    const double hi = std::min(1.0, (best + 1) * step);
    const double t = detail::golden_max(diag_payoff, lo, hi, settings.refine_tol);
    const double v = diag_payoff(t);
    if (v > best_v) return {t, v};
    return {best * step, best_v};
}

/// All t maximizing payoff(t, s) to within tol: dense grid scan (scan_points)
/// with golden-section refinement of each near-optimal local maximum. A
/// payoff flat in t within tol reports the whole-interval marker instead.
template <class Payoff>
BestResponseResult best_response(double s, Payoff&& payoff, double tol,
                                 int scan_points = SolverSettings{}.scan_points) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("opponent weight must lie in [0, 1]");
    const int n = std::max(scan_points, 3);
    const double step = 1.0 / (n - 1);

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = payoff(i * step, s);
        detail::check_finite(v[i]);
    }
    const double vmax = *std::max_element(v.begin(), v.end());
    const double vmin = *std::min_element(v.begin(), v.end());

    BestResponseResult out;
    if (vmax - vmin <= tol) {
        out.whole_interval = true;
        return out;
    }

    const double refine_tol = SolverSettings{}.refine_tol;
    std::vector<std::pair<double, double>> refined;  // (t, value)
    for (int i = 0; i < n; ++i) {
        const bool local_max =
            (i == 0 || v[i] >= v[i - 1]) && (i == n - 1 || v[i] >= v[i + 1]);
        if (!local_max || v[i] < vmax - tol) continue;
        const double lo = std::max(0.0, (i - 1) * step);
        const double hi = std::min(1.0, (i + 1) * step);
        const double t =
            detail::golden_max([&](double u) { return payoff(u, s); }, lo, hi, refine_tol);
        const double val = payoff(t, s);
        if (val >= v[i])
            refined.emplace_back(t, val);
        else
            refined.emplace_back(i * step, v[i]);
    }
    double best = refined.front().second;
    for (const auto& r : refined) best = std::max(best, r.second);
    for (const auto& r : refined)
        if (r.second >= best - tol) out.points.push_back(r.first);
    std::sort(out.points.begin(), out.points.end());
    // collapse refinement duplicates from adjacent grid cells
    std::vector<double> unique;
    for (double t : out.points)
        if (unique.empty() || t - unique.back() > 2.0 * step) unique.push_back(t);
    out.points = std::move(unique);
    return out;
}

/// Symmetric-equilibrium search for a payoff on [0,1]^2.
///
/// Scans the opponent weight s on a dense grid, locating fixed points of the
/// best-response map by bisection on the response-minus-weight indicator;
/// boundary candidates t = 0, 1 are checked explicitly. A candidate is kept
/// only if no deviation improves the payoff by more than the acceptance
/// tolerance, so spurious crossings are rejected. The classical_diag function
/// supplies the base-game diagonal payoff recorded alongside the solved
/// game's payoff.
template <class Payoff, class ClassicalDiag>
    requires std::invocable<ClassicalDiag&, double>
EquilibriumReport symmetric_nash(Payoff&& game, ClassicalDiag&& classical_diag,
                                 SolverSettings settings = {}) {
    const int n = std::max(settings.scan_points, 5);
    const double step = 1.0 / (n - 1);
    const double range = detail::payoff_range(game);
    const double acc = settings.accept_scale * std::max(1.0, range);

    std::vector<double> reply_t(n), gain(n);
    std::vector<char> flat(n);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        const double s = j * step;
        double best_v = game(0.0, s);
        int best = 0;
        double lo = best_v;
        for (int i = 1; i < n; ++i) {
            const double v = game(i * step, s);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
            if (v < lo) lo = v;
        }
        reply_t[j] = best * step;
        gain[j] = best_v - game(s, s);
        flat[j] = (best_v - lo) <= acc ? 1 : 0;
    }
    for (int j = 0; j < n; ++j) detail::check_finite(gain[j]);

    EquilibriumReport report;
    report.settings = settings;
    report.pareto = pareto_optimum([&](double t) { return game(t, t); }, settings);

    int min_j = 0;
    for (int j = 1; j < n; ++j)
        if (gain[j] < gain[min_j]) min_j = j;
    report.least_exploitable_t = min_j * step;
    report.least_exploitable_gain = std::max(gain[min_j], 0.0);

    // full indifference: every weight is its own best response
    const bool continuum =
        std::all_of(gain.begin(), gain.end(), [&](double g) { return g <= acc; }) &&
        std::all_of(flat.begin(), flat.end(), [](char f) { return f != 0; });

    std::vector<double> candidates;
    if (continuum) {
        candidates.push_back(0.0);
    } else {
        if (gain[0] <= acc) candidates.push_back(0.0);
        if (gain[n - 1] <= acc) candidates.push_back(1.0);
        for (int j = 1; j + 1 < n; ++j)
            if (gain[j] <= acc) candidates.push_back(j * step);
        // sign changes of the response indicator delta(s) = reply(s) - s
        auto delta_refined = [&](double s) {
            return detail::refined_best_reply(game, s, n, settings.refine_tol).first - s;
        };
        for (int j = 0; j + 1 < n; ++j) {
            if (flat[j] || flat[j + 1]) continue;
            const double d0 = reply_t[j] - j * step;
            const double d1 = reply_t[j + 1] - (j + 1) * step;
            // either crossing direction: indifference points are equilibria
            // whether the response map crosses downward or jumps upward
            if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
                double lo = j * step, hi = (j + 1) * step;
                double dlo = d0;
                while (hi - lo > settings.refine_tol) {
                    const double mid = 0.5 * (lo + hi);
                    const double dm = delta_refined(mid);
                    if ((dm > 0.0) == (dlo > 0.0)) {
                        lo = mid;
                        dlo = dm;
                    } else {
                        hi = mid;
                    }
                }
                candidates.push_back(0.5 * (lo + hi));
            }
        }
    }

    // acceptance: no deviation may gain more than acc
    std::vector<double> accepted;
    for (double s : candidates) {
        const double best_v = detail::refined_best_reply(game, s, n, settings.refine_tol).second;
        if (best_v - game(s, s) <= acc) accepted.push_back(s);
    }
    std::sort(accepted.begin(), accepted.end());

    std::vector<double> merged;
    for (double s : accepted) {
        if (!merged.empty() && s - merged.back() <= settings.merge_tol) {
            if (s == 1.0) merged.back() = 1.0;  // keep exact boundary representatives
            continue;
        }
        merged.push_back(s);
    }

    for (double t : merged) {
        EquilibriumPoint p;
        p.t_star = t;
        p.payoff_quantum = game(t, t);
        p.payoff_classical = classical_diag(t);
        if (continuum)
            p.kind = EquilibriumKind::IndifferenceContinuum;
        else if (t <= settings.merge_tol || t >= 1.0 - settings.merge_tol)
            p.kind = EquilibriumKind::PureBoundary;
        else
            p.kind = EquilibriumKind::MixedInterior;
        p.pareto_efficient = std::abs(t - report.pareto.t) <= settings.merge_tol;
        report.equilibria.push_back(p);
    }
    if (!report.equilibria.empty()) {
        std::size_t dom = 0;
        for (std::size_t i = 1; i < report.equilibria.size(); ++i)
            if (report.equilibria[i].payoff_quantum > report.equilibria[dom].payoff_quantum)
                dom = i;
        report.equilibria[dom].pareto_dominant = true;
        report.least_exploitable_t = report.equilibria[dom].t_star;
        report.least_exploitable_gain = 0.0;
    }
    return report;
}

template <class Payoff>
EquilibriumReport symmetric_nash(Payoff&& game, SolverSettings settings = {}) {
    auto diag = [&game](double t) { return game(t, t); };
    return symmetric_nash(game, diag, settings);
}

namespace detail {

template <class Payoff>
std::vector<double> brute_force_nash_impl(Payoff&& payoff, int grid_n, bool parallel) {
    if (grid_n < 101) throw std::invalid_argument("oracle grid must have at least 101 points");
    const int n = grid_n;
    const double step = 1.0 / (n - 1);

    std::vector<double> col_max(n), col_min(n), diag(n);
    // Each column is scanned by one thread in index order, so results are
    // identical to the serial pass.
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < n; ++j) {
        const double s = j * step;
        double mx = payoff(0.0, s), mn = mx;
        for (int i = 1; i < n; ++i) {
            const double v = payoff(i * step, s);
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        col_max[j] = mx;
        col_min[j] = mn;
        diag[j] = payoff(s, s);
    }
    double hi = col_max[0], lo = col_min[0];
    for (int j = 0; j < n; ++j) {
        check_finite(col_max[j]);
        check_finite(col_min[j]);
        hi = std::max(hi, col_max[j]);
        lo = std::min(lo, col_min[j]);
    }
    const double eps = (hi - lo) / n;

    std::vector<double> flagged;
    for (int j = 0; j < n; ++j)
        if (diag[j] >= col_max[j] - eps) flagged.push_back(j * step);
    return flagged;
}

} // namespace detail

/// Exhaustive lattice oracle: evaluates the payoff on a grid_n x grid_n
/// lattice and returns every own-weight grid point whose diagonal payoff is
/// within eps of the best deviation against it, eps being the lattice payoff
/// range divided by grid_n. Intentionally simple and refinement-free; kept
/// independent of the solver above. OpenMP-parallel over lattice columns.
template <class Payoff>
std::vector<double> brute_force_nash(Payoff&& payoff, int grid_n) {
    return detail::brute_force_nash_impl(payoff, grid_n, true);
}

/// Serial reference of brute_force_nash; returns bit-identical results.
template <class Payoff>
std::vector<double> brute_force_nash_serial(Payoff&& payoff, int grid_n) {
    return detail::brute_force_nash_impl(payoff, grid_n, false);
}

/// True when some equilibrium of the report coincides with the diagonal
/// maximizer within tol.
inline bool check_pareto_nash_coincidence(const EquilibriumReport& report, double tol) {
    for (const auto& e : report.equilibria)
        if (std::abs(e.t_star - report.pareto.t) <= tol) return true;
    return false;
}

} // namespace qgame
