#pragma once

#include <stdexcept>

namespace qgame {

/// Normalization tolerance for strategy densities. Inputs violating it are
/// rejected, never renormalized.
inline constexpr double kDensityTol = 1e-12;

/// Real 2x2 payoff matrix of a symmetric two-strategy game.
struct GameMatrix2 {
    double a00 = 0.0;
    double a01 = 0.0;
    double a10 = 0.0;
    double a11 = 0.0;

    double operator()(int i, int j) const {
        return i == 0 ? (j == 0 ? a00 : a01) : (j == 0 ? a10 : a11);
    }

    GameMatrix2 transposed() const { return {a00, a10, a01, a11}; }

    bool is_finite() const;

    bool operator==(const GameMatrix2&) const = default;
};

/// Prisoner's-dilemma parameterization: payoffs 0 < a < b < c inducing the
/// matrix [[b, 0], [c, a]] (row strategy 0 = cooperate, 1 = defect).
struct PrisonersDilemmaParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// Throws std::invalid_argument unless 0 < a < b < c.
    static PrisonersDilemmaParams checked(double a, double b, double c);

    GameMatrix2 matrix() const { return {b, 0.0, c, a}; }

    bool operator==(const PrisonersDilemmaParams&) const = default;
};

/// Point (x0, x1) on the 1-simplex: the probability content of a strategy.
/// Index 1 carries the "defect" weight in the PD parameterization.
struct StrategyDensity {
    double x0 = 1.0;
    double x1 = 0.0;

    /// Throws std::invalid_argument unless x0, x1 >= 0 and x0 + x1 = 1,
    /// all within kDensityTol.
    static StrategyDensity checked(double x0, double x1);

    /// Density (1 - t, t) for a weight t in [0, 1].
    static StrategyDensity from_weight(double t);

    /// Weight on strategy index 1.
    double weight() const { return x1; }

    bool valid() const;
    void validate() const;
};

/// Bilinear payoff sum_ij x_i A_ij y_j of mixed strategies x (own) and y
/// (opponent). Rejects non-normalized densities.
double classical_payoff(const StrategyDensity& x, const StrategyDensity& y,
                        const GameMatrix2& A);

/// Opponent-side payoff of the symmetric game: conjugate(x, y) = payoff(y, x).
double conjugate_payoff(const StrategyDensity& x, const StrategyDensity& y,
                        const GameMatrix2& A);

/// Common payoff when both players use the same density: payoff(x, x).
double diagonal_payoff(const StrategyDensity& x, const GameMatrix2& A);

} // namespace qgame
