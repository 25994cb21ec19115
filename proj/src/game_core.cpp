#include "qgame/game_core.hpp"

#include <cmath>

namespace qgame {

bool GameMatrix2::is_finite() const {
    return std::isfinite(a00) && std::isfinite(a01) && std::isfinite(a10) &&
           std::isfinite(a11);
}

PrisonersDilemmaParams PrisonersDilemmaParams::checked(double a, double b, double c) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
        throw std::invalid_argument("prisoner's-dilemma payoffs must be finite");
    if (!(0.0 < a && a < b && b < c))
        throw std::invalid_argument("prisoner's-dilemma payoffs must satisfy 0 < a < b < c");
    return {a, b, c};
}

StrategyDensity StrategyDensity::checked(double x0, double x1) {
    StrategyDensity d{x0, x1};
    d.validate();
    return d;
}

StrategyDensity StrategyDensity::from_weight(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("strategy weight must lie in [0, 1]");
    return {1.0 - t, t};
}

bool StrategyDensity::valid() const {
    return std::isfinite(x0) && std::isfinite(x1) && x0 >= -kDensityTol &&
           x1 >= -kDensityTol && std::abs(x0 + x1 - 1.0) <= kDensityTol;
}

void StrategyDensity::validate() const {
    if (!valid())
        throw std::invalid_argument("strategy density must be nonnegative and sum to 1");
}

double classical_payoff(const StrategyDensity& x, const StrategyDensity& y,
                        const GameMatrix2& A) {
    x.validate();
    y.validate();
    return x.x0 * (A.a00 * y.x0 + A.a01 * y.x1) + x.x1 * (A.a10 * y.x0 + A.a11 * y.x1);
}

double conjugate_payoff(const StrategyDensity& x, const StrategyDensity& y,
                        const GameMatrix2& A) {
    return classical_payoff(y, x, A);
}

double diagonal_payoff(const StrategyDensity& x, const GameMatrix2& A) {
    return classical_payoff(x, x, A);
}

} // namespace qgame
