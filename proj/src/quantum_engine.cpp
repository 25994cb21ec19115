#include "qgame/quantum_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qgame {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClassTol = 1e-9;

// Distance of two angles modulo pi.
double mod_pi_distance(double a, double b) {
    double d = std::fmod(a - b, kPi);
    if (d < 0.0) d += kPi;
    return std::min(d, kPi - d);
}

bool near_mod_pi(double a, double b) { return mod_pi_distance(a, b) <= kClassTol; }

} // namespace

PhaseProfile PhaseProfile::pseudoclassical() { return symmetric(0.0, kPi / 2); }
PhaseProfile PhaseProfile::separable_case3() { return symmetric(kPi / 4, kPi / 4); }
PhaseProfile PhaseProfile::separable_case4() { return symmetric(kPi / 4, 3 * kPi / 4); }

bool PhaseProfile::is_finite() const {
    return std::isfinite(xi0) && std::isfinite(xi1) && std::isfinite(ups0) &&
           std::isfinite(ups1);
}

EntanglementParam EntanglementParam::checked(double gamma) {
    // grid arithmetic may overshoot the endpoints by an ulp; clamp that noise
    constexpr double slack = 1e-12;
    if (!(gamma >= -slack && gamma <= kPi / 2 + slack))
        throw std::invalid_argument("entanglement parameter must lie in [0, pi/2]");
    return {std::clamp(gamma, 0.0, kPi / 2)};
}

Complex QuantumStrategy::amp0() const {
    return std::polar(std::sqrt(std::max(density.x0, 0.0)), phase0);
}

Complex QuantumStrategy::amp1() const {
    return std::polar(std::sqrt(std::max(density.x1, 0.0)), phase1);
}

double StateVector4::squared_norm() const {
    double n = 0.0;
    for (const Complex& a : amps) n += std::norm(a);
    return n;
}

Mat2c strategy_unitary(const QuantumStrategy& s) {
    s.density.validate();
    const Complex a0 = s.amp0();
    const Complex a1 = s.amp1();
    return {{{a0, a1}, {-std::conj(a1), std::conj(a0)}}};
}

StateVector4 entangled_initial_state(EntanglementParam gamma) {
    EntanglementParam::checked(gamma.gamma);
    StateVector4 psi;
    psi.at(0, 0) = std::cos(gamma.gamma / 2);
    psi.at(1, 1) = Complex(0.0, std::sin(gamma.gamma / 2));
    return psi;
}

StateVector4 correlated_state(EntanglementParam gamma, const QuantumStrategy& alpha,
                              const QuantumStrategy& beta) {
    EntanglementParam::checked(gamma.gamma);
    alpha.density.validate();
    beta.density.validate();

    const double c = std::cos(gamma.gamma / 2);
    const double s = std::sin(gamma.gamma / 2);
    const Complex is(0.0, s);

    const Complex a0 = alpha.amp0(), a1 = alpha.amp1();
    const Complex b0 = beta.amp0(), b1 = beta.amp1();

    // (U_alpha (x) U_beta) applied to c|00> + i s|11>; only the first and last
    // columns of the product matrix are needed.
    const Complex v00 = c * (a0 * b0) + is * (a1 * b1);
    const Complex v01 = c * (-a0 * std::conj(b1)) + is * (a1 * std::conj(b0));
    const Complex v10 = c * (-std::conj(a1) * b0) + is * (std::conj(a0) * b1);
    const Complex v11 = c * (std::conj(a1) * std::conj(b1)) + is * (std::conj(a0) * std::conj(b0));

    // Inverse entangler: plane rotation with the opposite sense,
    // |00> -> c|00> - is|11>, |01> -> c|01> + is|10>, and symmetrically.
    StateVector4 psi;
    psi.at(0, 0) = c * v00 - is * v11;
    psi.at(0, 1) = c * v01 + is * v10;
    psi.at(1, 0) = c * v10 + is * v01;
    psi.at(1, 1) = c * v11 - is * v00;
    return psi;
}

double state_payoff(const StateVector4& psi, const GameMatrix2& A) {
    return A.a00 * std::norm(psi.at(0, 0)) + A.a01 * std::norm(psi.at(0, 1)) +
           A.a10 * std::norm(psi.at(1, 0)) + A.a11 * std::norm(psi.at(1, 1));
}

double state_payoff_player2(const StateVector4& psi, const GameMatrix2& A) {
    return state_payoff(psi, A.transposed());
}

double quantum_payoff(EntanglementParam gamma, const QuantumStrategy& alpha,
                      const QuantumStrategy& beta, const GameMatrix2& A) {
    return state_payoff(correlated_state(gamma, alpha, beta), A);
}

double quantum_payoff_player2(EntanglementParam gamma, const QuantumStrategy& alpha,
                              const QuantumStrategy& beta, const GameMatrix2& A) {
    return state_payoff_player2(correlated_state(gamma, alpha, beta), A);
}

const char* to_string(PhaseClass c) {
    switch (c) {
        case PhaseClass::Trivial: return "trivial";
        case PhaseClass::Pseudoclassical: return "pseudoclassical";
        case PhaseClass::SeparableCase3: return "separable-case3";
        case PhaseClass::SeparableCase4: return "separable-case4";
        case PhaseClass::Generic: return "generic";
    }
    return "generic";
}

PhaseClass classify_phase_profile(const PhaseProfile& p) {
    if (!p.is_finite()) return PhaseClass::Generic;
    if (!near_mod_pi(p.ups0, p.xi0) || !near_mod_pi(p.ups1, p.xi1))
        return PhaseClass::Generic;

    const double q0 = 0.0, q1 = kPi / 2, q2 = kPi / 4, q3 = 3 * kPi / 4;
    const bool xi0_0 = near_mod_pi(p.xi0, q0), xi0_1 = near_mod_pi(p.xi0, q1);
    const bool xi0_2 = near_mod_pi(p.xi0, q2), xi0_3 = near_mod_pi(p.xi0, q3);
    const bool xi1_0 = near_mod_pi(p.xi1, q0), xi1_1 = near_mod_pi(p.xi1, q1);
    const bool xi1_2 = near_mod_pi(p.xi1, q2), xi1_3 = near_mod_pi(p.xi1, q3);

    if ((xi0_0 && xi1_0) || (xi0_1 && xi1_1)) return PhaseClass::Trivial;
    if ((xi0_0 && xi1_1) || (xi0_1 && xi1_0)) return PhaseClass::Pseudoclassical;
    if ((xi0_2 && xi1_2) || (xi0_3 && xi1_3)) return PhaseClass::SeparableCase3;
    if ((xi0_2 && xi1_3) || (xi0_3 && xi1_2)) return PhaseClass::SeparableCase4;
    return PhaseClass::Generic;
}

EffectiveMatrixDecomposition effective_decomposition(EntanglementParam gamma,
                                                     const PhaseProfile& phases,
                                                     const GameMatrix2& A) {
    EntanglementParam::checked(gamma.gamma);
    if (!phases.is_finite())
        throw std::invalid_argument("phase profile must be finite");
    if (!A.is_finite())
        throw std::invalid_argument("game matrix must be finite");

    const double sg = std::sin(gamma.gamma);
    const double sg2 = sg * sg;

    // Diagonal entries pair with the sums xi_i + ups_i, off-diagonal entries
    // with the differences xi_i - ups_j of the phase angles.
    const double sd0 = std::sin(phases.xi0 + phases.ups0);
    const double cd0 = std::cos(phases.xi0 + phases.ups0);
    const double sd1 = std::sin(phases.xi1 + phases.ups1);
    const double cd1 = std::cos(phases.xi1 + phases.ups1);
    const double so01 = std::sin(phases.xi0 - phases.ups1);
    const double co01 = std::cos(phases.xi0 - phases.ups1);
    const double so10 = std::sin(phases.xi1 - phases.ups0);
    const double co10 = std::cos(phases.xi1 - phases.ups0);

    EffectiveMatrixDecomposition d;
    d.base = A;
    d.gamma = gamma.gamma;
    d.phases = phases;

    d.exchange.a00 = -sg2 * sd0 * sd0 * (A.a00 - A.a11);
    d.exchange.a11 = -sg2 * sd1 * sd1 * (A.a11 - A.a00);
    d.exchange.a01 = -sg2 * so01 * so01 * (A.a01 - A.a10);
    d.exchange.a10 = -sg2 * so10 * so10 * (A.a10 - A.a01);

    d.correlation_coefficient =
        2.0 * sg * (-A.a00 * sd1 * cd0 + A.a11 * sd0 * cd1 + A.a01 * so10 * co01 -
                    A.a10 * so01 * co10);
    return d;
}

double payoff_from_decomposition(const EffectiveMatrixDecomposition& d,
                                 const StrategyDensity& x, const StrategyDensity& y) {
    x.validate();
    y.validate();
    const GameMatrix2 B = d.effective();
    const double bilinear =
        x.x0 * (B.a00 * y.x0 + B.a01 * y.x1) + x.x1 * (B.a10 * y.x0 + B.a11 * y.x1);
    const double cross = std::sqrt(std::max(x.x0 * x.x1 * y.x0 * y.x1, 0.0));
    return bilinear + d.correlation_coefficient * cross;
}

GameMatrix2 pseudoclassical_matrix(EntanglementParam gamma, const GameMatrix2& A) {
    EntanglementParam::checked(gamma.gamma);
    const double c2 = std::cos(gamma.gamma) * std::cos(gamma.gamma);
    const double s2 = 1.0 - c2;
    return {A.a00, c2 * A.a01 + s2 * A.a10, c2 * A.a10 + s2 * A.a01, A.a11};
}

GameMatrix2 case3_matrix(EntanglementParam gamma, const GameMatrix2& A) {
    EntanglementParam::checked(gamma.gamma);
    const double c2 = std::cos(gamma.gamma) * std::cos(gamma.gamma);
    const double s2 = 1.0 - c2;
    return {c2 * A.a00 + s2 * A.a11, c2 * A.a01 + s2 * A.a10,
            c2 * A.a10 + s2 * A.a01, c2 * A.a11 + s2 * A.a00};
}

GameMatrix2 case4_matrix(EntanglementParam gamma, const GameMatrix2& A) {
    EntanglementParam::checked(gamma.gamma);
    const double c2 = std::cos(gamma.gamma) * std::cos(gamma.gamma);
    const double s2 = 1.0 - c2;
    return {c2 * A.a00 + s2 * A.a11, A.a01, A.a10, c2 * A.a11 + s2 * A.a00};
}

} // namespace qgame
