#pragma once

#include <array>
#include <complex>

#include "qgame/game_core.hpp"

namespace qgame {

using Complex = std::complex<double>;

/// Phase angles of the two players' strategy amplitudes. The first player's
/// amplitudes are sqrt(x_i) e^{i xi_i}, the second player's sqrt(y_i) e^{i ups_i}.
/// Phases are held fixed while densities are optimized; the symmetric choice
/// ups_i = xi_i is the default throughout, asymmetric profiles are supported
/// for testing. Angles may be any finite value; named-class matching works
/// modulo pi.
struct PhaseProfile {
    double xi0 = 0.0;
    double xi1 = 0.0;
    double ups0 = 0.0;
    double ups1 = 0.0;

    static PhaseProfile symmetric(double xi0, double xi1) {
        return {xi0, xi1, xi0, xi1};
    }
    static PhaseProfile trivial() { return symmetric(0.0, 0.0); }
    static PhaseProfile pseudoclassical();    // (0, pi/2)
    static PhaseProfile separable_case3();    // (pi/4, pi/4)
    static PhaseProfile separable_case4();    // (pi/4, 3pi/4)

    bool is_finite() const;
};

/// Entangling angle gamma in [0, pi/2]. gamma = 0 reproduces the classical
/// game, gamma = pi/2 is maximal entanglement.
struct EntanglementParam {
    double gamma = 0.0;

    /// Throws std::invalid_argument unless gamma lies in [0, pi/2].
    static EntanglementParam checked(double gamma);
};

/// One player's strategy: a density on the 1-simplex plus one phase per
/// basis strategy. Induces the unit amplitudes sqrt(x_i) e^{i phase_i}.
struct QuantumStrategy {
    StrategyDensity density;
    double phase0 = 0.0;
    double phase1 = 0.0;

    Complex amp0() const;
    Complex amp1() const;
};

/// Four complex amplitudes over the two-player basis |00>, |01>, |10>, |11>.
struct StateVector4 {
    std::array<Complex, 4> amps{};

    Complex& at(int i, int j) { return amps[2 * i + j]; }
    const Complex& at(int i, int j) const { return amps[2 * i + j]; }

    double squared_norm() const;
};

using Mat2c = std::array<std::array<Complex, 2>, 2>;

/// Special-unitary strategy matrix [[a0, a1], [-conj(a1), conj(a0)]] with
/// a_i = sqrt(x_i) e^{i phase_i}.
Mat2c strategy_unitary(const QuantumStrategy& s);

/// The entangled two-qubit start state cos(gamma/2)|00> + i sin(gamma/2)|11>.
StateVector4 entangled_initial_state(EntanglementParam gamma);

/// Exact four-amplitude evaluation of the entangle / play / disentangle
/// protocol: J_gamma^dagger (U_alpha (x) U_beta) J_gamma |00>. The entangler
/// acts as a rotation in the (|00>,|11>) and (|01>,|10>) planes, so no 4x4
/// matrix exponential is ever formed.
StateVector4 correlated_state(EntanglementParam gamma, const QuantumStrategy& alpha,
                              const QuantumStrategy& beta);

/// First-player payoff sum_ij A_ij |psi_ij|^2 of an explicit state. Invariant
/// under a global phase of psi by construction.
double state_payoff(const StateVector4& psi, const GameMatrix2& A);

/// Second-player payoff sum_ij A_ji |psi_ij|^2 of an explicit state.
double state_payoff_player2(const StateVector4& psi, const GameMatrix2& A);

/// First-player payoff of the correlated game at entanglement gamma.
double quantum_payoff(EntanglementParam gamma, const QuantumStrategy& alpha,
                      const QuantumStrategy& beta, const GameMatrix2& A);

/// Second-player payoff; equals quantum_payoff with the players swapped.
double quantum_payoff_player2(EntanglementParam gamma, const QuantumStrategy& alpha,
                              const QuantumStrategy& beta, const GameMatrix2& A);

/// Named families of symmetric phase profiles for which the correlation
/// contribution to the payoff vanishes identically. Everything else is
/// Generic.
enum class PhaseClass { Trivial, Pseudoclassical, SeparableCase3, SeparableCase4, Generic };

const char* to_string(PhaseClass c);

/// Classifies a symmetric profile (ups = xi modulo pi within 1e-9) against
/// the named families, matching angles modulo pi with tolerance 1e-9:
///   (0, 0), (pi/2, pi/2)       -> Trivial
///   (0, pi/2), (pi/2, 0)       -> Pseudoclassical
///   (pi/4, pi/4), (3pi/4, 3pi/4) -> SeparableCase3
///   (pi/4, 3pi/4), (3pi/4, pi/4) -> SeparableCase4
/// Asymmetric profiles classify as Generic.
PhaseClass classify_phase_profile(const PhaseProfile& p);

/// Split of the effective game matrix of the correlated game,
///   payoff(x, y) = sum_ij x_i (A + exchange)_ij y_j
///               + correlation_coefficient * sqrt(x0 x1 y0 y1).
/// The exchange part mixes each entry with its diagonally opposite partner;
/// the correlation part is kept in the density-factored form above, which is
/// finite on the whole simplex including the boundary. The sign and angle
/// structure of both parts are fixed by exact agreement with the state-vector
/// payoff (see the oracle-equivalence tests).
struct EffectiveMatrixDecomposition {
    GameMatrix2 base;                      // the classical matrix A
    GameMatrix2 exchange;                  // gamma-dependent exchange entries
    double correlation_coefficient = 0.0;  // factored correlation weight
    double gamma = 0.0;
    PhaseProfile phases;

    GameMatrix2 effective() const {
        return {base.a00 + exchange.a00, base.a01 + exchange.a01,
                base.a10 + exchange.a10, base.a11 + exchange.a11};
    }
};

EffectiveMatrixDecomposition effective_decomposition(EntanglementParam gamma,
                                                     const PhaseProfile& phases,
                                                     const GameMatrix2& A);

/// Evaluates the decomposed payoff at densities x, y. Finite for every point
/// of the simplex; on a boundary density the correlation term is exactly 0.
double payoff_from_decomposition(const EffectiveMatrixDecomposition& d,
                                 const StrategyDensity& x, const StrategyDensity& y);

/// Effective matrix of the pseudoclassical family:
/// cos^2(gamma) A + sin^2(gamma) A^T.
GameMatrix2 pseudoclassical_matrix(EntanglementParam gamma, const GameMatrix2& A);

/// Separable family with both diagonal and off-diagonal entries mixed:
/// B_ii = cos^2 A_ii + sin^2 A_jj, B_ij = cos^2 A_ij + sin^2 A_ji (i != j).
GameMatrix2 case3_matrix(EntanglementParam gamma, const GameMatrix2& A);

/// Separable family with mixed diagonal and untouched off-diagonal entries:
/// B_ii = cos^2 A_ii + sin^2 A_jj, B_ij = A_ij (i != j).
GameMatrix2 case4_matrix(EntanglementParam gamma, const GameMatrix2& A);

} // namespace qgame
