#pragma once

#include "bjc/model.hpp"

namespace bjc {

// ---- weak-drive amplitude solution ---------------------------------------------
//
// For weak driving (Ω ≪ κ) and no direct backscattering (j = 0) the system
// stays close to |0,0,g⟩ and the wavefunction can be truncated at two total
// excitations.  Writing |ψ⟩ = Σ C_mns |m,n,s⟩, evolving with the effective
// (no-jump) Hamiltonian and pinning C00g = 1 yields a closed linear system
// for the eight remaining amplitudes.  The reduction additionally assumes
// γ = κ, so one complex detuning Δ̃ = Δ − iκ/2 governs every manifold.

struct AmplitudeSet {
    Complex c00g{1.0, 0.0};  // ground-state amplitude (normalization choice)

    // single-excitation manifold
    Complex c10g{}, c01g{}, c00e{};
    // two-excitation manifold
    Complex c20g{}, c02g{}, c11g{}, c10e{}, c01e{};

    Complex delta_tilde{};  // Δ − iκ/2

    // Auxiliary combinations used by the closed-form expressions; provided for
    // introspection and cross-checks.
    Complex aux_a{}, aux_b{}, aux_q{}, aux_d{}, aux_f{};
};

// Solve the steady amplitude equations as an 8×8 linear system.  This is the
// authoritative evaluation path: it involves no algebraic simplification
// beyond the ansatz itself.  Requires kappa > 0, gamma == kappa (throws
// ParameterError directing the caller to the master-equation path otherwise),
// g > 0, omega > 0 and j == 0.
AmplitudeSet steady_amplitudes(const ModelParams& p);

// Evaluate the explicit closed-form solution of the same system, kept
// separate so the algebra can be cross-checked against the linear solve.
// Note the signs: the auxiliary quantities A, Q, D, F and the c11g expression
// must carry +χ terms for the closed forms to solve the amplitude equations
// exactly (verified entry-wise against steady_amplitudes in the tests).
// Same preconditions as steady_amplitudes.
AmplitudeSet closed_form_amplitudes(const ModelParams& p);

// g²(0) of the driven (clockwise) mode from the amplitude solution.
//
//   approximate: 2|C20g|² / |C10g|⁴                         (the headline value)
//   full:        2|C20g|² / (|C10g|² + |C11g|² + |C10e|²)²
//
// Throws UndefinedCorrelationError when the single-photon amplitude vanishes.
struct AnalyticG2 {
    double approximate = 0.0;
    double full = 0.0;
};
AnalyticG2 analytic_g2(const AmplitudeSet& a);

// Limiting occupation probabilities for g ≫ (κ, χ, |Δ|) at Δ = 0:
//
//   |C10g|² ≈ |C01g|² ≈ Ω²/κ²
//   |C11g|² ≈ Ω⁴ / (κ²(χ² + κ²))
//   |C20g|² = |C02g|² ≈ Ω⁴ / (2κ²(χ² + κ²))
//
// implying the g-independent correlation plateau g² → κ²/(χ² + κ²).
struct StrongCouplingLimits {
    double p01g = 0.0;
    double p10g = 0.0;
    double p11g = 0.0;
    double p20g = 0.0;
};
StrongCouplingLimits strong_coupling_limits(const ModelParams& p);

// Max modulus of the time derivatives of the full pre-simplification
// amplitude ODE system evaluated at the given amplitudes, with the manifold
// detunings Δ₁ = Δ − iκ/2, Δ_e = Δ − iγ/2, Δ₂ = 2Δ − i(γ+κ)/2 written out
// separately (requires gamma == kappa, the regime the amplitudes are derived
// for).  The ground-state row is excluded: its derivative is ΩC10g by
// construction (the adiabatic approximation), not a solved equation.  For
// amplitudes computed at the same parameters this is rounding-level, which
// verifies that the single-detuning reduction solved by steady_amplitudes is
// a faithful specialization of the full system.
double effective_hamiltonian_ode_residual(const AmplitudeSet& a, const ModelParams& p);

}  // namespace bjc
