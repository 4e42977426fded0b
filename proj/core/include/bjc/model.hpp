#pragma once

#include <utility>
#include <vector>

#include "bjc/hilbert.hpp"

namespace bjc {

// ---- model parameters --------------------------------------------------------
//
// A single two-level atom coupled with equal strength g to the two
// counter-propagating travelling-wave modes of a Kerr microresonator, driven
// through one mode, written in the frame rotating at the drive frequency.
// delta is the cavity/atom detuning from the drive, chi the Kerr shift per
// photon pair, omega the drive amplitude, and j a direct backscattering
// coupling between the two modes.  kappa and gamma are the energy decay rates
// of each cavity mode and of the atom.  All quantities are angular
// frequencies in the same unit (the command-line tool fixes kappa = 1 and
// works in dimensionless ratios; the library itself does not care).

struct ModelParams {
    double delta = 0.0;
    double g = 0.0;
    double chi = 0.0;
    double omega = 0.0;
    double kappa = 1.0;
    double gamma = 1.0;
    double j = 0.0;
    int n_cut = 5;

    // Throws ParameterError when a value is physically meaningless.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// ---- Hamiltonian and dissipation ----------------------------------------------

// Rotating-frame Hamiltonian
//
//   H = Δ (a₁†a₁ + a₂†a₂ + σ⁺σ⁻)
//     + χ (a₁†a₁†a₁a₁ + a₂†a₂†a₂a₂)
//     + g (a₁†σ⁻ + a₁σ⁺) + g (a₂†σ⁻ + a₂σ⁺)
//     + Ω (a₁† + a₁)
//     + J (a₁†a₂ + a₂†a₁)
//
// with mode 1 = clockwise (the driven mode) and mode 2 = counter-clockwise.
// Hermitian by construction.
Operator build_hamiltonian(const ModelParams& p, SpaceLayout layout);

// Non-Hermitian effective Hamiltonian H − i(κ/2)(a₁†a₁ + a₂†a₂) − i(γ/2)σ⁺σ⁻,
// the generator of the no-jump evolution.
Operator effective_hamiltonian(const ModelParams& p, SpaceLayout layout);

// A jump operator together with its decay rate.
struct CollapseChannel {
    Operator op;
    double rate;
};

// The three dissipative channels (a₁, κ), (a₂, κ), (σ⁻, γ), in that order.
// Channels with zero rate are kept so the list shape is predictable.
std::vector<CollapseChannel> collapse_channels(const ModelParams& p, SpaceLayout layout);

// Convenience: the layout implied by p.n_cut.
inline SpaceLayout layout_of(const ModelParams& p) { return SpaceLayout(p.n_cut); }

}  // namespace bjc
