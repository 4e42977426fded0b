#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bjc/errors.hpp"

namespace bjc {

// ---- dressed-state spectra -----------------------------------------------------
//
// Closed subspaces of the undriven, lossless Hamiltonian.  Levels are always
// reported relative to the subspace's bare energy (2ω for two excitations, ω
// for one), which is carried separately so it never enters the numerics.

struct SpectrumResult {
    std::vector<double> levels;            // ascending, relative to reference_energy
    std::vector<std::string> basis_labels; // ordering of the underlying block
    double reference_energy = 0.0;         // 2ω (two-photon) or ω (single-excitation)
};

// Two-excitation block in the basis {|2,0,g⟩, |1,1,g⟩, |0,2,g⟩, |1,0,e⟩, |0,1,e⟩}
// (no backscattering), written at bare energy omega:
//
//   [ 2ω+2χ    0      0     √2 g    0   ]
//   [   0     2ω      0      g      g   ]
//   [   0      0    2ω+2χ    0     √2 g ]
//   [ √2 g     g      0     2ω      0   ]
//   [   0      g    √2 g     0     2ω   ]
Eigen::MatrixXd two_photon_matrix(double omega, double g, double chi);

// Eigenvalues of the two-excitation block, ascending, relative to 2ω.  For
// chi = 0 they are {−2g, −√2 g, 0, √2 g, 2g}.
SpectrumResult two_photon_eigenvalues(double g, double chi, double omega_ref = 0.0);

// Single-excitation block in the basis {|1,0,g⟩, |0,1,g⟩, |0,0,e⟩} with a
// direct mode-mode coupling j:
//
//   [ ω   j   g ]
//   [ j   ω   g ]
//   [ g   g   ω ]
Eigen::MatrixXd single_excitation_matrix(double omega, double g, double j);

// Closed-form eigenvalues of the single-excitation block, ascending, relative
// to ω: the antisymmetric mode combination (|1,0,g⟩ − |0,1,g⟩)/√2 decouples
// from the atom and sits at −j; the symmetric combination hybridizes with the
// atom into (j ± √(j² + 8g²))/2.
SpectrumResult single_excitation_levels(double g, double j, double omega_ref = 0.0);

// Optimal drive detunings for conventional photon blockade, ascending:
// {−√2 g, 0, √2 g}, collapsing to {0} when g = 0.  The outer pair targets the
// vacuum-Rabi-split levels; resonant drive (0) is enabled by the Kerr shift
// of the two-photon levels.  Requires g ≥ 0.
std::vector<double> cpb_optimal_detunings(double g);

}  // namespace bjc
