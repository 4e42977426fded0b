#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "bjc/model.hpp"

namespace bjc {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Numerical acceptance thresholds used when validating states and solves.
// These are library-wide defaults; callers may pass adjusted copies.
struct Tolerances {
    double steady_residual = 1e-10;  // max |L ρ| for a steady state
    double trace = 1e-10;            // |Tr ρ − 1|
    double hermiticity = 1e-10;      // max |ρ − ρ†|
    double positivity = 1e-8;        // eigenvalues of ρ must be ≥ −positivity
    double evolve_drift = 1e-8;      // trace and Hermiticity drift allowed during evolve
};

// ---- states -------------------------------------------------------------------

// A density matrix on the composite space.  validate() enforces unit trace,
// Hermiticity and positivity; functions in this library that return a
// DensityMatrix have already validated it.
struct DensityMatrix {
    SpaceLayout layout;
    Matrix mat;

    DensityMatrix(SpaceLayout layout_, Matrix mat_) : layout(layout_), mat(std::move(mat_)) {
        if (mat.rows() != layout.dim() || mat.cols() != layout.dim())
            throw LayoutError("DensityMatrix: matrix dimension does not match layout");
    }

    // |vac, vac, g⟩⟨vac, vac, g|
    static DensityMatrix vacuum(SpaceLayout layout);

    // Pure product basis state |m, n, s⟩⟨m, n, s|.
    static DensityMatrix basis_state(SpaceLayout layout, int m, int n, int s);

    Complex trace() const { return mat.trace(); }

    // Throws StateError when trace, Hermiticity or positivity is violated.
    void validate(const Tolerances& tol = {}) const;
};

// ---- master equation ------------------------------------------------------------

// The Liouvillian as a sparse matrix acting on column-stacked density
// matrices:  vec(ρ̇) = L vec(ρ) with
//
//   ρ̇ = −i[H, ρ] + Σ_k (r_k/2) (2 o_k ρ o_k† − o_k†o_k ρ − ρ o_k†o_k).
struct Superoperator {
    SpaceLayout layout;
    SparseMatrix mat;

    Eigen::Index dim() const { return mat.rows(); }

    // L applied to vec(ρ), reshaped back to a matrix.
    Matrix apply(const Matrix& rho) const;
};

// Assemble the Liouvillian from a Hamiltonian and a list of decay channels.
// Channel rates must be nonnegative; zero-rate channels contribute nothing
// but are accepted.
Superoperator liouvillian(const Operator& h, const std::vector<CollapseChannel>& channels);

// Convenience: Liouvillian of the model at the given parameters.
Superoperator liouvillian(const ModelParams& p);

// Max modulus of Tr(L ρ) over a basis of matrix units, computed as the
// infinity norm of 1ᵀL where 1 is the vectorized identity.  Zero (to rounding)
// for any proper Liouvillian, regardless of parameters.
double trace_preservation_residual(const Superoperator& l);

// ---- steady state ----------------------------------------------------------------

enum class SteadyStateBackend {
    sparse_lu,  // default: sparse LU on the stationarity system
    dense_lu,   // dense reference implementation (small truncations only)
};

const char* to_string(SteadyStateBackend b);

struct SteadyStateOptions {
    SteadyStateBackend backend = SteadyStateBackend::sparse_lu;
    Tolerances tol{};
};

// Solve L ρ = 0 with Tr ρ = 1 by replacing one row of the vectorized
// stationarity system with the trace constraint.  Throws SingularSystemError
// when the system has no unique steady state (e.g. all decay rates zero) and
// ConvergenceError when the solution fails the residual tolerance.
DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& opts = {});

// ---- time evolution ---------------------------------------------------------------

// Fixed-step classical Runge-Kutta integration of vec(ρ̇) = L vec(ρ) from
// rho0 to t_final (0 < dt ≤ t_final; a shorter final step lands exactly on
// t_final).  Trace and Hermiticity are monitored after every step; drift
// beyond tol.evolve_drift throws ConvergenceError, which signals a step size
// too large for the fastest rate in L.
DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& l, double t_final,
                     double dt, const Tolerances& tol = {});

// ---- observables ------------------------------------------------------------------

// Tr(ρ A).  Layouts must match.
Complex expectation(const DensityMatrix& rho, const Operator& a);

// Photon-number distribution P(m) of one travelling-wave mode, obtained by
// tracing out the other mode and the atom.  Rounding-level negative entries
// (possible for a state that is positive only up to solver tolerance) are
// clamped to zero so the result is a genuine probability vector; it sums to 1
// within the state's trace tolerance.
std::vector<double> photon_distribution(const DensityMatrix& rho, Mode mode);

// ⟨a†a⟩ for one mode.
double mean_photon(const DensityMatrix& rho, Mode mode);

// Equal-time second-order correlation g²(0) = ⟨a†a†aa⟩ / ⟨a†a⟩² for one mode.
// Throws UndefinedCorrelationError when the mean occupation vanishes.
double g2_zero(const DensityMatrix& rho, Mode mode);

// Ratios P(m) / Poisson(m; mean) for m = 0 ... P.size()-1, where Poisson is
// the coherent-state distribution with the given mean.  mean must be > 0.
std::vector<double> poisson_deviation(const std::vector<double>& p, double mean);

}  // namespace bjc
