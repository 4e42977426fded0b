#include "bjc/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace bjc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_finite(std::initializer_list<double> vals, const char* who) {
    for (double v : vals)
        if (!std::isfinite(v)) throw ParameterError(std::string(who) + ": parameters must be finite");
}

}  // namespace

Eigen::MatrixXd two_photon_matrix(double omega, double g, double chi) {
    require_finite({omega, g, chi}, "two_photon_matrix");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    const double w2 = 2.0 * omega;
    m(0, 0) = w2 + 2.0 * chi;
    m(1, 1) = w2;
    m(2, 2) = w2 + 2.0 * chi;
    m(3, 3) = w2;
    m(4, 4) = w2;
    m(0, 3) = m(3, 0) = kSqrt2 * g;
    m(1, 3) = m(3, 1) = g;
    m(1, 4) = m(4, 1) = g;
    m(2, 4) = m(4, 2) = kSqrt2 * g;
    return m;
}

SpectrumResult two_photon_eigenvalues(double g, double chi, double omega_ref) {
    require_finite({g, chi, omega_ref}, "two_photon_eigenvalues");
    // Diagonalize at omega = 0 so the levels come out relative to 2ω.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(two_photon_matrix(0.0, g, chi),
                                                      Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    SpectrumResult r;
    r.levels.assign(ev.data(), ev.data() + ev.size());
    r.basis_labels = {"|2,0,g>", "|1,1,g>", "|0,2,g>", "|1,0,e>", "|0,1,e>"};
    r.reference_energy = 2.0 * omega_ref;
    return r;
}

Eigen::MatrixXd single_excitation_matrix(double omega, double g, double j) {
    require_finite({omega, g, j}, "single_excitation_matrix");
    Eigen::MatrixXd m(3, 3);
    m << omega, j, g,
         j, omega, g,
         g, g, omega;
    return m;
}

SpectrumResult single_excitation_levels(double g, double j, double omega_ref) {
    require_finite({g, j, omega_ref}, "single_excitation_levels");
    const double root = std::sqrt(j * j + 8.0 * g * g);
    SpectrumResult r;
    r.levels = {(j + root) / 2.0, -j, (j - root) / 2.0};
    std::sort(r.levels.begin(), r.levels.end());
    r.basis_labels = {"|1,0,g>", "|0,1,g>", "|0,0,e>"};
    r.reference_energy = omega_ref;
    return r;
}

std::vector<double> cpb_optimal_detunings(double g) {
    require_finite({g}, "cpb_optimal_detunings");
    if (!(g >= 0.0)) throw ParameterError("cpb_optimal_detunings: g must be >= 0");
    if (g == 0.0) return {0.0};
    const double split = kSqrt2 * g;
    return {-split, 0.0, split};
}

}  // namespace bjc
