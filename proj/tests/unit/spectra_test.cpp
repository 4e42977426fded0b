#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bjc/spectra.hpp"
#include "doctest.h"

using namespace bjc;

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    return out;  // SelfAdjointEigenSolver returns ascending order
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("two-photon block matrix structure") {
    const double omega = 1.7, g = 0.9, chi = 0.3;
    const Eigen::MatrixXd m = two_photon_matrix(omega, g, chi);
    REQUIRE(m.rows() == 5);
    REQUIRE(m.cols() == 5);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-15);

    const double s2 = std::sqrt(2.0);
    // Basis order {|2,0,g>, |1,1,g>, |0,2,g>, |1,0,e>, |0,1,e>}.
    CHECK(m(0, 0) == doctest::Approx(2.0 * omega + 2.0 * chi).epsilon(1e-15));
    CHECK(m(1, 1) == doctest::Approx(2.0 * omega).epsilon(1e-15));
    CHECK(m(2, 2) == doctest::Approx(2.0 * omega + 2.0 * chi).epsilon(1e-15));
    CHECK(m(3, 3) == doctest::Approx(2.0 * omega).epsilon(1e-15));
    CHECK(m(4, 4) == doctest::Approx(2.0 * omega).epsilon(1e-15));
    CHECK(m(0, 3) == doctest::Approx(s2 * g).epsilon(1e-15));
    CHECK(m(1, 3) == doctest::Approx(g).epsilon(1e-15));
    CHECK(m(1, 4) == doctest::Approx(g).epsilon(1e-15));
    CHECK(m(2, 4) == doctest::Approx(s2 * g).epsilon(1e-15));
    CHECK(std::abs(m(0, 1)) + std::abs(m(0, 2)) + std::abs(m(0, 4)) + std::abs(m(2, 3)) +
              std::abs(m(3, 4)) <
          1e-15);
}

TEST_CASE("two-photon spectrum without Kerr is the bare dressed ladder") {
    for (double g : {0.5, 1.33, 10.0}) {
        const SpectrumResult sp = two_photon_eigenvalues(g, 0.0);
        REQUIRE(sp.levels.size() == 5);
        const double s2 = std::sqrt(2.0);
        const double expected[] = {-2.0 * g, -s2 * g, 0.0, s2 * g, 2.0 * g};
        for (int i = 0; i < 5; ++i) CHECK(std::abs(sp.levels[i] - expected[i]) <= 1e-10);
    }
}

TEST_CASE("two-photon spectrum properties") {
    const SpectrumResult sp = two_photon_eigenvalues(2.3, 1.1, 5.0);
    CHECK(sp.reference_energy == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(sp.basis_labels.size() == 5);
    for (std::size_t i = 1; i < sp.levels.size(); ++i) CHECK(sp.levels[i - 1] <= sp.levels[i]);

    // Levels are relative to the bare energy: independent of the reference.
    const SpectrumResult sp0 = two_photon_eigenvalues(2.3, 1.1, 0.0);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(sp.levels[i] - sp0.levels[i]) < 1e-12);

    // And they agree with a direct diagonalization of the block.
    const auto eig = sorted_eigenvalues(two_photon_matrix(5.0, 2.3, 1.1));
    for (int i = 0; i < 5; ++i) CHECK(std::abs(sp.levels[i] - (eig[i] - 10.0)) < 1e-12);
}

TEST_CASE("two-photon spectrum at strong coupling with Kerr (frozen)") {
    // Regression constants from the first oracle run at g = 10, chi = 8.
    const SpectrumResult sp = two_photon_eigenvalues(10.0, 8.0);
    const double expected[] = {-17.44476588, -8.248076809, 6.9141221, 24.24807681, 26.53064378};
    for (int i = 0; i < 5; ++i) CHECK(sp.levels[i] == doctest::Approx(expected[i]).epsilon(1e-7));

    // No level sits anywhere near the bare two-photon resonance 2*chi = 16:
    // the blockade at strong coupling relies on exactly this margin.
    double margin = 1e18;
    for (double v : sp.levels) margin = std::min(margin, std::abs(v - 16.0));
    CHECK(margin > 1.0);
}

TEST_CASE("single-excitation levels: closed form vs diagonalization") {
    for (const auto& [g, j] : std::vector<std::pair<double, double>>{
             {2.3, 1.1}, {1.33, 0.0}, {0.7, 3.0}, {10.0, 3.0}}) {
        const SpectrumResult sp = single_excitation_levels(g, j, 0.4);
        REQUIRE(sp.levels.size() == 3);
        CHECK(sp.reference_energy == doctest::Approx(0.4).epsilon(1e-15));

        const auto eig = sorted_eigenvalues(single_excitation_matrix(0.4, g, j));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(sp.levels[i] - (eig[i] - 0.4)) < 1e-12);
    }
}

TEST_CASE("single-excitation structure: antisymmetric mode decouples") {
    const double g = 1.7, j = 0.9;
    const SpectrumResult sp = single_excitation_levels(g, j);
    // One level sits exactly at -j; the other two at (j +- sqrt(j^2+8g^2))/2.
    const double s = std::sqrt(j * j + 8.0 * g * g);
    std::vector<double> expected = {-j, (j - s) / 2.0, (j + s) / 2.0};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sp.levels[i] - expected[i]) < 1e-12);
}

TEST_CASE("optimal blockade detunings") {
    const auto d = cpb_optimal_detunings(10.0);
    REQUIRE(d.size() == 3);
    CHECK(std::abs(d[0] + 10.0 * std::sqrt(2.0)) < 1e-12);
    CHECK(d[1] == 0.0);
    CHECK(std::abs(d[2] - 10.0 * std::sqrt(2.0)) < 1e-12);

    // The outer pair targets the single-excitation dressed levels at j = 0.
    const SpectrumResult sp = single_excitation_levels(10.0, 0.0);
    CHECK(std::abs(d[0] - sp.levels.front()) < 1e-12);
    CHECK(std::abs(d[2] - sp.levels.back()) < 1e-12);

    CHECK(cpb_optimal_detunings(0.0) == std::vector<double>{0.0});
    CHECK_THROWS_AS(cpb_optimal_detunings(-1.0), ParameterError);
}

}  // TEST_SUITE
