#include <cmath>
#include <vector>

#include "bjc/dynamics.hpp"
#include "doctest.h"

using namespace bjc;

namespace {

// Empty-cavity parameters: no atom coupling, no Kerr, a weak drive.  The
// steady state of the driven damped mode is a coherent state with
// |alpha|^2 = omega^2 / (delta^2 + kappa^2/4).
ModelParams empty_cavity(double delta, double omega) {
    ModelParams p;
    p.delta = delta;
    p.g = 0.0;
    p.chi = 0.0;
    p.omega = omega;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.n_cut = 5;
    return p;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("vacuum and basis states") {
    const SpaceLayout layout(3);
    const DensityMatrix vac = DensityMatrix::vacuum(layout);
    CHECK(std::abs(vac.trace() - 1.0) < 1e-15);
    CHECK_NOTHROW(vac.validate());
    CHECK(vac.mat(0, 0) == Complex(1.0, 0.0));
    CHECK(mean_photon(vac, Mode::cw) == 0.0);

    const DensityMatrix one = DensityMatrix::basis_state(layout, 2, 1, 1);
    const int i = layout.index_of(2, 1, 1);
    CHECK(one.mat(i, i) == Complex(1.0, 0.0));
    CHECK_NOTHROW(one.validate());
    CHECK_THROWS_AS(DensityMatrix::basis_state(layout, 3, 0, 0), ParameterError);
}

TEST_CASE("density-matrix validation catches trace, hermiticity and positivity") {
    const SpaceLayout layout(2);
    const int d = layout.dim();

    Matrix bad_trace = Matrix::Zero(d, d);
    bad_trace(0, 0) = 0.5;
    CHECK_THROWS_AS(DensityMatrix(layout, bad_trace).validate(), StateError);

    Matrix not_hermitian = Matrix::Zero(d, d);
    not_hermitian(0, 0) = 1.0;
    not_hermitian(0, 1) = 0.3;  // no conjugate partner
    CHECK_THROWS_AS(DensityMatrix(layout, not_hermitian).validate(), StateError);

    Matrix not_positive = Matrix::Zero(d, d);
    not_positive(0, 0) = 1.5;
    not_positive(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(layout, not_positive).validate(), StateError);

    CHECK_THROWS_AS(DensityMatrix(layout, Matrix::Identity(3, 3)), LayoutError);
}

TEST_CASE("liouvillian preserves the trace") {
    for (const ModelParams& p :
         {empty_cavity(0.3, 0.2), ModelParams{0.7, 1.33, 8.0, 0.1, 1.0, 0.6, 0.4, 3}}) {
        const Superoperator l = liouvillian(p);
        CHECK(trace_preservation_residual(l) < 1e-12);
    }
}

TEST_CASE("liouvillian rejects negative rates and mismatched layouts") {
    const SpaceLayout layout(2);
    const Operator h = Operator::zero(layout);
    const Operator a = embed(fock_annihilation(2), Slot::cw, layout);
    CHECK_THROWS_AS(liouvillian(h, {{a, -1.0}}), ParameterError);
    const Operator wrong = embed(fock_annihilation(3), Slot::cw, SpaceLayout(3));
    CHECK_THROWS_AS(liouvillian(h, {{wrong, 1.0}}), LayoutError);
}

TEST_CASE("steady state of the driven empty cavity is coherent") {
    SUBCASE("resonant") {
        const ModelParams p = empty_cavity(0.0, 0.1);
        const DensityMatrix rho = steady_state(liouvillian(p));
        // |alpha|^2 = 0.01 / 0.25 = 0.04
        CHECK(std::abs(mean_photon(rho, Mode::cw) - 0.04) < 1e-6);
        CHECK(mean_photon(rho, Mode::ccw) < 1e-12);
        CHECK(std::abs(g2_zero(rho, Mode::cw) - 1.0) < 1e-4);
    }
    SUBCASE("detuned") {
        const ModelParams p = empty_cavity(0.7, 0.05);
        const DensityMatrix rho = steady_state(liouvillian(p));
        const double expected = 0.05 * 0.05 / (0.7 * 0.7 + 0.25);
        CHECK(std::abs(mean_photon(rho, Mode::cw) - expected) < 1e-8);
    }
}

TEST_CASE("sparse and dense backends agree") {
    ModelParams p;
    p.delta = 0.2;
    p.g = 1.33;
    p.chi = 8.0;
    p.omega = 0.1;
    p.gamma = 0.7;
    p.n_cut = 3;

    const Superoperator l = liouvillian(p);
    SteadyStateOptions dense;
    dense.backend = SteadyStateBackend::dense_lu;
    const DensityMatrix a = steady_state(l);
    const DensityMatrix b = steady_state(l, dense);
    CHECK((a.mat - b.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("steady state requires dissipation to be unique") {
    const SpaceLayout layout(2);
    const Operator h = Operator::zero(layout);
    const Superoperator l = liouvillian(h, {});
    CHECK_THROWS_AS(steady_state(l), SingularSystemError);
}

TEST_CASE("steady state result satisfies the state invariants") {
    ModelParams p;
    p.delta = -1.0;
    p.g = 1.33;
    p.chi = 8.0;
    p.omega = 0.1;
    p.n_cut = 4;
    const DensityMatrix rho = steady_state(liouvillian(p));
    CHECK_NOTHROW(rho.validate());
}

TEST_CASE("evolve reproduces exponential photon decay") {
    ModelParams p = empty_cavity(0.0, 0.0);
    p.n_cut = 3;
    const SpaceLayout layout = layout_of(p);
    const Superoperator l = liouvillian(p);

    const DensityMatrix rho0 = DensityMatrix::basis_state(layout, 1, 0, 0);
    const double t = 0.7;
    const DensityMatrix rho = evolve(rho0, l, t, 1e-3);
    CHECK(std::abs(mean_photon(rho, Mode::cw) - std::exp(-p.kappa * t)) < 1e-9);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
}

TEST_CASE("evolve rejects bad steps and detects instability") {
    ModelParams p = empty_cavity(0.0, 2.0);
    p.n_cut = 4;
    const SpaceLayout layout = layout_of(p);
    const Superoperator l = liouvillian(p);
    const DensityMatrix rho0 = DensityMatrix::vacuum(layout);

    CHECK_THROWS_AS(evolve(rho0, l, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(evolve(rho0, l, 0.5, 1.0), ParameterError);
    // A step far beyond the stability boundary of the integrator blows up and
    // must surface as a drift failure, not silently return garbage.
    CHECK_THROWS_AS(evolve(rho0, l, 200.0, 10.0), ConvergenceError);
}

TEST_CASE("photon distribution, mean and g2 on product states") {
    const SpaceLayout layout(4);
    const DensityMatrix rho = DensityMatrix::basis_state(layout, 2, 1, 0);

    const auto p_cw = photon_distribution(rho, Mode::cw);
    REQUIRE(p_cw.size() == 4);
    CHECK(std::abs(p_cw[2] - 1.0) < 1e-15);
    CHECK(std::abs(p_cw[0]) + std::abs(p_cw[1]) + std::abs(p_cw[3]) < 1e-15);

    const auto p_ccw = photon_distribution(rho, Mode::ccw);
    CHECK(std::abs(p_ccw[1] - 1.0) < 1e-15);

    CHECK(std::abs(mean_photon(rho, Mode::cw) - 2.0) < 1e-14);
    CHECK(std::abs(mean_photon(rho, Mode::ccw) - 1.0) < 1e-14);

    // Fock states: g2 = n(n-1)/n^2.
    CHECK(std::abs(g2_zero(rho, Mode::cw) - 0.5) < 1e-13);
    CHECK(std::abs(g2_zero(rho, Mode::ccw) - 0.0) < 1e-13);
}

TEST_CASE("g2 is undefined on the vacuum") {
    const DensityMatrix vac = DensityMatrix::vacuum(SpaceLayout(3));
    CHECK_THROWS_AS(g2_zero(vac, Mode::cw), UndefinedCorrelationError);
}

TEST_CASE("expectation values") {
    const SpaceLayout layout(3);
    const DensityMatrix rho = DensityMatrix::basis_state(layout, 2, 0, 1);
    const Operator n_cw = embed(fock_number(3), Slot::cw, layout);
    const Operator pe = embed(atom_excited_projector(), Slot::atom, layout);
    CHECK(std::abs(expectation(rho, n_cw) - 2.0) < 1e-14);
    CHECK(std::abs(expectation(rho, pe) - 1.0) < 1e-14);
    CHECK_THROWS_AS(expectation(rho, Operator::identity(SpaceLayout(2))), LayoutError);
}

TEST_CASE("poisson deviation is flat for a poissonian distribution") {
    const double mean = 0.3;
    std::vector<double> pois(6);
    double fact = 1.0;
    for (int m = 0; m < 6; ++m) {
        if (m > 0) fact *= m;
        pois[static_cast<std::size_t>(m)] = std::exp(-mean) * std::pow(mean, m) / fact;
    }
    const auto ratios = poisson_deviation(pois, mean);
    REQUIRE(ratios.size() == pois.size());
    for (double r : ratios) CHECK(std::abs(r - 1.0) < 1e-12);

    CHECK_THROWS_AS(poisson_deviation(pois, 0.0), ParameterError);
    CHECK_THROWS_AS(poisson_deviation(pois, -1.0), ParameterError);
}

}  // TEST_SUITE
