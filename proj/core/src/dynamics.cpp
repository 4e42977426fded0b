#include "bjc/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace bjc {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Append scale * (a ⊗ b) to a triplet list.  setFromTriplets later sums
// duplicate coordinates, so all Liouvillian terms can be accumulated into one
// list and assembled in a single pass.
void add_kron(std::vector<Triplet>& trips, const SparseMatrix& a, const SparseMatrix& b,
              Complex scale) {
    if (scale == Complex(0.0, 0.0)) return;
    const Eigen::Index br = b.rows(), bc = b.cols();
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib)
                    trips.emplace_back(ia.row() * br + ib.row(), ia.col() * bc + ib.col(),
                                       scale * ia.value() * ib.value());
}

SparseMatrix sparse_identity(Eigen::Index d) {
    SparseMatrix id(d, d);
    id.setIdentity();
    return id;
}

std::string format_residual(const char* what, double residual, double tol) {
    std::ostringstream os;
    os << what << ": residual " << residual << " exceeds tolerance " << tol;
    return os.str();
}

}  // namespace

// ---- states -----------------------------------------------------------------

DensityMatrix DensityMatrix::vacuum(SpaceLayout layout) { return basis_state(layout, 0, 0, 0); }

DensityMatrix DensityMatrix::basis_state(SpaceLayout layout, int m, int n, int s) {
    Matrix rho = Matrix::Zero(layout.dim(), layout.dim());
    const int k = layout.index_of(m, n, s);
    rho(k, k) = 1.0;
    return DensityMatrix(layout, std::move(rho));
}

void DensityMatrix::validate(const Tolerances& tol) const {
    const double trace_dev = std::abs(trace() - Complex(1.0, 0.0));
    if (!(trace_dev <= tol.trace))
        throw StateError(format_residual("DensityMatrix: trace deviates from 1", trace_dev, tol.trace));

    const double herm_dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm_dev <= tol.hermiticity))
        throw StateError(format_residual("DensityMatrix: not Hermitian", herm_dev, tol.hermiticity));

    // Positivity of the Hermitian part; rounding-level negative eigenvalues
    // are tolerated.
    Eigen::SelfAdjointEigenSolver<Matrix> es((mat + mat.adjoint()) / 2.0);
    const double min_eig = es.eigenvalues().minCoeff();
    if (!(min_eig >= -tol.positivity))
        throw StateError(format_residual("DensityMatrix: negative eigenvalue", -min_eig, tol.positivity));
}

// ---- master equation ----------------------------------------------------------

Matrix Superoperator::apply(const Matrix& rho) const {
    const Eigen::Index d = layout.dim();
    if (rho.rows() != d || rho.cols() != d)
        throw LayoutError("Superoperator::apply: state dimension does not match layout");
    Eigen::Map<const Vector> v(rho.data(), rho.size());
    Vector out = mat * v;
    return Eigen::Map<const Matrix>(out.data(), d, d);
}

const char* to_string(SteadyStateBackend b) {
    return b == SteadyStateBackend::dense_lu ? "dense_lu" : "sparse_lu";
}

Superoperator liouvillian(const Operator& h, const std::vector<CollapseChannel>& channels) {
    const SpaceLayout layout = h.layout;
    const Eigen::Index d = layout.dim();

    const SparseMatrix id = sparse_identity(d);
    const SparseMatrix hs = h.mat.sparseView();
    const SparseMatrix ht = SparseMatrix(hs.transpose());

    std::vector<Triplet> trips;
    const Complex mi(0.0, -1.0);

    // Unitary part: vec(−i[H, ρ]) = −i (I ⊗ H − Hᵀ ⊗ I) vec(ρ)  (column stacking).
    add_kron(trips, id, hs, mi);
    add_kron(trips, ht, id, -mi);

    // Dissipators: (r/2)(2 o ρ o† − o†o ρ − ρ o†o)
    //   → (r/2)(2 conj(o) ⊗ o − I ⊗ o†o − (o†o)ᵀ ⊗ I) vec(ρ).
    for (const CollapseChannel& ch : channels) {
        if (!(ch.op.layout == layout))
            throw LayoutError("liouvillian: channel layout does not match Hamiltonian layout");
        if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate))
            throw ParameterError("liouvillian: channel rate must be finite and >= 0");
        if (ch.rate == 0.0) continue;

        const SparseMatrix o = ch.op.mat.sparseView();
        const SparseMatrix oc = o.conjugate();
        const Matrix ood_dense = ch.op.mat.adjoint() * ch.op.mat;
        const SparseMatrix ood = ood_dense.sparseView();
        const SparseMatrix oodt = SparseMatrix(ood.transpose());

        add_kron(trips, oc, o, Complex(ch.rate, 0.0));
        add_kron(trips, id, ood, Complex(-ch.rate / 2.0, 0.0));
        add_kron(trips, oodt, id, Complex(-ch.rate / 2.0, 0.0));
    }

    SparseMatrix l(d * d, d * d);
    l.setFromTriplets(trips.begin(), trips.end());
    l.makeCompressed();
    return Superoperator{layout, std::move(l)};
}

Superoperator liouvillian(const ModelParams& p) {
    const SpaceLayout layout = layout_of(p);
    return liouvillian(build_hamiltonian(p, layout), collapse_channels(p, layout));
}

double trace_preservation_residual(const Superoperator& l) {
    const Eigen::Index d = l.layout.dim();
    // Row vector vec(I)ᵀ L, accumulated from the rows of L that correspond to
    // diagonal entries of ρ (flat index k(d+1)).
    Vector acc = Vector::Zero(l.mat.cols());
    for (int k = 0; k < l.mat.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(l.mat, k); it; ++it)
            if (it.row() % (d + 1) == 0) acc(it.col()) += it.value();
    return acc.cwiseAbs().maxCoeff();
}

// ---- steady state ---------------------------------------------------------------

DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& opts) {
    const Eigen::Index d = l.layout.dim();
    const Eigen::Index n = l.mat.rows();

    // Stationarity system with the first row replaced by the trace constraint
    // Σ_k ρ_kk = 1.  Dropping one row of L is legitimate: trace preservation
    // makes its rows linearly dependent.
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(l.mat.nonZeros()) + static_cast<size_t>(d));
    for (int k = 0; k < l.mat.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(l.mat, k); it; ++it)
            if (it.row() != 0) trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (Eigen::Index k = 0; k < d; ++k)
        trips.emplace_back(0, static_cast<int>(k * (d + 1)), Complex(1.0, 0.0));

    Vector b = Vector::Zero(n);
    b(0) = 1.0;

    Vector v;
    if (opts.backend == SteadyStateBackend::sparse_lu) {
        SparseMatrix m(n, n);
        m.setFromTriplets(trips.begin(), trips.end());
        m.makeCompressed();
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> solver;
        solver.analyzePattern(m);
        solver.factorize(m);
        if (solver.info() != Eigen::Success)
            throw SingularSystemError(
                "steady_state: stationarity system is singular, no unique steady state "
                "(all decay rates zero?)");
        v = solver.solve(b);
        if (solver.info() != Eigen::Success)
            throw SingularSystemError("steady_state: sparse solve failed");
    } else {
        Matrix m = Matrix::Zero(n, n);
        for (const Triplet& t : trips) m(t.row(), t.col()) += t.value();
        Eigen::PartialPivLU<Matrix> lu(m);
        v = lu.solve(b);
    }

    if (!v.allFinite())
        throw SingularSystemError(
            "steady_state: solution is not finite, no unique steady state "
            "(all decay rates zero?)");

    const double residual = (l.mat * v).cwiseAbs().maxCoeff();
    if (!(residual <= opts.tol.steady_residual))
        throw ConvergenceError(format_residual("steady_state", residual, opts.tol.steady_residual),
                               residual);

    DensityMatrix rho(l.layout, Eigen::Map<const Matrix>(v.data(), d, d));
    rho.validate(opts.tol);
    return rho;
}

// ---- time evolution ----------------------------------------------------------------

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& l, double t_final,
                     double dt, const Tolerances& tol) {
    if (!(rho0.layout == l.layout))
        throw LayoutError("evolve: state and Liouvillian layouts differ");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("evolve: dt must be > 0");
    if (!(t_final >= dt) || !std::isfinite(t_final))
        throw ParameterError("evolve: t_final must be >= dt");

    const Eigen::Index d = l.layout.dim();
    Vector v = Eigen::Map<const Vector>(rho0.mat.data(), rho0.mat.size());

    const auto rk4_step = [&](double h) {
        const Vector k1 = l.mat * v;
        const Vector k2 = l.mat * Vector(v + (h / 2.0) * k1);
        const Vector k3 = l.mat * Vector(v + (h / 2.0) * k2);
        const Vector k4 = l.mat * Vector(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    const auto check_drift = [&]() {
        Eigen::Map<const Matrix> rho_view(v.data(), d, d);
        Complex tr(0.0, 0.0);
        for (Eigen::Index k = 0; k < d; ++k) tr += v(k * (d + 1));
        const double trace_drift = std::abs(tr - Complex(1.0, 0.0));
        if (!(trace_drift <= tol.evolve_drift))
            throw ConvergenceError(
                format_residual("evolve: trace drift (reduce dt)", trace_drift, tol.evolve_drift),
                trace_drift);
        const double herm_drift = (rho_view - rho_view.adjoint()).cwiseAbs().maxCoeff();
        if (!(herm_drift <= tol.evolve_drift))
            throw ConvergenceError(
                format_residual("evolve: Hermiticity drift (reduce dt)", herm_drift,
                                tol.evolve_drift),
                herm_drift);
    };

    const long n_full = static_cast<long>(std::floor(t_final / dt));
    const double remainder = t_final - static_cast<double>(n_full) * dt;
    for (long step = 0; step < n_full; ++step) {
        rk4_step(dt);
        check_drift();
    }
    if (remainder > 0.0) {
        rk4_step(remainder);
        check_drift();
    }

    DensityMatrix rho(l.layout, Eigen::Map<const Matrix>(v.data(), d, d));
    rho.validate(tol);
    return rho;
}

// ---- observables ------------------------------------------------------------------

Complex expectation(const DensityMatrix& rho, const Operator& a) {
    if (!(rho.layout == a.layout))
        throw LayoutError("expectation: state and operator layouts differ");
    // Tr(ρA) = Σ_ij ρ_ij A_ji without forming the product.
    return (rho.mat.transpose().cwiseProduct(a.mat)).sum();
}

std::vector<double> photon_distribution(const DensityMatrix& rho, Mode mode) {
    const SpaceLayout& lay = rho.layout;
    std::vector<double> p(static_cast<size_t>(lay.n_cut), 0.0);
    for (int m = 0; m < lay.n_cut; ++m)
        for (int n = 0; n < lay.n_cut; ++n)
            for (int s = 0; s < 2; ++s) {
                const int k = lay.index_of(m, n, s);
                const int level = (mode == Mode::cw) ? m : n;
                p[static_cast<size_t>(level)] += rho.mat(k, k).real();
            }
    for (double& v : p) v = std::max(v, 0.0);
    return p;
}

double mean_photon(const DensityMatrix& rho, Mode mode) {
    const std::vector<double> p = photon_distribution(rho, mode);
    double mean = 0.0;
    for (size_t m = 0; m < p.size(); ++m) mean += static_cast<double>(m) * p[m];
    return mean;
}

double g2_zero(const DensityMatrix& rho, Mode mode) {
    const std::vector<double> p = photon_distribution(rho, mode);
    double mean = 0.0, pairs = 0.0;
    for (size_t m = 0; m < p.size(); ++m) {
        const double md = static_cast<double>(m);
        mean += md * p[m];
        pairs += md * (md - 1.0) * p[m];
    }
    // ⟨a†a†aa⟩ / ⟨a†a⟩²; a numerically empty mode has no normalized correlation.
    if (!(mean > 1e-14))
        throw UndefinedCorrelationError("g2_zero: mean occupation vanishes");
    return pairs / (mean * mean);
}

std::vector<double> poisson_deviation(const std::vector<double>& p, double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw ParameterError("poisson_deviation: mean must be > 0");
    std::vector<double> ratios(p.size(), 0.0);
    for (size_t m = 0; m < p.size(); ++m) {
        const double log_pois =
            -mean + static_cast<double>(m) * std::log(mean) - std::lgamma(static_cast<double>(m) + 1.0);
        ratios[m] = p[m] / std::exp(log_pois);
    }
    return ratios;
}

}  // namespace bjc
