#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "bjc/errors.hpp"

namespace bjc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ---- composite-space layout ------------------------------------------------
//
// The model lives on   (clockwise mode) ⊗ (counter-clockwise mode) ⊗ (atom),
// with both travelling-wave modes truncated to Fock states |0⟩ ... |n_cut-1⟩
// and a two-level atom {|g⟩, |e⟩}.  The composite basis is ordered with the
// atom index fastest and the clockwise mode slowest:
//
//     index(m, n, s) = (m * n_cut + n) * 2 + s
//
// where m is the clockwise photon number, n the counter-clockwise photon
// number and s = 0 (ground) or 1 (excited).  Every operator and state in the
// library carries its layout so that mixed-layout arithmetic is rejected
// instead of silently producing nonsense.

enum class Slot { cw = 0, ccw = 1, atom = 2 };

// The two cavity modes, used when selecting which mode an observable refers
// to.  Slot::atom is deliberately not representable here.
enum class Mode { cw = 0, ccw = 1 };

inline Slot to_slot(Mode m) { return m == Mode::cw ? Slot::cw : Slot::ccw; }

struct SpaceLayout {
    int n_cut = 0;  // Fock levels per travelling-wave mode (dimension, not max photon number)

    explicit SpaceLayout(int n_cut_) : n_cut(n_cut_) {
        if (n_cut < 2) throw ParameterError("SpaceLayout: n_cut must be >= 2");
    }

    int mode_dim() const noexcept { return n_cut; }
    int atom_dim() const noexcept { return 2; }
    int dim() const noexcept { return n_cut * n_cut * 2; }

    int slot_dim(Slot s) const noexcept { return s == Slot::atom ? 2 : n_cut; }

    // Flat index of the product basis state |m⟩_cw |n⟩_ccw |s⟩_atom.
    int index_of(int m, int n, int s) const {
        if (m < 0 || m >= n_cut || n < 0 || n >= n_cut || s < 0 || s > 1)
            throw ParameterError("SpaceLayout::index_of: subsystem index out of range");
        return (m * n_cut + n) * 2 + s;
    }

    friend bool operator==(const SpaceLayout&, const SpaceLayout&) = default;
};

// ---- operators ---------------------------------------------------------------

// A dense operator on the composite space, tagged with the layout it was
// built for.  Arithmetic between operators of different layouts throws
// LayoutError.
struct Operator {
    SpaceLayout layout;
    Matrix mat;

    Operator(SpaceLayout layout_, Matrix mat_) : layout(layout_), mat(std::move(mat_)) {
        if (mat.rows() != layout.dim() || mat.cols() != layout.dim())
            throw LayoutError("Operator: matrix dimension does not match layout");
    }

    static Operator identity(SpaceLayout layout) {
        return Operator(layout, Matrix::Identity(layout.dim(), layout.dim()));
    }
    static Operator zero(SpaceLayout layout) {
        return Operator(layout, Matrix::Zero(layout.dim(), layout.dim()));
    }

    Operator adjoint() const { return Operator(layout, mat.adjoint()); }

    bool is_hermitian(double tol = 1e-12) const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    friend Operator operator+(const Operator& a, const Operator& b) {
        check_same_layout(a, b, "operator+");
        return Operator(a.layout, a.mat + b.mat);
    }
    friend Operator operator-(const Operator& a, const Operator& b) {
        check_same_layout(a, b, "operator-");
        return Operator(a.layout, a.mat - b.mat);
    }
    friend Operator operator*(const Operator& a, const Operator& b) {
        check_same_layout(a, b, "operator*");
        return Operator(a.layout, a.mat * b.mat);
    }
    friend Operator operator*(Complex c, const Operator& a) { return Operator(a.layout, c * a.mat); }
    friend Operator operator*(double c, const Operator& a) { return Operator(a.layout, c * a.mat); }
    friend Operator operator-(const Operator& a) { return Operator(a.layout, -a.mat); }

private:
    static void check_same_layout(const Operator& a, const Operator& b, const char* who) {
        if (!(a.layout == b.layout))
            throw LayoutError(std::string(who) + ": operands built over different layouts");
    }
};

// A B − B A, as a convenience for tests and diagnostics.
Operator commutator(const Operator& a, const Operator& b);

// ---- single-subsystem building blocks ---------------------------------------

// Annihilation operator on a single Fock space of the given dimension:
// ⟨m-1| a |m⟩ = sqrt(m).  The top Fock level has no state above it, which is
// what makes [a, a†] deviate from the identity in its last diagonal entry.
Matrix fock_annihilation(int dim);

// Photon-number operator a†a on a single Fock space.
Matrix fock_number(int dim);

// Atomic lowering operator σ⁻ = |g⟩⟨e| in the basis {|g⟩, |e⟩}.
Matrix atom_lowering();

// Atomic excitation projector σ⁺σ⁻ = |e⟩⟨e|.
Matrix atom_excited_projector();

// Lift a single-subsystem operator into the composite space, acting as the
// identity on the other two subsystems.  The matrix dimension must equal the
// slot's dimension under the given layout.
Operator embed(const Matrix& op, Slot slot, SpaceLayout layout);

// Kronecker product with the composite ordering conventions of this library
// (left factor is the slower index).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace bjc
