#include "bjc/hilbert.hpp"

#include <cmath>

namespace bjc {

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Matrix fock_annihilation(int dim) {
    if (dim < 2) throw ParameterError("fock_annihilation: dimension must be >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
    return a;
}

Matrix fock_number(int dim) {
    if (dim < 2) throw ParameterError("fock_number: dimension must be >= 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) n(m, m) = static_cast<double>(m);
    return n;
}

Matrix atom_lowering() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;  // |g⟩⟨e|
    return s;
}

Matrix atom_excited_projector() {
    Matrix p = Matrix::Zero(2, 2);
    p(1, 1) = 1.0;
    return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator embed(const Matrix& op, Slot slot, SpaceLayout layout) {
    const int d = layout.slot_dim(slot);
    if (op.rows() != d || op.cols() != d)
        throw LayoutError("embed: operator dimension does not match slot dimension");

    const Matrix id_mode = Matrix::Identity(layout.mode_dim(), layout.mode_dim());
    const Matrix id_atom = Matrix::Identity(2, 2);

    // Composite order: cw ⊗ ccw ⊗ atom (atom index fastest).
    switch (slot) {
        case Slot::cw: return Operator(layout, kron(kron(op, id_mode), id_atom));
        case Slot::ccw: return Operator(layout, kron(kron(id_mode, op), id_atom));
        case Slot::atom: return Operator(layout, kron(kron(id_mode, id_mode), op));
    }
    throw ParameterError("embed: invalid slot");
}

}  // namespace bjc
