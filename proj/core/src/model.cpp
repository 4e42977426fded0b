#include "bjc/model.hpp"

#include <cmath>

namespace bjc {

void ModelParams::validate() const {
    if (!(n_cut >= 2)) throw ParameterError("ModelParams: n_cut must be >= 2");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw ParameterError("ModelParams: kappa must be finite and > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ParameterError("ModelParams: gamma must be finite and >= 0");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw ParameterError("ModelParams: g must be finite and >= 0");
    if (!(chi >= 0.0) || !std::isfinite(chi))
        throw ParameterError("ModelParams: chi must be finite and >= 0");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ParameterError("ModelParams: omega must be finite and >= 0");
    for (double v : {delta, j})
        if (!std::isfinite(v)) throw ParameterError("ModelParams: parameters must be finite");
}

Operator build_hamiltonian(const ModelParams& p, SpaceLayout layout) {
    p.validate();

    const Matrix a = fock_annihilation(layout.mode_dim());
    const Matrix ad = a.adjoint();
    const Matrix num = fock_number(layout.mode_dim());
    const Matrix kerr = ad * ad * a * a;  // a†a†aa = n(n-1)

    const Operator a1 = embed(a, Slot::cw, layout);
    const Operator a2 = embed(a, Slot::ccw, layout);
    const Operator n1 = embed(num, Slot::cw, layout);
    const Operator n2 = embed(num, Slot::ccw, layout);
    const Operator k1 = embed(kerr, Slot::cw, layout);
    const Operator k2 = embed(kerr, Slot::ccw, layout);
    const Operator sm = embed(atom_lowering(), Slot::atom, layout);
    const Operator pe = embed(atom_excited_projector(), Slot::atom, layout);

    const Operator a1d = a1.adjoint();
    const Operator a2d = a2.adjoint();
    const Operator sp = sm.adjoint();

    Operator h = p.delta * (n1 + n2 + pe);
    h = h + p.chi * (k1 + k2);
    h = h + p.g * (a1d * sm + a1 * sp);
    h = h + p.g * (a2d * sm + a2 * sp);
    h = h + p.omega * (a1d + a1);
    h = h + p.j * (a1d * a2 + a2d * a1);
    return h;
}

Operator effective_hamiltonian(const ModelParams& p, SpaceLayout layout) {
    const Operator h = build_hamiltonian(p, layout);
    const Operator n1 = embed(fock_number(layout.mode_dim()), Slot::cw, layout);
    const Operator n2 = embed(fock_number(layout.mode_dim()), Slot::ccw, layout);
    const Operator pe = embed(atom_excited_projector(), Slot::atom, layout);
    const Complex mi(0.0, -1.0);
    return h + mi * (0.5 * p.kappa * (n1 + n2) + 0.5 * p.gamma * pe);
}

std::vector<CollapseChannel> collapse_channels(const ModelParams& p, SpaceLayout layout) {
    p.validate();
    const Matrix a = fock_annihilation(layout.mode_dim());
    std::vector<CollapseChannel> channels;
    channels.push_back({embed(a, Slot::cw, layout), p.kappa});
    channels.push_back({embed(a, Slot::ccw, layout), p.kappa});
    channels.push_back({embed(atom_lowering(), Slot::atom, layout), p.gamma});
    return channels;
}

}  // namespace bjc
