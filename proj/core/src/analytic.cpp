#include "bjc/analytic.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace bjc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_weak_drive_regime(const ModelParams& p) {
    p.validate();
    if (p.gamma != p.kappa)
        throw ParameterError(
            "weak-drive amplitudes: unsupported regime gamma != kappa; "
            "use the numerical master-equation path for unequal rates");
    if (p.j != 0.0)
        throw ParameterError(
            "weak-drive amplitudes: unsupported regime j != 0; "
            "use the numerical master-equation path for coupled modes");
    if (!(p.g > 0.0))
        throw ParameterError("weak-drive amplitudes: g must be > 0");
    if (!(p.omega > 0.0))
        throw ParameterError("weak-drive amplitudes: omega must be > 0");
}

// Fill the auxiliary combinations shared by the closed-form expressions.
void fill_aux(AmplitudeSet& s, const ModelParams& p) {
    const Complex d = s.delta_tilde;
    const double g2 = p.g * p.g;
    const Complex a = 2.0 * (d + p.chi);
    const Complex q = 2.0 * (g2 - 2.0 * d * (d + p.chi));
    s.aux_a = a;
    s.aux_b = 2.0 * d - 2.0 * g2 / a;
    s.aux_q = q;
    s.aux_d = q * (d * d - 2.0 * g2) - 2.0 * d * (d * q / g2 + (d + p.chi)) * (2.0 * d * d - g2);
    s.aux_f = d * q * (d * d - 2.0 * g2) * (2.0 * (d + p.chi) + d * q / g2);
}

}  // namespace

AmplitudeSet steady_amplitudes(const ModelParams& p) {
    require_weak_drive_regime(p);

    const Complex d(p.delta, -p.kappa / 2.0);
    const double g = p.g, om = p.omega, chi = p.chi;

    // Unknown order: C10g, C01g, C00e, C20g, C02g, C11g, C10e, C01e.
    Eigen::Matrix<Complex, 8, 8> m = Eigen::Matrix<Complex, 8, 8>::Zero();
    Eigen::Matrix<Complex, 8, 1> rhs = Eigen::Matrix<Complex, 8, 1>::Zero();

    // Single-excitation manifold (the drive enters through C00g = 1).
    m(0, 0) = d;
    m(0, 2) = g;
    rhs(0) = -om;
    m(1, 1) = d;
    m(1, 2) = g;
    m(2, 0) = g;
    m(2, 1) = g;
    m(2, 2) = d;

    // Two-excitation manifold.
    m(3, 3) = 2.0 * (d + chi);
    m(3, 6) = kSqrt2 * g;
    m(3, 0) = kSqrt2 * om;
    m(4, 4) = 2.0 * (d + chi);
    m(4, 7) = kSqrt2 * g;
    m(5, 5) = 2.0 * d;
    m(5, 6) = g;
    m(5, 7) = g;
    m(5, 1) = om;
    m(6, 6) = 2.0 * d;
    m(6, 3) = kSqrt2 * g;
    m(6, 5) = g;
    m(6, 2) = om;
    m(7, 7) = 2.0 * d;
    m(7, 4) = kSqrt2 * g;
    m(7, 5) = g;

    const Eigen::Matrix<Complex, 8, 1> x = m.partialPivLu().solve(rhs);
    if (!x.allFinite())
        throw SingularSystemError("steady_amplitudes: amplitude system is singular");
    const double residual = (m * x - rhs).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10))
        throw ConvergenceError("steady_amplitudes: linear solve residual exceeds tolerance",
                               residual);

    AmplitudeSet s;
    s.delta_tilde = d;
    s.c10g = x(0);
    s.c01g = x(1);
    s.c00e = x(2);
    s.c20g = x(3);
    s.c02g = x(4);
    s.c11g = x(5);
    s.c10e = x(6);
    s.c01e = x(7);
    fill_aux(s, p);
    return s;
}

AmplitudeSet closed_form_amplitudes(const ModelParams& p) {
    require_weak_drive_regime(p);

    const Complex d(p.delta, -p.kappa / 2.0);
    const double g = p.g, om = p.omega, chi = p.chi;
    const double g2 = g * g;

    AmplitudeSet s;
    s.delta_tilde = d;
    fill_aux(s, p);
    const Complex a = s.aux_a, b = s.aux_b, dd = s.aux_d, f = s.aux_f;

    // Removable singularities cannot occur for real parameters with kappa > 0
    // (Δ̃ has a strictly negative imaginary part), but guard anyway.
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0 || std::abs(f) == 0.0)
        throw SingularSystemError("closed_form_amplitudes: singular auxiliary quantity");

    // Single-excitation manifold.
    const Complex pole1 = d * d - 2.0 * g2;
    s.c00e = g * om / pole1;
    s.c01g = -g2 * om / (d * pole1);
    s.c10g = -om * (d * d - g2) / (d * pole1);

    // Two-excitation manifold.
    s.c20g = (kSqrt2 / 2.0) * om * om * dd / f;
    s.c11g = (g2 * om * om / (2.0 * d * pole1)) *
             (4.0 * d * d + 3.0 * d * chi - 2.0 * g2) /
             (2.0 * d * d * d - 2.0 * d * g2 + 2.0 * d * d * chi - g2 * chi);
    s.c10e = -(g * s.c11g + om * (s.c00e - (2.0 * g / a) * s.c10g)) / b;
    s.c01e = -(g / b) * s.c11g;
    s.c02g = -(kSqrt2 * g / a) * s.c01e;
    return s;
}

AnalyticG2 analytic_g2(const AmplitudeSet& a) {
    const double p10g = std::norm(a.c10g);
    const double p20g = std::norm(a.c20g);
    if (!(p10g > 0.0))
        throw UndefinedCorrelationError("analytic_g2: single-photon amplitude vanishes");
    AnalyticG2 out;
    out.approximate = 2.0 * p20g / (p10g * p10g);
    const double occ = p10g + std::norm(a.c11g) + std::norm(a.c10e);
    out.full = 2.0 * p20g / (occ * occ);
    return out;
}

StrongCouplingLimits strong_coupling_limits(const ModelParams& p) {
    p.validate();
    const double om2 = p.omega * p.omega;
    const double k2 = p.kappa * p.kappa;
    const double chik = p.chi * p.chi + k2;
    StrongCouplingLimits lim;
    lim.p01g = om2 / k2;
    lim.p10g = om2 / k2;
    lim.p11g = om2 * om2 / (k2 * chik);
    lim.p20g = om2 * om2 / (2.0 * k2 * chik);
    return lim;
}

double effective_hamiltonian_ode_residual(const AmplitudeSet& a, const ModelParams& p) {
    p.validate();
    if (p.gamma != p.kappa)
        throw ParameterError(
            "effective_hamiltonian_ode_residual: amplitudes are derived for gamma == kappa");

    const Complex d1(p.delta, -p.kappa / 2.0);
    const Complex de(p.delta, -p.gamma / 2.0);
    const Complex d2(2.0 * p.delta, -(p.gamma + p.kappa) / 2.0);
    const double g = p.g, om = p.omega, chi = p.chi;

    // Time derivatives (times i) of every amplitude beyond the ground state,
    // written with the three manifold detunings kept distinct.
    const Complex rhs[] = {
        om * a.c00g + d1 * a.c10g + g * a.c00e,
        d1 * a.c01g + g * a.c00e,
        g * a.c10g + g * a.c01g + de * a.c00e,
        kSqrt2 * om * a.c10g + 2.0 * (d1 + chi) * a.c20g + kSqrt2 * g * a.c10e,
        2.0 * (d1 + chi) * a.c02g + kSqrt2 * g * a.c01e,
        om * a.c01g + 2.0 * d1 * a.c11g + g * a.c10e + g * a.c01e,
        om * a.c00e + kSqrt2 * g * a.c20g + g * a.c11g + d2 * a.c10e,
        kSqrt2 * g * a.c02g + g * a.c11g + d2 * a.c01e,
    };
    double max_mod = 0.0;
    for (const Complex& r : rhs) max_mod = std::max(max_mod, std::abs(r));
    return max_mod;
}

}  // namespace bjc
