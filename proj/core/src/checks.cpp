#include "bjc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Eigenvalues>

#include "bjc/analytic.hpp"
#include "bjc/dynamics.hpp"
#include "bjc/errors.hpp"
#include "bjc/spectra.hpp"
#include "bjc/table_io.hpp"

namespace bjc {

namespace {

// Uniform doubles built from raw mt19937_64 words.  The engine's output
// sequence is pinned by the standard (distributions are not), so seeded
// draws are identical on every platform.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : eng_(seed) {}
    double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 eng_;
};

std::string fmt(double v) { return format_number(v); }

// Largest magnitude among the excited amplitudes — the natural scale for
// entry-wise comparisons (individual components can interfere to zero).
double amplitude_scale(const AmplitudeSet& a) {
    double s = 0.0;
    for (const Complex& c : {a.c10g, a.c01g, a.c00e, a.c20g, a.c02g, a.c11g, a.c10e, a.c01e})
        s = std::max(s, std::abs(c));
    return s;
}

double amplitude_distance(const AmplitudeSet& a, const AmplitudeSet& b) {
    const Complex da[] = {a.c10g - b.c10g, a.c01g - b.c01g, a.c00e - b.c00e, a.c20g - b.c20g,
                          a.c02g - b.c02g, a.c11g - b.c11g, a.c10e - b.c10e, a.c01e - b.c01e};
    double d = 0.0;
    for (const Complex& c : da) d = std::max(d, std::abs(c));
    return d;
}

// Infinity norm of a sparse operator — a cheap spectral-radius bound used to
// pick a stable RK4 step.
double inf_norm(const SparseMatrix& m) {
    std::vector<double> row_sum(static_cast<std::size_t>(m.rows()), 0.0);
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            row_sum[static_cast<std::size_t>(it.row())] += std::abs(it.value());
    return row_sum.empty() ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
}

bool analytic_regime_ok(const ModelParams& p, std::string& why) {
    if (p.gamma != p.kappa) {
        why = "requires gamma == kappa (gamma = " + fmt(p.gamma) + ", kappa = " + fmt(p.kappa) + ")";
        return false;
    }
    if (!(p.g > 0.0)) {
        why = "requires g > 0";
        return false;
    }
    if (!(p.omega > 0.0)) {
        why = "requires omega > 0";
        return false;
    }
    if (p.j != 0.0) {
        why = "requires j == 0";
        return false;
    }
    return true;
}

double numeric_g2(const ModelParams& p) {
    const Superoperator l = liouvillian(p);
    const DensityMatrix rho = steady_state(l);
    return g2_zero(rho, Mode::cw);
}

template <typename Fn>
void add_check(CheckReport& report, const std::string& name, Fn&& body) {
    try {
        report.lines.push_back(body());
    } catch (const std::exception& e) {
        report.lines.push_back({name, CheckStatus::fail, e.what()});
    }
}

}  // namespace

bool CheckReport::all_pass() const {
    return std::none_of(lines.begin(), lines.end(),
                        [](const CheckLine& l) { return l.status == CheckStatus::fail; });
}

std::string CheckReport::render() const {
    std::size_t width = 0;
    for (const auto& l : lines) width = std::max(width, l.name.size());
    std::string out;
    for (const auto& l : lines) {
        const char* tag = l.status == CheckStatus::pass ? "PASS"
                          : l.status == CheckStatus::fail ? "FAIL"
                                                          : "SKIP";
        out += tag;
        out += "  ";
        out += l.name;
        out.append(width - l.name.size() + 2, ' ');
        out += l.detail;
        out += '\n';
    }
    return out;
}

CheckReport run_self_checks(const CheckOptions& opts) {
    CheckReport report;
    const ModelParams& base = opts.params;
    const bool run_numeric = opts.method != SweepMethod::analytic;
    const bool run_analytic = opts.method != SweepMethod::numeric;

    // Decoupled, linear cavity driven below saturation stays exactly
    // coherent: g²(0) = 1 and ⟨n⟩ = Ω² / (Δ² + κ²/4).  The 1e-8 target
    // needs head-room above the coherent tail, so this check raises the
    // truncation independently of the configured n_cut.
    add_check(report, "coherent_state_g2", [&]() -> CheckLine {
        if (!run_numeric) return {"coherent_state_g2", CheckStatus::skip, "method analytic"};
        ModelParams p = base;
        p.g = 0.0;
        p.chi = 0.0;
        p.j = 0.0;
        p.n_cut = std::max(p.n_cut, 9);
        // The raised truncation is adequate for drives up to 0.1; stronger
        // configured drives are clamped so the oracle stays exact.
        if (!(p.omega > 0.0) || p.omega > 0.1) p.omega = 0.1;
        const Superoperator l = liouvillian(p);
        const DensityMatrix rho = steady_state(l);
        const double g2 = g2_zero(rho, Mode::cw);
        const double mean = mean_photon(rho, Mode::cw);
        const double expected = p.omega * p.omega / (p.delta * p.delta + 0.25 * p.kappa * p.kappa);
        const bool ok = std::abs(g2 - 1.0) <= 1e-8 &&
                        std::abs(mean - expected) <= 1e-6 * std::max(expected, 1e-3);
        return {"coherent_state_g2", ok ? CheckStatus::pass : CheckStatus::fail,
                "g2(0) = " + fmt(g2) + " (target 1 within 1e-8), <n> = " + fmt(mean) +
                    " vs coherent " + fmt(expected)};
    });

    add_check(report, "liouvillian_trace_preservation", [&]() -> CheckLine {
        if (!run_numeric)
            return {"liouvillian_trace_preservation", CheckStatus::skip, "method analytic"};
        const double r = trace_preservation_residual(liouvillian(base));
        return {"liouvillian_trace_preservation",
                r <= 1e-10 ? CheckStatus::pass : CheckStatus::fail,
                "max |1^T L| column residual = " + fmt(r) + " (tolerance 1e-10)"};
    });

    add_check(report, "steady_state_residual", [&]() -> CheckLine {
        if (!run_numeric) return {"steady_state_residual", CheckStatus::skip, "method analytic"};
        const Superoperator l = liouvillian(base);
        const DensityMatrix rho = steady_state(l);
        const double r = l.apply(rho.mat).cwiseAbs().maxCoeff();
        return {"steady_state_residual", r <= 1e-10 ? CheckStatus::pass : CheckStatus::fail,
                "max |L rho| = " + fmt(r) + " (tolerance 1e-10)"};
    });

    add_check(report, "state_invariants", [&]() -> CheckLine {
        if (!run_numeric) return {"state_invariants", CheckStatus::skip, "method analytic"};
        const DensityMatrix rho = steady_state(liouvillian(base));
        rho.validate();
        const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
        const double herm = (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
        const double min_eig =
            Eigen::SelfAdjointEigenSolver<Matrix>(rho.mat, Eigen::EigenvaluesOnly)
                .eigenvalues()
                .minCoeff();
        return {"state_invariants", CheckStatus::pass,
                "|tr-1| = " + fmt(trace_err) + ", max |rho-rho^+| = " + fmt(herm) +
                    ", min eigenvalue = " + fmt(min_eig)};
    });

    add_check(report, "amplitude_solve_residual", [&]() -> CheckLine {
        if (!run_analytic)
            return {"amplitude_solve_residual", CheckStatus::skip, "method numeric"};
        std::string why;
        if (!analytic_regime_ok(base, why) && opts.method != SweepMethod::analytic)
            return {"amplitude_solve_residual", CheckStatus::skip, why};
        // In analytic mode an unsupported regime must surface as a failure.
        const AmplitudeSet amp = steady_amplitudes(base);
        const double r = effective_hamiltonian_ode_residual(amp, base);
        return {"amplitude_solve_residual", r <= 1e-10 ? CheckStatus::pass : CheckStatus::fail,
                "max steady-equation residual = " + fmt(r) +
                    " (tolerance 1e-10; linear solve self-checks at 1e-10)"};
    });

    add_check(report, "closed_form_agreement", [&]() -> CheckLine {
        if (!run_analytic) return {"closed_form_agreement", CheckStatus::skip, "method numeric"};
        UniformRng rng(opts.seed);
        double worst = 0.0;
        ModelParams worst_p;
        for (int i = 0; i < 100; ++i) {
            ModelParams p;
            p.kappa = 1.0;
            p.gamma = 1.0;
            p.j = 0.0;
            p.n_cut = base.n_cut;
            p.omega = 0.01;
            p.g = rng.in(0.1, 3.0);
            p.chi = rng.in(0.0, 10.0);
            p.delta = rng.in(-4.0, 4.0);
            const AmplitudeSet lin = steady_amplitudes(p);
            const AmplitudeSet cf = closed_form_amplitudes(p);
            const double rel = amplitude_distance(lin, cf) / amplitude_scale(lin);
            if (rel > worst) {
                worst = rel;
                worst_p = p;
            }
        }
        return {"closed_form_agreement", worst <= 1e-8 ? CheckStatus::pass : CheckStatus::fail,
                "worst relative disagreement over 100 draws = " + fmt(worst) +
                    " (tolerance 1e-8; worst at delta = " + fmt(worst_p.delta) +
                    ", g = " + fmt(worst_p.g) + ", chi = " + fmt(worst_p.chi) + ")"};
    });

    add_check(report, "evolve_vs_steady", [&]() -> CheckLine {
        if (!run_numeric) return {"evolve_vs_steady", CheckStatus::skip, "method analytic"};
        const Superoperator l = liouvillian(base);
        const DensityMatrix rho_ss = steady_state(l);
        const double t_final = 40.0 / base.kappa;
        const double dt = std::min(1.5 / inf_norm(l.mat), t_final);
        const DensityMatrix rho_t =
            evolve(DensityMatrix::vacuum(layout_of(base)), l, t_final, dt);
        const double diff = (rho_t.mat - rho_ss.mat).cwiseAbs().maxCoeff();
        return {"evolve_vs_steady", diff <= 1e-6 ? CheckStatus::pass : CheckStatus::fail,
                "max |rho(T) - rho_ss| = " + fmt(diff) + " at T = " + fmt(t_final) +
                    ", dt = " + fmt(dt) + " (tolerance 1e-6)"};
    });

    add_check(report, "truncation_convergence", [&]() -> CheckLine {
        if (!run_numeric) return {"truncation_convergence", CheckStatus::skip, "method analytic"};
        ModelParams larger = base;
        larger.n_cut += 1;
        const double a = numeric_g2(base);
        const double b = numeric_g2(larger);
        const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
        return {"truncation_convergence", rel < 1e-3 ? CheckStatus::pass : CheckStatus::fail,
                "g2(0) = " + fmt(a) + " at n_cut = " + std::to_string(base.n_cut) + " vs " +
                    fmt(b) + " at n_cut = " + std::to_string(larger.n_cut) +
                    ", relative difference = " + fmt(rel) + " (tolerance 1e-3)"};
    });

    add_check(report, "two_photon_spectrum", [&]() -> CheckLine {
        const double g = base.g > 0.0 ? base.g : 1.33;
        const auto spec = two_photon_eigenvalues(g, 0.0);
        const double s2 = std::sqrt(2.0) * g;
        const double expected[] = {-2.0 * g, -s2, 0.0, s2, 2.0 * g};
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            worst = std::max(worst, std::abs(spec.levels[static_cast<std::size_t>(i)] - expected[i]));
        return {"two_photon_spectrum", worst <= 1e-10 ? CheckStatus::pass : CheckStatus::fail,
                "chi = 0 levels vs {-2g, -sqrt(2)g, 0, sqrt(2)g, 2g}: max deviation = " +
                    fmt(worst) + " at g = " + fmt(g)};
    });

    add_check(report, "analytic_numeric_g2", [&]() -> CheckLine {
        if (opts.method != SweepMethod::both)
            return {"analytic_numeric_g2", CheckStatus::skip, "requires method both"};
        ModelParams p = base;
        p.omega = 0.01;  // deep weak-drive regime
        std::string why;
        if (!analytic_regime_ok(p, why)) return {"analytic_numeric_g2", CheckStatus::skip, why};
        double worst = 0.0;
        double worst_delta = 0.0;
        for (double delta : {-2.0, 0.0, 2.0}) {
            p.delta = delta;
            const double num = numeric_g2(p);
            const double ana = analytic_g2(steady_amplitudes(p)).approximate;
            const double rel = std::abs(num / ana - 1.0);
            if (rel > worst) {
                worst = rel;
                worst_delta = delta;
            }
        }
        return {"analytic_numeric_g2", worst <= 0.02 ? CheckStatus::pass : CheckStatus::fail,
                "worst |numeric/analytic - 1| = " + fmt(worst) + " at delta = " + fmt(worst_delta) +
                    " over delta in {-2, 0, 2}, omega = 0.01 (tolerance 2%)"};
    });

    return report;
}

}  // namespace bjc
