#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bjc/sweep.hpp"

namespace bjc {

// Options for the built-in oracle/invariant suite.  The defaults match the
// reference operating point (g = 1.33κ, χ = 8κ, Ω = 0.1κ, γ = κ, Δ = 0).
struct CheckOptions {
    ModelParams params{0.0, 1.33, 8.0, 0.1, 1.0, 1.0, 0.0, 5};

    // numeric: run only master-equation checks; analytic: require the
    // amplitude-solution checks (an unsupported regime is then a failure,
    // not a skip); both: run everything that applies.
    SweepMethod method = SweepMethod::both;

    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;  // randomized-grid seed
};

enum class CheckStatus { pass, fail, skip };

struct CheckLine {
    std::string name;
    CheckStatus status = CheckStatus::skip;
    std::string detail;  // measured values, or the error that failed the check
};

struct CheckReport {
    std::vector<CheckLine> lines;
    bool all_pass() const;  // true iff no line failed (skips do not fail)
    std::string render() const;  // PASS/FAIL table, one line per check
};

// Run the full self-check suite: coherent-state oracle, Liouvillian and
// steady-state residuals, state invariants, amplitude-solution residuals,
// closed-form vs linear-solve agreement on a seeded randomized grid,
// time-evolution vs steady-state agreement, truncation convergence, the
// χ = 0 two-photon spectrum, and an analytic-vs-numeric cross-check at
// weak drive.  Individual check failures are reported, never thrown.
CheckReport run_self_checks(const CheckOptions& opts = {});

}  // namespace bjc
