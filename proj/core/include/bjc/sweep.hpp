#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjc/dynamics.hpp"

namespace bjc {

// ---- sweep specification --------------------------------------------------------

// Parameters that can serve as a sweep axis.
enum class SweepParam { delta, g, chi, omega, kappa, gamma, j };

const char* to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& name);  // ConfigError on unknown

struct Axis {
    SweepParam param = SweepParam::delta;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    // Inclusive, evenly spaced grid: values()[0] == start, back() == stop.
    std::vector<double> values() const;
    double step() const { return (stop - start) / static_cast<double>(count - 1); }
};

enum class SweepMethod { numeric, analytic, both };

const char* to_string(SweepMethod m);
SweepMethod sweep_method_from_string(const std::string& name);  // ConfigError on unknown

// Observables a sweep can tabulate.  poisson_dev expands to two columns
// (relative deviation of P(m) from a Poisson law of equal mean, at m = 1 and
// m = 2).
enum class Observable { g2_cw, g2_analytic, mean_n_cw, p1, p2, poisson_dev };

const char* to_string(Observable o);
Observable observable_from_string(const std::string& name);  // ConfigError on unknown

struct SweepSpec {
    ModelParams base;
    Axis axis1;
    std::optional<Axis> axis2;

    // Empty selects the defaults for the method: numeric → {g2_cw, mean_n_cw,
    // p1, p2}; analytic → {g2_analytic}; both → {g2_cw, g2_analytic,
    // mean_n_cw, p1, p2}.
    std::vector<Observable> observables;

    SweepMethod method = SweepMethod::numeric;
    int jobs = 1;
    SteadyStateOptions solve{};

    // Throws SweepError / ParameterError on an inconsistent specification.
    // The analytic method must be valid across the whole grid: gamma == kappa,
    // g > 0, j == 0 (checked against the axes as well as the base values).
    void validate() const;

    // The requested observables, or the method's defaults when empty.
    std::vector<Observable> effective_observables() const;
};

// ---- sweep results ----------------------------------------------------------------

struct SweepRow {
    double x1 = 0.0;
    std::optional<double> x2;
    std::vector<double> values;  // aligned with SweepTable::columns; NaN when failed
    bool failed = false;
    std::string error;  // failure note for NaN rows
};

struct SweepTable {
    SweepSpec spec;
    std::vector<std::string> columns;  // observable columns (axis columns precede them on disk)
    std::vector<SweepRow> rows;        // lexicographic in (axis1, axis2) indices
    int failures = 0;

    // Steady-state residual statistics over successful numeric evaluations.
    double max_residual = 0.0;
    double mean_residual = 0.0;

    std::string version;  // tool version that produced the table
};

// Evaluate every grid point independently (numeric points via the master
// equation, analytic points via the amplitude solution).  Individual point
// failures are recorded in-row as NaN; more than 50% failures aborts with
// SweepError.  Deterministic: identical specs produce identical tables
// regardless of worker count.
SweepTable run_sweep(const SweepSpec& spec);

// ---- post-processing ---------------------------------------------------------------

struct Minimum {
    double axis_value = 0.0;
    double value = 0.0;
    std::size_t index = 0;
};

// Interior strict local minima of one column of a 1D sweep, in axis order.
// A plateau flanked by larger values reports its leftmost point (ties break
// toward the smaller axis value); endpoints are never reported; NaN rows
// never participate.  Monotone data yields an empty list.
std::vector<Minimum> find_minima(const SweepTable& table, const std::string& column);

enum class ContourScale { log10, linear };

struct ContourPoint {
    double x = 0.0;  // axis1 value
    double y = 0.0;  // axis2 value
};
using Polyline = std::vector<ContourPoint>;

// Marching-squares iso-contour of one column of a 2D sweep at the given
// level.  With ContourScale::log10 (the default, matching logarithmic color
// scales) the crossing positions are interpolated in log10 of the data, and
// the level must be > 0.  Cells touching NaN (or non-positive values under
// log scaling) are skipped.  A level outside the data range yields an empty
// set.  Segments are chained into ordered polylines.
std::vector<Polyline> extract_contour(const SweepTable& table, const std::string& column,
                                      double level, ContourScale scale = ContourScale::log10);

}  // namespace bjc
