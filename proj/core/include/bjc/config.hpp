#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bjc/sweep.hpp"
#include "bjc/table_io.hpp"

namespace bjc {

// A complete, serializable description of one tool run: model parameters,
// sweep axes, method, output destination and tolerance overrides.  Loaded
// from a JSON config file, overridden by command-line flags, and embedded
// verbatim in every output file.
struct RunConfig {
    ModelParams params{};
    std::optional<Axis> axis1;
    std::optional<Axis> axis2;
    SweepMethod method = SweepMethod::numeric;
    std::vector<Observable> observables;  // empty selects the method's default set
    TableFormat format = TableFormat::csv;
    std::string out;  // output path; empty writes to stdout
    int jobs = 1;
    std::map<std::string, double> tolerances;  // overrides by name, e.g. "steady_residual"

    // Library defaults with the overrides applied.
    Tolerances resolved_tolerances() const;

    nlohmann::json to_json() const;

    // Strict parse: unknown keys anywhere, wrong types, malformed axes and
    // unknown tolerance names all throw ConfigError naming the offender.
    // Keys present in `j` override the corresponding fields of `base`.
    static RunConfig from_json(const nlohmann::json& j, RunConfig base);
    static RunConfig from_json(const nlohmann::json& j);
};

// Parse "start:stop:count" (inclusive bounds, count grid points).
Axis parse_range(const std::string& text, SweepParam param);

// Assemble the sweep the config describes.  Requires axis1.
SweepSpec to_sweep_spec(const RunConfig& config);

}  // namespace bjc
