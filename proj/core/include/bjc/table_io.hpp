#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "bjc/sweep.hpp"

namespace bjc {

// Format one double with 12 significant digits (shortest equivalent form),
// the precision used by every serialized table.  NaN renders as "nan".
std::string format_number(double v);

// format_number, parsed back: the value a reader of a serialized table sees.
double round_trip_number(double v);

enum class TableFormat { csv, json };

const char* to_string(TableFormat f);
TableFormat table_format_from_string(const std::string& name);  // ConfigError on unknown

// JSON echo of a sweep specification (parameters, axes, method, observables,
// worker count, solver settings); embedded in serialized tables so a result
// file is reproducible from its own metadata.
nlohmann::json spec_to_json(const SweepSpec& spec);

// CSV rendering.  Line 1 is the header (axis columns first, then observable
// columns); '#'-prefixed comment lines carrying version, residual statistics
// and the run configuration follow; then one line per grid point in row
// order.  `provenance` (when non-null) is embedded verbatim as a comment; the
// CLI passes its resolved RunConfig.  Identical tables render byte-identically.
std::string table_to_csv(const SweepTable& table, const nlohmann::json& provenance = {});

// JSON rendering with the same content: metadata, columns, and row arrays
// ([axis values..., observable values...]).  NaN entries appear as null.
nlohmann::json table_to_json(const SweepTable& table, const nlohmann::json& provenance = {});

// Serialize to `path` in the given format (parent directories are created).
void write_table(const SweepTable& table, const std::filesystem::path& path, TableFormat format,
                 const nlohmann::json& provenance = {});

}  // namespace bjc
