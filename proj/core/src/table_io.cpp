#include "bjc/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "bjc/errors.hpp"

namespace bjc {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double round_trip_number(double v) {
    if (!std::isfinite(v)) return v;
    const std::string s = format_number(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

const char* to_string(TableFormat f) { return f == TableFormat::json ? "json" : "csv"; }

TableFormat table_format_from_string(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

namespace {

nlohmann::json axis_to_json(const Axis& a) {
    return {{"param", to_string(a.param)}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}};
}

// Row values with the serialization precision applied; NaN → null.
nlohmann::json row_to_json(const SweepRow& row, bool two_axes) {
    nlohmann::json out = nlohmann::json::array();
    out.push_back(round_trip_number(row.x1));
    if (two_axes) out.push_back(round_trip_number(*row.x2));
    for (double v : row.values) {
        if (std::isnan(v))
            out.push_back(nullptr);
        else
            out.push_back(round_trip_number(v));
    }
    return out;
}

}  // namespace

nlohmann::json spec_to_json(const SweepSpec& spec) {
    nlohmann::json obs = nlohmann::json::array();
    for (Observable o : spec.effective_observables()) obs.push_back(to_string(o));

    nlohmann::json j{
        {"params",
         {{"delta", spec.base.delta},
          {"g", spec.base.g},
          {"chi", spec.base.chi},
          {"omega", spec.base.omega},
          {"kappa", spec.base.kappa},
          {"gamma", spec.base.gamma},
          {"j", spec.base.j},
          {"n_cut", spec.base.n_cut}}},
        {"axis1", axis_to_json(spec.axis1)},
        {"axis2", spec.axis2 ? axis_to_json(*spec.axis2) : nlohmann::json(nullptr)},
        {"method", to_string(spec.method)},
        {"observables", obs},
        {"jobs", spec.jobs},
        {"solver",
         {{"backend", to_string(spec.solve.backend)},
          {"steady_residual", spec.solve.tol.steady_residual}}},
    };
    return j;
}

std::string table_to_csv(const SweepTable& table, const nlohmann::json& provenance) {
    std::string out;

    // Header first, so the file loads directly into tabular tools.
    out += to_string(table.spec.axis1.param);
    if (table.spec.axis2) {
        out += ',';
        out += to_string(table.spec.axis2->param);
    }
    for (const auto& c : table.columns) {
        out += ',';
        out += c;
    }
    out += '\n';

    // Metadata as comment lines between the header and the data.
    out += "# version=" + table.version + "\n";
    out += "# points=" + std::to_string(table.rows.size()) +
           " failures=" + std::to_string(table.failures) + "\n";
    out += "# max_residual=" + format_number(table.max_residual) +
           " mean_residual=" + format_number(table.mean_residual) + "\n";
    out += "# spec=" + spec_to_json(table.spec).dump() + "\n";
    if (!provenance.is_null()) out += "# config=" + provenance.dump() + "\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].failed)
            out += "# error row=" + std::to_string(i) + ": " + table.rows[i].error + "\n";
    }

    for (const auto& row : table.rows) {
        out += format_number(row.x1);
        if (row.x2) {
            out += ',';
            out += format_number(*row.x2);
        }
        for (double v : row.values) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json table_to_json(const SweepTable& table, const nlohmann::json& provenance) {
    nlohmann::json columns = nlohmann::json::array();
    columns.push_back(to_string(table.spec.axis1.param));
    if (table.spec.axis2) columns.push_back(to_string(table.spec.axis2->param));
    for (const auto& c : table.columns) columns.push_back(c);

    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json errors = nlohmann::json::array();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        rows.push_back(row_to_json(table.rows[i], table.spec.axis2.has_value()));
        if (table.rows[i].failed)
            errors.push_back({{"row", i}, {"message", table.rows[i].error}});
    }

    nlohmann::json j{
        {"version", table.version},
        {"spec", spec_to_json(table.spec)},
        {"columns", columns},
        {"rows", rows},
        {"failures", table.failures},
        {"residual",
         {{"max", round_trip_number(table.max_residual)},
          {"mean", round_trip_number(table.mean_residual)}}},
    };
    if (!errors.empty()) j["errors"] = errors;
    if (!provenance.is_null()) j["config"] = provenance;
    return j;
}

void write_table(const SweepTable& table, const std::filesystem::path& path, TableFormat format,
                 const nlohmann::json& provenance) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open output file '" + path.string() + "'");
    if (format == TableFormat::csv) {
        f << table_to_csv(table, provenance);
    } else {
        f << table_to_json(table, provenance).dump(2) << '\n';
    }
    if (!f.good()) throw ConfigError("failed writing output file '" + path.string() + "'");
}

}  // namespace bjc
