// bjc — steady-state photon statistics of a driven bimodal cavity coupled to
// a two-level atom, with Kerr nonlinearity.
//
// Subcommands:
//   sweep     parameter sweeps of g²(0) and photon statistics (1D or 2D)
//   spectrum  dressed-state eigenvalue curves of the two-photon subspace
//   check     built-in oracle/invariant suite
//
// All rates are in units of the cavity linewidth: kappa is fixed to 1.
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "bjc/checks.hpp"
#include "bjc/config.hpp"
#include "bjc/errors.hpp"
#include "bjc/spectra.hpp"
#include "bjc/table_io.hpp"
#include "bjc/version.hpp"

namespace {

// A problem with flags or configuration, as opposed to a failed computation.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::optional<double> delta, g, chi, omega, gamma, j;
    std::optional<int> n_cut, jobs;
    std::optional<std::string> method, format, out;
    std::string config_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_output) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override file values)");
    cmd->add_option("--delta", f.delta, "drive-cavity detuning Delta (units of kappa)");
    cmd->add_option("--g", f.g, "atom-mode coupling g");
    cmd->add_option("--chi", f.chi, "Kerr nonlinearity chi");
    cmd->add_option("--omega", f.omega, "drive amplitude Omega");
    cmd->add_option("--gamma", f.gamma, "atomic decay rate gamma");
    cmd->add_option("--j", f.j, "inter-mode coupling J");
    cmd->add_option("--n-cut", f.n_cut, "Fock truncation per mode");
    cmd->add_option("--method", f.method, "numeric | analytic | both");
    if (with_output) {
        cmd->add_option("--jobs", f.jobs, "worker threads for grid evaluation");
        cmd->add_option("--format", f.format, "output format: csv | json");
        cmd->add_option("--out", f.out, "output path (default: table to stdout)");
    }
}

// Config file, then flags on top.  `seed` carries per-command defaults.
bjc::RunConfig merge_config(const CommonFlags& f, bjc::RunConfig seed) {
    bjc::RunConfig cfg = std::move(seed);
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw UsageError("cannot open config file '" + f.config_path + "'");
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file '" + f.config_path + "': " + e.what());
        }
        cfg = bjc::RunConfig::from_json(parsed, std::move(cfg));
    }
    if (f.delta) cfg.params.delta = *f.delta;
    if (f.g) cfg.params.g = *f.g;
    if (f.chi) cfg.params.chi = *f.chi;
    if (f.omega) cfg.params.omega = *f.omega;
    if (f.gamma) cfg.params.gamma = *f.gamma;
    if (f.j) cfg.params.j = *f.j;
    if (f.n_cut) cfg.params.n_cut = *f.n_cut;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (f.method) cfg.method = bjc::sweep_method_from_string(*f.method);
    if (f.format) cfg.format = bjc::table_format_from_string(*f.format);
    if (f.out) cfg.out = *f.out;

    if (cfg.params.kappa != 1.0)
        throw UsageError("this tool works in units of kappa; a config may not set kappa != 1");
    return cfg;
}

// The one supported environment override: BJC_OUT_DIR redirects relative
// output paths into a chosen directory.
std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (const char* dir = std::getenv("BJC_OUT_DIR"); dir != nullptr && *dir != '\0' && p.is_relative())
        p = std::filesystem::path(dir) / p;
    return p;
}

// Stronger driving populates higher Fock states; keep the truncation honest.
void raise_truncation_for_strong_drive(bjc::RunConfig& cfg, double omega_max) {
    if (cfg.method == bjc::SweepMethod::analytic) return;
    if (omega_max > 0.5 && cfg.params.n_cut < 8) {
        std::fprintf(stderr,
                     "warning: omega = %s exceeds 0.5 kappa; raising n_cut from %d to 8\n",
                     bjc::format_number(omega_max).c_str(), cfg.params.n_cut);
        cfg.params.n_cut = 8;
    }
}

void print_sweep_summary(std::FILE* dst, const bjc::SweepTable& table) {
    std::fprintf(dst, "points: %zu, failures: %d, max steady-state residual: %s\n",
                 table.rows.size(), table.failures,
                 bjc::format_number(table.max_residual).c_str());
    for (const auto& column : table.columns) {
        if (column != "g2_cw" && column != "g2_analytic") continue;
        std::size_t ci = 0;
        while (table.columns[ci] != column) ++ci;

        double best = std::numeric_limits<double>::infinity();
        const bjc::SweepRow* best_row = nullptr;
        for (const auto& row : table.rows) {
            const double v = row.values[ci];
            if (v < best) {
                best = v;
                best_row = &row;
            }
        }
        if (best_row == nullptr) continue;

        std::string where = std::string(to_string(table.spec.axis1.param)) + " = " +
                            bjc::format_number(best_row->x1);
        if (best_row->x2)
            where += ", " + std::string(to_string(table.spec.axis2->param)) + " = " +
                     bjc::format_number(*best_row->x2);
        std::fprintf(dst, "%s: min = %s at %s\n", column.c_str(),
                     bjc::format_number(best).c_str(), where.c_str());

        if (!table.spec.axis2) {
            const auto minima = bjc::find_minima(table, column);
            if (!minima.empty()) {
                std::string list;
                for (const auto& m : minima) {
                    if (!list.empty()) list += ", ";
                    list += bjc::format_number(m.axis_value) + " (" +
                            bjc::format_number(m.value) + ")";
                }
                std::fprintf(dst, "%s: local minima at %s = %s\n", column.c_str(),
                             to_string(table.spec.axis1.param), list.c_str());
            }
        }
    }
}

int cmd_sweep(const CommonFlags& f, const std::string& param, const std::string& range,
              const std::string& param2, const std::string& range2,
              const std::string& observables) {
    bjc::RunConfig cfg = merge_config(f, bjc::RunConfig{});

    if (!observables.empty()) {
        cfg.observables.clear();
        std::size_t begin = 0;
        while (begin <= observables.size()) {
            const std::size_t comma = observables.find(',', begin);
            const std::string name =
                observables.substr(begin, comma == std::string::npos ? std::string::npos
                                                                     : comma - begin);
            try {
                cfg.observables.push_back(bjc::observable_from_string(name));
            } catch (const bjc::Error& e) {
                throw UsageError(e.what());
            }
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
    }

    if (!param.empty() || !range.empty()) {
        if (param.empty() || range.empty())
            throw UsageError("--param and --range must be given together");
        cfg.axis1 = bjc::parse_range(range, bjc::sweep_param_from_string(param));
    }
    if (!param2.empty() || !range2.empty()) {
        if (param2.empty() || range2.empty())
            throw UsageError("--param2 and --range2 must be given together");
        cfg.axis2 = bjc::parse_range(range2, bjc::sweep_param_from_string(param2));
    }
    if (!cfg.axis1)
        throw UsageError("missing required --param/--range (or an axis1 entry in --config)");
    for (const auto& axis : {cfg.axis1, cfg.axis2}) {
        if (axis && axis->param == bjc::SweepParam::kappa)
            throw UsageError("kappa is fixed to 1 (all rates are in units of kappa); "
                             "it cannot be a sweep axis");
    }

    double omega_max = cfg.params.omega;
    for (const auto& axis : {cfg.axis1, cfg.axis2}) {
        if (axis && axis->param == bjc::SweepParam::omega)
            omega_max = std::max(omega_max, std::max(axis->start, axis->stop));
    }
    raise_truncation_for_strong_drive(cfg, omega_max);

    bjc::SweepSpec spec;
    try {
        spec = bjc::to_sweep_spec(cfg);
        spec.validate();
    } catch (const bjc::Error& e) {
        throw UsageError(e.what());
    }

    const bjc::SweepTable table = bjc::run_sweep(spec);
    const nlohmann::json provenance = cfg.to_json();

    if (cfg.out.empty()) {
        if (cfg.format == bjc::TableFormat::csv)
            std::fputs(bjc::table_to_csv(table, provenance).c_str(), stdout);
        else
            std::printf("%s\n", bjc::table_to_json(table, provenance).dump(2).c_str());
        print_sweep_summary(stderr, table);
    } else {
        const auto path = resolve_out(cfg.out);
        bjc::write_table(table, path, cfg.format, provenance);
        std::printf("wrote %s\n", path.string().c_str());
        print_sweep_summary(stdout, table);
    }
    return 0;
}

int cmd_spectrum(const CommonFlags& f, const std::string& vary, const std::string& range) {
    bjc::RunConfig cfg = merge_config(f, bjc::RunConfig{});

    if (!vary.empty() || !range.empty()) {
        if (vary.empty() || range.empty())
            throw UsageError("--vary and --range must be given together");
        cfg.axis1 = bjc::parse_range(range, bjc::sweep_param_from_string(vary));
    }
    if (!cfg.axis1)
        throw UsageError("missing required --vary/--range (or an axis1 entry in --config)");
    const bjc::SweepParam vary_param = cfg.axis1->param;
    if (vary_param != bjc::SweepParam::g && vary_param != bjc::SweepParam::chi)
        throw UsageError("spectrum can vary only g or chi");

    // Two-photon dressed-state levels, reported relative to 2*omega_c.
    const auto grid = cfg.axis1->values();
    std::vector<std::array<double, 5>> levels(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g = vary_param == bjc::SweepParam::g ? grid[i] : cfg.params.g;
        const double chi = vary_param == bjc::SweepParam::chi ? grid[i] : cfg.params.chi;
        const auto spec = bjc::two_photon_eigenvalues(g, chi);
        for (std::size_t k = 0; k < 5; ++k) levels[i][k] = spec.levels[k];
    }

    const nlohmann::json provenance = cfg.to_json();
    std::string text;
    if (cfg.format == bjc::TableFormat::csv) {
        text = std::string(to_string(vary_param)) + ",level_1,level_2,level_3,level_4,level_5\n";
        text += "# version=" + std::string(bjc::kVersion) + "\n";
        text += "# two-photon dressed-state levels relative to 2*omega_c, ascending\n";
        text += "# config=" + provenance.dump() + "\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            text += bjc::format_number(grid[i]);
            for (double v : levels[i]) text += "," + bjc::format_number(v);
            text += '\n';
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            row.push_back(bjc::round_trip_number(grid[i]));
            for (double v : levels[i]) row.push_back(bjc::round_trip_number(v));
            rows.push_back(row);
        }
        const nlohmann::json doc{
            {"version", bjc::kVersion},
            {"config", provenance},
            {"columns",
             {to_string(vary_param), "level_1", "level_2", "level_3", "level_4", "level_5"}},
            {"note", "two-photon dressed-state levels relative to 2*omega_c, ascending"},
            {"rows", rows},
        };
        text = doc.dump(2) + "\n";
    }

    if (cfg.out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        const auto path = resolve_out(cfg.out);
        std::error_code ec;
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream out_file(path);
        if (!out_file) throw UsageError("cannot open output file '" + path.string() + "'");
        out_file << text;
        std::printf("wrote %s (%zu rows)\n", path.string().c_str(), grid.size());
    }
    return 0;
}

int cmd_check(const CommonFlags& f) {
    bjc::RunConfig seed;
    seed.method = bjc::SweepMethod::both;  // the suite exercises both paths by default
    bjc::CheckOptions opts;
    bjc::RunConfig cfg = merge_config(f, std::move(seed));
    // Only explicitly set model values override the reference operating point.
    opts.params.n_cut = cfg.params.n_cut;
    if (f.delta) opts.params.delta = *f.delta;
    if (f.g) opts.params.g = *f.g;
    if (f.chi) opts.params.chi = *f.chi;
    if (f.omega) opts.params.omega = *f.omega;
    if (f.gamma) opts.params.gamma = *f.gamma;
    if (f.j) opts.params.j = *f.j;
    if (f.n_cut) opts.params.n_cut = *f.n_cut;
    opts.method = cfg.method;

    bjc::RunConfig effective = cfg;
    effective.params = opts.params;
    raise_truncation_for_strong_drive(effective, opts.params.omega);
    opts.params.n_cut = effective.params.n_cut;

    const bjc::CheckReport report = bjc::run_self_checks(opts);
    std::fputs(report.render().c_str(), stdout);
    if (report.all_pass()) {
        std::puts("all checks passed");
        return 0;
    }
    std::puts("some checks FAILED");
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state photon statistics of a driven bimodal Kerr cavity with a two-level atom"};
    app.set_version_flag("--version", bjc::kVersion);
    app.require_subcommand(1);

    CommonFlags sweep_flags, spectrum_flags, check_flags;
    std::string param, range, param2, range2, vary, observables;

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate photon statistics over a parameter grid");
    add_common_flags(sweep, sweep_flags, true);
    sweep->add_option("--param", param, "axis parameter (delta, g, chi, omega, gamma, j)");
    sweep->add_option("--range", range, "axis grid start:stop:count (inclusive)");
    sweep->add_option("--param2", param2, "second axis parameter (makes the sweep 2D)");
    sweep->add_option("--range2", range2, "second axis grid start:stop:count");
    sweep->add_option("--observables", observables,
                      "comma-separated columns (g2_cw, g2_analytic, mean_n_cw, p1, p2, "
                      "poisson_dev); default depends on --method");

    CLI::App* spectrum = app.add_subcommand("spectrum", "two-photon dressed-state level curves");
    add_common_flags(spectrum, spectrum_flags, true);
    spectrum->add_option("--vary", vary, "parameter to vary: g or chi");
    spectrum->add_option("--range", range, "grid start:stop:count (inclusive)");

    CLI::App* check = app.add_subcommand("check", "run the oracle/invariant self-check suite");
    add_common_flags(check, check_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse failure
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(sweep_flags, param, range, param2, range2, observables);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_flags, vary, range);
        if (check->parsed()) return cmd_check(check_flags);
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const bjc::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const bjc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
