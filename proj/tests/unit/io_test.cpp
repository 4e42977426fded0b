#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bjc/config.hpp"
#include "bjc/table_io.hpp"
#include "bjc/version.hpp"
#include "doctest.h"

using namespace bjc;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepTable sample_table() {
    SweepTable t;
    t.spec.base = ModelParams{};
    t.spec.base.omega = 0.1;
    t.spec.axis1 = Axis{SweepParam::delta, 0.0, 2.0, 3};
    t.spec.observables = {Observable::g2_cw, Observable::mean_n_cw};
    t.columns = {"g2_cw", "mean_n_cw"};
    t.version = kVersion;
    t.max_residual = 2.5e-13;
    t.mean_residual = 1.0e-13;

    for (int i = 0; i < 3; ++i) {
        SweepRow row;
        row.x1 = double(i);
        row.values = {0.5 + i, 0.25 * i};
        t.rows.push_back(row);
    }
    t.rows[2].failed = true;
    t.rows[2].error = "boom";
    t.rows[2].values = {kNaN, kNaN};
    t.failures = 1;
    return t;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "bjc_io_test_workdir";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_number uses 12 significant digits and round trips") {
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-4.0) == "-4");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(kNaN) == "nan");
    CHECK(format_number(1e-30) == "1e-30");

    CHECK(round_trip_number(2.0) == 2.0);
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-13, 3.14159265358979}) {
        const double r = round_trip_number(v);
        CHECK(std::abs(r / v - 1.0) < 1e-11);
        // Serializing the round-tripped value is idempotent.
        CHECK(format_number(r) == format_number(round_trip_number(r)));
    }
    CHECK(std::isnan(round_trip_number(kNaN)));
}

TEST_CASE("table format names") {
    CHECK(table_format_from_string("csv") == TableFormat::csv);
    CHECK(table_format_from_string("json") == TableFormat::json);
    CHECK_THROWS_AS(table_format_from_string("xml"), ConfigError);
    CHECK(std::string(to_string(TableFormat::csv)) == "csv");
    CHECK(std::string(to_string(TableFormat::json)) == "json");
}

TEST_CASE("csv layout: header first, comments, then data") {
    const SweepTable t = sample_table();
    const std::string csv = table_to_csv(t);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() >= 8);

    CHECK(lines[0] == "delta,g2_cw,mean_n_cw");
    CHECK(lines[1] == std::string("# version=") + kVersion);
    CHECK(lines[2] == "# points=3 failures=1");
    CHECK(lines[3].rfind("# max_residual=2.5e-13 mean_residual=1e-13", 0) == 0);
    CHECK(lines[4].rfind("# spec=", 0) == 0);
    CHECK(lines[5] == "# error row=2: boom");
    CHECK(lines[6] == "0,0.5,0");
    CHECK(lines[7] == "1,1.5,0.25");
    CHECK(lines[8] == "2,nan,nan");

    // The spec echo is valid JSON and reproduces the axis.
    const auto spec_json = nlohmann::json::parse(lines[4].substr(std::string("# spec=").size()));
    CHECK(spec_json["axis1"]["param"] == "delta");
    CHECK(spec_json["axis1"]["count"] == 3);
    CHECK(spec_json["method"] == "numeric");

    // Rendering is deterministic.
    CHECK(table_to_csv(t) == csv);
}

TEST_CASE("csv embeds the run configuration when provided") {
    RunConfig cfg;
    cfg.params.g = 1.33;
    cfg.out = "result.csv";
    const std::string csv = table_to_csv(sample_table(), cfg.to_json());

    bool found = false;
    for (const auto& line : lines_of(csv)) {
        if (line.rfind("# config=", 0) != 0) continue;
        found = true;
        const auto echoed = nlohmann::json::parse(line.substr(std::string("# config=").size()));
        CHECK(echoed["g"] == 1.33);
        CHECK(echoed["out"] == "result.csv");
    }
    CHECK(found);
}

TEST_CASE("json rendering carries the same content with nan as null") {
    const SweepTable t = sample_table();
    const nlohmann::json j = table_to_json(t);

    CHECK(j["version"] == kVersion);
    CHECK(j["columns"] == nlohmann::json({"delta", "g2_cw", "mean_n_cw"}));
    CHECK(j["failures"] == 1);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0] == nlohmann::json({0.0, 0.5, 0.0}));
    CHECK(j["rows"][2][1].is_null());
    CHECK(j["rows"][2][2].is_null());
    REQUIRE(j["errors"].size() == 1);
    CHECK(j["errors"][0]["row"] == 2);
    CHECK(j["errors"][0]["message"] == "boom");
    CHECK(j["residual"]["max"] == 2.5e-13);

    // Without failures there is no errors key; with provenance there is config.
    SweepTable clean = sample_table();
    clean.rows.pop_back();
    clean.failures = 0;
    const nlohmann::json jc = table_to_json(clean, nlohmann::json{{"note", 1}});
    CHECK(!jc.contains("errors"));
    CHECK(jc["config"]["note"] == 1);
}

TEST_CASE("write_table creates parent directories and rejects bad paths") {
    const TempDir tmp;
    const auto nested = tmp.path / "a" / "b" / "out.csv";
    write_table(sample_table(), nested, TableFormat::csv);
    std::ifstream in(nested);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "delta,g2_cw,mean_n_cw");

    const auto as_json = tmp.path / "out.json";
    write_table(sample_table(), as_json, TableFormat::json);
    std::ifstream jin(as_json);
    const nlohmann::json parsed = nlohmann::json::parse(jin);
    CHECK(parsed["failures"] == 1);

    // A path whose parent is an existing file cannot be created.
    const auto blocker = tmp.path / "file.txt";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(write_table(sample_table(), blocker / "out.csv", TableFormat::csv),
                    ConfigError);
}

TEST_CASE("run configuration: defaults, parsing and strictness") {
    const RunConfig def;
    CHECK(def.method == SweepMethod::numeric);
    CHECK(def.format == TableFormat::csv);
    CHECK(def.jobs == 1);
    CHECK(def.params.kappa == 1.0);
    CHECK(def.observables.empty());

    const nlohmann::json j{
        {"delta", -1.5},
        {"g", 1.33},
        {"chi", 8.0},
        {"n_cut", 6},
        {"axis1", {{"param", "delta"}, {"start", -4.0}, {"stop", 4.0}, {"count", 401}}},
        {"method", "both"},
        {"observables", {"g2_cw", "poisson_dev"}},
        {"format", "json"},
        {"out", "x.json"},
        {"jobs", 4},
        {"tolerances", {{"steady_residual", 1e-9}}},
    };
    const RunConfig cfg = RunConfig::from_json(j);
    CHECK(cfg.params.delta == -1.5);
    CHECK(cfg.params.g == 1.33);
    CHECK(cfg.params.n_cut == 6);
    REQUIRE(cfg.axis1.has_value());
    CHECK(cfg.axis1->param == SweepParam::delta);
    CHECK(cfg.axis1->count == 401);
    CHECK(!cfg.axis2.has_value());
    CHECK(cfg.method == SweepMethod::both);
    REQUIRE(cfg.observables.size() == 2);
    CHECK(cfg.observables[0] == Observable::g2_cw);
    CHECK(cfg.observables[1] == Observable::poisson_dev);
    CHECK(cfg.format == TableFormat::json);
    CHECK(cfg.jobs == 4);
    CHECK(cfg.resolved_tolerances().steady_residual == 1e-9);
    CHECK(cfg.resolved_tolerances().trace == Tolerances{}.trace);
}

TEST_CASE("config parsing rejects malformed input by name") {
    auto parse = [](const nlohmann::json& j) { return RunConfig::from_json(j); };

    CHECK_THROWS_AS(parse(nlohmann::json::array()), ConfigError);
    CHECK_THROWS_WITH_AS(parse({{"spam", 1}}), doctest::Contains("spam"), ConfigError);
    CHECK_THROWS_AS(parse({{"g", "strong"}}), ConfigError);
    CHECK_THROWS_AS(parse({{"n_cut", 2.5}}), ConfigError);
    CHECK_THROWS_AS(parse({{"jobs", "many"}}), ConfigError);
    CHECK_THROWS_AS(parse({{"method", "fancy"}}), ConfigError);
    CHECK_THROWS_AS(parse({{"observables", 7}}), ConfigError);
    CHECK_THROWS_AS(parse({{"observables", {"g2_cw", 3}}}), ConfigError);
    CHECK_THROWS_WITH_AS(parse({{"observables", {"warp"}}}), doctest::Contains("warp"),
                         ConfigError);
    CHECK_THROWS_AS(parse({{"format", "xml"}}), ConfigError);
    CHECK_THROWS_AS(parse({{"axis1", 7}}), ConfigError);
    CHECK_THROWS_AS(parse({{"axis1", {{"param", "delta"}, {"start", 0.0}, {"stop", 1.0}}}}),
                    ConfigError);
    CHECK_THROWS_WITH_AS(
        parse({{"axis1",
                {{"param", "delta"}, {"start", 0.0}, {"stop", 1.0}, {"count", 3}, {"step", 1}}}}),
        doctest::Contains("axis1.step"), ConfigError);
    CHECK_THROWS_AS(parse({{"axis1", {{"param", "nope"}, {"start", 0.0}, {"stop", 1.0},
                                      {"count", 3}}}}),
                    ConfigError);
    CHECK_THROWS_WITH_AS(parse({{"tolerances", {{"tracee", 1e-9}}}}),
                         doctest::Contains("tracee"), ConfigError);
    CHECK_THROWS_AS(parse({{"tolerances", {{"trace", -1e-9}}}}), ConfigError);
    CHECK_THROWS_AS(parse({{"tolerances", {{"trace", "tight"}}}}), ConfigError);
}

TEST_CASE("config overlay: file keys override the base, others persist") {
    RunConfig base;
    base.params.g = 2.0;
    base.params.chi = 5.0;
    base.jobs = 3;

    const RunConfig merged = RunConfig::from_json({{"chi", 8.0}, {"out", "y.csv"}}, base);
    CHECK(merged.params.g == 2.0);    // untouched
    CHECK(merged.params.chi == 8.0);  // overridden
    CHECK(merged.jobs == 3);
    CHECK(merged.out == "y.csv");

    RunConfig listed;
    listed.observables = {Observable::p1};
    const RunConfig kept = RunConfig::from_json({{"g", 3.0}}, listed);
    REQUIRE(kept.observables.size() == 1);  // absent key leaves the base list alone
    CHECK(kept.observables[0] == Observable::p1);
    const RunConfig swapped = RunConfig::from_json({{"observables", {"g2_cw"}}}, listed);
    REQUIRE(swapped.observables.size() == 1);  // present key replaces it wholesale
    CHECK(swapped.observables[0] == Observable::g2_cw);
}

TEST_CASE("config serialization round trips") {
    RunConfig cfg;
    cfg.params.delta = 0.5;
    cfg.params.g = 1.33;
    cfg.params.chi = 8.0;
    cfg.axis1 = Axis{SweepParam::delta, -4.0, 4.0, 401};
    cfg.axis2 = Axis{SweepParam::g, 0.1, 5.0, 101};
    cfg.method = SweepMethod::both;
    cfg.observables = {Observable::g2_cw, Observable::poisson_dev};
    cfg.format = TableFormat::json;
    cfg.out = "z.json";
    cfg.jobs = 2;
    cfg.tolerances["trace"] = 1e-9;

    const RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("parse_range") {
    const Axis a = parse_range("-4:4:401", SweepParam::delta);
    CHECK(a.param == SweepParam::delta);
    CHECK(a.start == -4.0);
    CHECK(a.stop == 4.0);
    CHECK(a.count == 401);

    const Axis b = parse_range("0.5:2.5:5", SweepParam::gamma);
    CHECK(b.start == 0.5);
    CHECK(b.stop == 2.5);
    CHECK(b.count == 5);

    CHECK_THROWS_AS(parse_range("", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:3:4", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("a:2:3", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("1:b:3", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:c", SweepParam::delta), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:3.5", SweepParam::delta), ConfigError);
}

TEST_CASE("to_sweep_spec needs a first axis and carries the tolerances") {
    RunConfig cfg;
    CHECK_THROWS_AS(to_sweep_spec(cfg), ConfigError);

    cfg.axis1 = Axis{SweepParam::delta, -1.0, 1.0, 3};
    cfg.method = SweepMethod::analytic;
    cfg.observables = {Observable::g2_analytic};
    cfg.jobs = 2;
    cfg.tolerances["steady_residual"] = 1e-9;
    cfg.params.g = 1.33;

    const SweepSpec spec = to_sweep_spec(cfg);
    CHECK(spec.base.g == 1.33);
    CHECK(spec.axis1.count == 3);
    CHECK(spec.method == SweepMethod::analytic);
    REQUIRE(spec.observables.size() == 1);
    CHECK(spec.observables[0] == Observable::g2_analytic);
    CHECK(spec.jobs == 2);
    CHECK(spec.solve.tol.steady_residual == 1e-9);
}

}  // TEST_SUITE
