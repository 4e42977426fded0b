#include "bjc/config.hpp"

#include <charconv>
#include <initializer_list>
#include <string>
#include <utility>

#include "bjc/errors.hpp"

namespace bjc {

namespace {

constexpr const char* kToleranceNames[] = {"steady_residual", "trace", "hermiticity",
                                           "positivity", "evolve_drift"};

void reject_unknown_keys(const nlohmann::json& node, std::initializer_list<const char*> allowed,
                         const std::string& prefix) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) throw ConfigError("unknown configuration key '" + prefix + it.key() + "'");
    }
}

double require_number(const nlohmann::json& node, const std::string& key) {
    if (!node.at(key).is_number())
        throw ConfigError("configuration key '" + key + "' must be a number");
    return node.at(key).get<double>();
}

int require_integer(const nlohmann::json& node, const std::string& key) {
    if (!node.at(key).is_number_integer())
        throw ConfigError("configuration key '" + key + "' must be an integer");
    return node.at(key).get<int>();
}

std::string require_string(const nlohmann::json& node, const std::string& key) {
    if (!node.at(key).is_string())
        throw ConfigError("configuration key '" + key + "' must be a string");
    return node.at(key).get<std::string>();
}

Axis axis_from_json(const nlohmann::json& node, const std::string& where) {
    if (!node.is_object()) throw ConfigError("'" + where + "' must be an object");
    reject_unknown_keys(node, {"param", "start", "stop", "count"}, where + ".");
    for (const char* key : {"param", "start", "stop", "count"})
        if (!node.contains(key))
            throw ConfigError("'" + where + "' requires keys param, start, stop, count");
    Axis a;
    a.param = sweep_param_from_string(require_string(node, "param"));
    a.start = require_number(node, "start");
    a.stop = require_number(node, "stop");
    a.count = require_integer(node, "count");
    return a;
}

double parse_double(std::string_view text, const std::string& range_text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("malformed range '" + range_text + "': '" + std::string(text) +
                          "' is not a number");
    return v;
}

int parse_count(std::string_view text, const std::string& range_text) {
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("malformed range '" + range_text + "': '" + std::string(text) +
                          "' is not an integer count");
    return v;
}

}  // namespace

Tolerances RunConfig::resolved_tolerances() const {
    Tolerances tol;
    for (const auto& [name, value] : tolerances) {
        if (name == "steady_residual")
            tol.steady_residual = value;
        else if (name == "trace")
            tol.trace = value;
        else if (name == "hermiticity")
            tol.hermiticity = value;
        else if (name == "positivity")
            tol.positivity = value;
        else if (name == "evolve_drift")
            tol.evolve_drift = value;
        else
            throw ConfigError("unknown tolerance '" + name + "'");
        if (!(value > 0.0)) throw ConfigError("tolerance '" + name + "' must be positive");
    }
    return tol;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json axis1_json = nullptr;
    nlohmann::json axis2_json = nullptr;
    auto axis_json = [](const Axis& a) {
        return nlohmann::json{{"param", to_string(a.param)},
                              {"start", a.start},
                              {"stop", a.stop},
                              {"count", a.count}};
    };
    if (axis1) axis1_json = axis_json(*axis1);
    if (axis2) axis2_json = axis_json(*axis2);

    return nlohmann::json{
        {"delta", params.delta},
        {"g", params.g},
        {"chi", params.chi},
        {"omega", params.omega},
        {"kappa", params.kappa},
        {"gamma", params.gamma},
        {"j", params.j},
        {"n_cut", params.n_cut},
        {"axis1", axis1_json},
        {"axis2", axis2_json},
        {"method", to_string(method)},
        {"observables", [this] {
             nlohmann::json names = nlohmann::json::array();
             for (Observable o : observables) names.push_back(to_string(o));
             return names;
         }()},
        {"format", to_string(format)},
        {"out", out},
        {"jobs", jobs},
        {"tolerances", nlohmann::json(tolerances)},
    };
}

RunConfig RunConfig::from_json(const nlohmann::json& node) { return from_json(node, RunConfig{}); }

RunConfig RunConfig::from_json(const nlohmann::json& node, RunConfig base) {
    if (!node.is_object()) throw ConfigError("the configuration root must be a JSON object");
    reject_unknown_keys(node,
                        {"delta", "g", "chi", "omega", "kappa", "gamma", "j", "n_cut", "axis1",
                         "axis2", "method", "observables", "format", "out", "jobs", "tolerances"},
                        "");

    RunConfig cfg = std::move(base);
    if (node.contains("delta")) cfg.params.delta = require_number(node, "delta");
    if (node.contains("g")) cfg.params.g = require_number(node, "g");
    if (node.contains("chi")) cfg.params.chi = require_number(node, "chi");
    if (node.contains("omega")) cfg.params.omega = require_number(node, "omega");
    if (node.contains("kappa")) cfg.params.kappa = require_number(node, "kappa");
    if (node.contains("gamma")) cfg.params.gamma = require_number(node, "gamma");
    if (node.contains("j")) cfg.params.j = require_number(node, "j");
    if (node.contains("n_cut")) cfg.params.n_cut = require_integer(node, "n_cut");

    if (node.contains("axis1") && !node.at("axis1").is_null())
        cfg.axis1 = axis_from_json(node.at("axis1"), "axis1");
    if (node.contains("axis2") && !node.at("axis2").is_null())
        cfg.axis2 = axis_from_json(node.at("axis2"), "axis2");

    if (node.contains("method")) cfg.method = sweep_method_from_string(require_string(node, "method"));
    if (node.contains("observables")) {
        const auto& names = node.at("observables");
        if (!names.is_array()) throw ConfigError("'observables' must be an array of strings");
        cfg.observables.clear();
        for (const auto& entry : names) {
            if (!entry.is_string()) throw ConfigError("'observables' must be an array of strings");
            cfg.observables.push_back(observable_from_string(entry.get<std::string>()));
        }
    }
    if (node.contains("format")) cfg.format = table_format_from_string(require_string(node, "format"));
    if (node.contains("out")) cfg.out = require_string(node, "out");
    if (node.contains("jobs")) cfg.jobs = require_integer(node, "jobs");

    if (node.contains("tolerances")) {
        const auto& tols = node.at("tolerances");
        if (!tols.is_object()) throw ConfigError("'tolerances' must be an object");
        reject_unknown_keys(tols,
                            {kToleranceNames[0], kToleranceNames[1], kToleranceNames[2],
                             kToleranceNames[3], kToleranceNames[4]},
                            "tolerances.");
        for (auto it = tols.begin(); it != tols.end(); ++it) {
            if (!it.value().is_number())
                throw ConfigError("tolerance '" + it.key() + "' must be a number");
            cfg.tolerances[it.key()] = it.value().get<double>();
        }
    }

    cfg.resolved_tolerances();  // validate values eagerly
    return cfg;
}

Axis parse_range(const std::string& text, SweepParam param) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    const auto third = second == std::string::npos ? std::string::npos : text.find(':', second + 1);
    if (first == std::string::npos || second == std::string::npos || third != std::string::npos)
        throw ConfigError("malformed range '" + text + "': expected start:stop:count");

    Axis a;
    a.param = param;
    a.start = parse_double(std::string_view(text).substr(0, first), text);
    a.stop = parse_double(std::string_view(text).substr(first + 1, second - first - 1), text);
    a.count = parse_count(std::string_view(text).substr(second + 1), text);
    return a;
}

SweepSpec to_sweep_spec(const RunConfig& config) {
    if (!config.axis1) throw ConfigError("a sweep requires axis1 (set --param and --range)");
    SweepSpec spec;
    spec.base = config.params;
    spec.axis1 = *config.axis1;
    spec.axis2 = config.axis2;
    spec.method = config.method;
    spec.observables = config.observables;
    spec.jobs = config.jobs;
    spec.solve.tol = config.resolved_tolerances();
    return spec;
}

}  // namespace bjc
