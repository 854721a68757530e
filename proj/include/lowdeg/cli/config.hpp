#pragma once

// Experiment configuration shared by every CLI subcommand, with a strict JSON form.
// Probabilities stay as strings so "a/b" survives the round trip untouched.

#include "lowdeg/bounds/bounds.hpp"
#include "lowdeg/models/params.hpp"
#include "lowdeg/numeric/rational.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg::cli {

inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ModelSpec {
    std::string family = "corr-er";  // corr-er, er, sbm, corr-sbm, modified-sbm
    int n = 3;
    std::optional<std::string> p, s, q, rho;
    std::string lambda = "1";
    int k = 2;
    std::string eps = "0";
    std::string delta = "1/100";
    int D = 1;
    int N = 0;

    bool operator==(const ModelSpec&) const = default;
};

struct ExperimentConfig {
    std::string command;
    ModelSpec model;
    bool exact = false;
    std::string method = "product";     // product, gram_schmidt, rayleigh
    std::string convention = "leading";  // Xi step convention: leading or exact
    std::optional<std::array<int, 2>> condition;  // adv: condition on pi*(i) = j
    std::string suite = "all";           // bounds-audit
    std::string estimator = "oracle";    // reduce: oracle, identity, random, greedy
    double threshold = 0.5;
    std::vector<int> M{1, 2, 4, 8};      // hidden
    std::string base_null = "1/2", base_alt = "4/5";
    int max_n = 50;                      // otter
    long trials = 1;
    std::uint64_t seed = 1;
    std::string output;                  // empty: stdout
    std::string format = "json";         // json or csv
    double slack = kDeskSlack;

    bool operator==(const ExperimentConfig&) const = default;
};

inline const std::set<std::string>& known_commands() {
    static const std::set<std::string> c{"sample", "adv", "hidden", "xi", "dual-check", "bounds-audit", "reduce", "otter", "verify"};
    return c;
}

inline nlohmann::json to_json(const ModelSpec& m) {
    nlohmann::json j{{"family", m.family}, {"n", m.n},     {"lambda", m.lambda}, {"k", m.k},
                     {"eps", m.eps},       {"delta", m.delta}, {"D", m.D},        {"N", m.N}};
    if (m.p) j["p"] = *m.p;
    if (m.s) j["s"] = *m.s;
    if (m.q) j["q"] = *m.q;
    if (m.rho) j["rho"] = *m.rho;
    return j;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"command", c.command},
                     {"model", to_json(c.model)},
                     {"exact", c.exact},
                     {"method", c.method},
                     {"convention", c.convention},
                     {"suite", c.suite},
                     {"estimator", c.estimator},
                     {"threshold", c.threshold},
                     {"M", c.M},
                     {"base_null", c.base_null},
                     {"base_alt", c.base_alt},
                     {"max_n", c.max_n},
                     {"trials", c.trials},
                     {"seed", c.seed},
                     {"output", c.output},
                     {"format", c.format},
                     {"slack", c.slack}};
    if (c.condition) j["condition"] = *c.condition;
    return j;
}

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <class T>
void read(const nlohmann::json& j, const char* key, std::optional<T>& out, const std::string& where) {
    if (!j.contains(key)) return;
    T v{};
    read(j, key, v, where);
    out = std::move(v);
}

}  // namespace detail

inline ModelSpec model_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"family", "n", "p", "s", "q", "rho", "lambda", "k", "eps", "delta", "D", "N"}, "model");
    ModelSpec m;
    detail::read(j, "family", m.family, "model");
    detail::read(j, "n", m.n, "model");
    detail::read(j, "p", m.p, "model");
    detail::read(j, "s", m.s, "model");
    detail::read(j, "q", m.q, "model");
    detail::read(j, "rho", m.rho, "model");
    detail::read(j, "lambda", m.lambda, "model");
    detail::read(j, "k", m.k, "model");
    detail::read(j, "eps", m.eps, "model");
    detail::read(j, "delta", m.delta, "model");
    detail::read(j, "D", m.D, "model");
    detail::read(j, "N", m.N, "model");
    return m;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j,
                           {"schema_version", "command", "model", "exact", "method", "convention", "condition", "suite",
                            "estimator", "threshold", "M", "base_null", "base_alt", "max_n", "trials", "seed", "output",
                            "format", "slack"},
                           "config");
    if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
        throw ConfigError("config: unsupported schema_version " + j.at("schema_version").dump());
    ExperimentConfig c;
    detail::read(j, "command", c.command, "config");
    if (j.contains("model")) c.model = model_from_json(j.at("model"));
    detail::read(j, "exact", c.exact, "config");
    detail::read(j, "method", c.method, "config");
    detail::read(j, "convention", c.convention, "config");
    detail::read(j, "condition", c.condition, "config");
    detail::read(j, "suite", c.suite, "config");
    detail::read(j, "estimator", c.estimator, "config");
    detail::read(j, "threshold", c.threshold, "config");
    detail::read(j, "M", c.M, "config");
    detail::read(j, "base_null", c.base_null, "config");
    detail::read(j, "base_alt", c.base_alt, "config");
    detail::read(j, "max_n", c.max_n, "config");
    detail::read(j, "trials", c.trials, "config");
    detail::read(j, "seed", c.seed, "config");
    detail::read(j, "output", c.output, "config");
    detail::read(j, "format", c.format, "config");
    detail::read(j, "slack", c.slack, "config");
    return c;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("config file is empty");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

// Parses a probability or parameter. Exact mode insists on integers or "a/b".
inline Rational parse_param(const std::string& text, bool exact, const std::string& name) {
    if (exact && text.find_first_of(".eE") != std::string::npos)
        throw ConfigError(name + ": exact mode takes integers or fractions a/b, got '" + text + "'");
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(name + ": " + e.what());
    }
}

inline ModelParams resolve_model(const ModelSpec& spec, bool exact) {
    auto get = [&](const std::optional<std::string>& v, const char* name) {
        return parse_param(*v, exact, name);
    };
    ModelParams m;
    const std::string& f = spec.family;
    if (f == "corr-er" || f == "er") {
        if (spec.q && spec.rho) m = ModelParams::correlated_er_qrho(spec.n, get(spec.q, "q"), get(spec.rho, "rho"));
        else if (spec.p && spec.s) m = ModelParams::correlated_er_ps(spec.n, get(spec.p, "p"), get(spec.s, "s"));
        else if (spec.q && f == "er") m = ModelParams::correlated_er_qrho(spec.n, get(spec.q, "q"), Rational(0));
        else if (spec.p && f == "er") m = ModelParams::correlated_er_ps(spec.n, get(spec.p, "p"), Rational(1));
        else throw ConfigError("model " + f + " needs (q, rho) or (p, s)");
    } else if (f == "sbm" || f == "corr-sbm" || f == "modified-sbm") {
        const Rational s = spec.s ? get(spec.s, "s") : Rational(1);
        m = ModelParams::sbm(spec.n, spec.k, parse_param(spec.lambda, exact, "lambda"), parse_param(spec.eps, exact, "eps"), s);
    } else {
        throw ConfigError("unknown model family '" + f + "'");
    }
    m.delta = parse_param(spec.delta, exact, "delta");
    m.D = spec.D;
    m.N = spec.N;
    m.validate();
    return m;
}

}  // namespace lowdeg::cli
