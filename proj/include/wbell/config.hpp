#ifndef WBELL_CONFIG_HPP
#define WBELL_CONFIG_HPP

// Run configuration: what state to prepare, which omega values to visit, how
// hard to optimize and where the results go. Parsed from a single JSON
// document in which every field is optional.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wbell/bell.hpp"
#include "wbell/error.hpp"
#include "wbell/scenario.hpp"

namespace wbell {

/// Default upper end of the omega grid; pi/2 itself needs light speed.
inline constexpr double kDefaultOmegaMax = std::numbers::pi / 2 * 0.999;

enum class StateFamily { ghz, w };
enum class SweepMode { omega, speed };
enum class OutputFormat { csv, json };

struct ScenarioSpec {
    StateFamily family = StateFamily::ghz;
    MomentumSetting setting = MomentumSetting::two_opposite;
    double theta_m = std::numbers::pi / 4;
    double theta_s = std::numbers::pi / 4;
    double phi_s = std::numbers::pi / 4; // W family only
    std::optional<double> particle_speed;
    std::optional<double> observer_speed;
};

struct SweepSpec {
    SweepMode mode = SweepMode::omega;
    double omega_min = 0.0;
    double omega_max = kDefaultOmegaMax;
    std::size_t steps = 64;
    // speed mode: observer speed runs over [speed_min, speed_max] at fixed particle speed
    double speed_min = 0.0;
    double speed_max = 0.99;
};

struct OptimizerSpec {
    std::size_t multistarts = 24;
    std::size_t max_iters = 2000;
    double tol = 1e-9;
    std::uint64_t seed = 7;
    unsigned threads = 1;
};

struct OutputSpec {
    std::string dir = ".";
    std::string name = "sweep";
    OutputFormat format = OutputFormat::csv;
    bool svg = false;
};

struct RunConfig {
    ScenarioSpec scenario;
    SweepSpec sweep;
    OptimizerSpec optimizer;
    OutputSpec output;
};

inline std::string_view to_string(StateFamily f) { return f == StateFamily::ghz ? "ghz" : "w"; }
inline std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("output.format", "expected csv or json, got '" + std::string(s) + "'");
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
    }
}

inline const json* section(const json& root, const char* name) {
    if (!root.contains(name)) return nullptr;
    const json& s = root.at(name);
    if (!s.is_object()) throw ConfigError(name, "expected an object");
    return &s;
}

inline double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
    return v.get<double>();
}

inline std::uint64_t get_unsigned(const json& obj, const std::string& where, const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) throw ConfigError(where + "." + key, "must not be negative");
    throw ConfigError(where + "." + key, "expected a non-negative integer");
}

inline std::string get_string(const json& obj, const std::string& where, const char* key, std::string fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key, "expected a string");
    return v.get<std::string>();
}

inline void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
}

inline void require_speed(double v, const char* field) {
    require_finite(v, field);
    if (v < 0.0 || v >= 1.0) throw ConfigError(field, "speed must lie in [0, 1)");
}

} // namespace detail

/// Throws ConfigError naming the first offending field.
inline void validate(const RunConfig& c) {
    using detail::require_finite;
    using detail::require_speed;
    const auto& s = c.scenario;
    require_finite(s.theta_m, "scenario.theta_m");
    require_finite(s.theta_s, "scenario.theta_s");
    require_finite(s.phi_s, "scenario.phi_s");
    if (s.family == StateFamily::w && qubit_count(s.setting) != 3)
        throw ConfigError("scenario.setting", "the w family needs a three-particle setting");
    if (s.particle_speed) require_speed(*s.particle_speed, "scenario.particle_speed");
    if (s.observer_speed) require_speed(*s.observer_speed, "scenario.observer_speed");

    const auto& w = c.sweep;
    if (w.steps < 1) throw ConfigError("sweep.steps", "must be at least 1");
    require_finite(w.omega_min, "sweep.omega_min");
    require_finite(w.omega_max, "sweep.omega_max");
    if (w.omega_min < 0.0 || w.omega_min >= std::numbers::pi / 2)
        throw ConfigError("sweep.omega_min", "must lie in [0, pi/2)");
    if (w.omega_max < 0.0 || w.omega_max >= std::numbers::pi / 2)
        throw ConfigError("sweep.omega_max", "must lie in [0, pi/2)");
    if (w.omega_max < w.omega_min) throw ConfigError("sweep.omega_max", "must not be below sweep.omega_min");
    if (w.mode == SweepMode::speed) {
        if (!s.particle_speed) throw ConfigError("scenario.particle_speed", "required by sweep.mode = speed");
        require_speed(w.speed_min, "sweep.speed_min");
        require_speed(w.speed_max, "sweep.speed_max");
        if (w.speed_max < w.speed_min) throw ConfigError("sweep.speed_max", "must not be below sweep.speed_min");
    }

    const auto& o = c.optimizer;
    if (o.max_iters < 1) throw ConfigError("optimizer.max_iters", "must be at least 1");
    if (!(o.tol > 0.0) || !std::isfinite(o.tol)) throw ConfigError("optimizer.tol", "must be a positive number");
    if (c.output.name.empty()) throw ConfigError("output.name", "must not be empty");
}

/// Parses and validates a configuration document. Missing fields keep their
/// defaults; unknown fields are rejected.
inline RunConfig parse_config(const nlohmann::json& root) {
    using namespace detail;
    if (!root.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(root, "", {"scenario", "sweep", "optimizer", "output"});
    RunConfig c;

    if (const json* s = section(root, "scenario")) {
        reject_unknown(*s, "scenario",
                       {"family", "setting", "theta_m", "theta_s", "phi_s", "particle_speed", "observer_speed"});
        const std::string family = get_string(*s, "scenario", "family", "ghz");
        if (family == "ghz") c.scenario.family = StateFamily::ghz;
        else if (family == "w") c.scenario.family = StateFamily::w;
        else throw ConfigError("scenario.family", "expected ghz or w, got '" + family + "'");
        const std::string setting = get_string(*s, "scenario", "setting", "two-opposite");
        try {
            c.scenario.setting = parse_momentum_setting(setting);
        } catch (const DomainError& e) {
            throw ConfigError("scenario.setting", e.what());
        }
        c.scenario.theta_m = get_number(*s, "scenario", "theta_m", c.scenario.theta_m);
        c.scenario.theta_s = get_number(*s, "scenario", "theta_s", c.scenario.theta_s);
        c.scenario.phi_s = get_number(*s, "scenario", "phi_s", c.scenario.phi_s);
        if (s->contains("particle_speed")) c.scenario.particle_speed = get_number(*s, "scenario", "particle_speed", 0.0);
        if (s->contains("observer_speed")) c.scenario.observer_speed = get_number(*s, "scenario", "observer_speed", 0.0);
    }

    if (const json* s = section(root, "sweep")) {
        reject_unknown(*s, "sweep", {"mode", "omega_min", "omega_max", "steps", "speed_min", "speed_max"});
        const std::string mode = get_string(*s, "sweep", "mode", "omega");
        if (mode == "omega") c.sweep.mode = SweepMode::omega;
        else if (mode == "speed") c.sweep.mode = SweepMode::speed;
        else throw ConfigError("sweep.mode", "expected omega or speed, got '" + mode + "'");
        c.sweep.omega_min = get_number(*s, "sweep", "omega_min", c.sweep.omega_min);
        c.sweep.omega_max = get_number(*s, "sweep", "omega_max", c.sweep.omega_max);
        c.sweep.steps = get_unsigned(*s, "sweep", "steps", c.sweep.steps);
        c.sweep.speed_min = get_number(*s, "sweep", "speed_min", c.sweep.speed_min);
        c.sweep.speed_max = get_number(*s, "sweep", "speed_max", c.sweep.speed_max);
    }

    if (const json* s = section(root, "optimizer")) {
        reject_unknown(*s, "optimizer", {"multistarts", "max_iters", "tol", "seed", "threads"});
        c.optimizer.multistarts = get_unsigned(*s, "optimizer", "multistarts", c.optimizer.multistarts);
        c.optimizer.max_iters = get_unsigned(*s, "optimizer", "max_iters", c.optimizer.max_iters);
        c.optimizer.tol = get_number(*s, "optimizer", "tol", c.optimizer.tol);
        c.optimizer.seed = get_unsigned(*s, "optimizer", "seed", c.optimizer.seed);
        c.optimizer.threads = static_cast<unsigned>(get_unsigned(*s, "optimizer", "threads", c.optimizer.threads));
    }

    if (const json* s = section(root, "output")) {
        reject_unknown(*s, "output", {"dir", "name", "format", "svg"});
        c.output.dir = get_string(*s, "output", "dir", c.output.dir);
        c.output.name = get_string(*s, "output", "name", c.output.name);
        c.output.format = parse_output_format(get_string(*s, "output", "format", "csv"));
        if (s->contains("svg")) {
            if (!s->at("svg").is_boolean()) throw ConfigError("output.svg", "expected true or false");
            c.output.svg = s->at("svg").get<bool>();
        }
    }

    validate(c);
    return c;
}

inline RunConfig parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

inline MomentumScenario build_scenario(const ScenarioSpec& s) {
    if (s.family == StateFamily::w) return make_w_scenario(s.setting, s.theta_m, s.theta_s, s.phi_s);
    return make_ghz_scenario(s.setting, s.theta_m, s.theta_s);
}

inline MaximizeOptions maximize_options(const OptimizerSpec& o) {
    MaximizeOptions m;
    m.multistarts = o.multistarts;
    m.max_iters = o.max_iters;
    m.tol = o.tol;
    m.seed = o.seed;
    m.threads = o.threads;
    return m;
}

/// Grid of Wigner angles the sweep visits, in order.
inline std::vector<double> omega_grid(const RunConfig& c) {
    if (c.sweep.mode == SweepMode::omega) return linear_grid(c.sweep.omega_min, c.sweep.omega_max, c.sweep.steps);
    std::vector<double> g;
    for (double v : linear_grid(c.sweep.speed_min, c.sweep.speed_max, c.sweep.steps))
        g.push_back(wigner_angle(*c.scenario.particle_speed, v));
    return g;
}

/// Wigner angle evaluated by the `point` command: derived from the two speeds
/// when both are given, sweep.omega_min otherwise.
inline double point_omega(const RunConfig& c) {
    if (c.scenario.particle_speed && c.scenario.observer_speed)
        return wigner_angle(*c.scenario.particle_speed, *c.scenario.observer_speed);
    return c.sweep.omega_min;
}

inline std::vector<SweepPoint> run_sweep(const RunConfig& c) {
    validate(c);
    const MomentumScenario s = build_scenario(c.scenario);
    const auto grid = omega_grid(c);
    return sweep(functional_for(s.n_qubits()), s, grid, maximize_options(c.optimizer));
}

inline SweepPoint run_point(const RunConfig& c) {
    validate(c);
    const MomentumScenario s = build_scenario(c.scenario);
    const double omega = point_omega(c);
    const auto grid = std::vector<double>{omega};
    return sweep(functional_for(s.n_qubits()), s, grid, maximize_options(c.optimizer)).front();
}

} // namespace wbell

#endif // WBELL_CONFIG_HPP
