#ifndef WBELL_FIGURES_HPP
#define WBELL_FIGURES_HPP

// Preset parameter sets for the four published figure reproductions.
//
//   fig1  two qubits, generalized GHZ spin; opposite and same momentum
//         settings, {theta_m, theta_s} in {pi/4, pi/4}, {pi/4, pi/16}
//   fig2  three qubits, GHZ spin, symmetric momenta; theta_m x theta_s over
//         {pi/4, pi/8, pi/16}^2, plus {pi/4, pi/128}
//   fig3  three qubits, W spin, symmetric momenta; theta_m in
//         {pi/4, pi/8, pi/16} x {theta_s, phi_s} in
//         {arccos(1/sqrt3), pi/4}, {7pi/16, pi/4}, {7pi/16, pi/16},
//         plus {pi/4, 15pi/32, pi/32}
//   fig4  as fig2 with all three momenta along +z

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "wbell/config.hpp"
#include "wbell/report.hpp"

namespace wbell {

inline constexpr std::string_view kFigurePresets[] = {"fig1", "fig2", "fig3", "fig4"};

struct FigureCurve {
    std::string name; // file stem, e.g. fig2_tm-pi4_ts-pi128
    RunConfig config;
};

namespace detail {

struct NamedAngle {
    double value;
    const char* label;
};

inline const NamedAngle kPi4{std::numbers::pi / 4, "pi4"};
inline const NamedAngle kPi8{std::numbers::pi / 8, "pi8"};
inline const NamedAngle kPi16{std::numbers::pi / 16, "pi16"};
inline const NamedAngle kPi128{std::numbers::pi / 128, "pi128"};

inline RunConfig preset_config(const RunConfig& base, StateFamily family, MomentumSetting setting, double theta_m,
                               double theta_s, double phi_s = std::numbers::pi / 4) {
    RunConfig c = base;
    c.scenario = ScenarioSpec{};
    c.scenario.family = family;
    c.scenario.setting = setting;
    c.scenario.theta_m = theta_m;
    c.scenario.theta_s = theta_s;
    c.scenario.phi_s = phi_s;
    c.sweep.mode = SweepMode::omega;
    return c;
}

inline std::vector<FigureCurve> ghz3_grid(const std::string& fig, MomentumSetting setting, const RunConfig& base) {
    std::vector<FigureCurve> out;
    for (const auto& tm : {kPi4, kPi8, kPi16})
        for (const auto& ts : {kPi4, kPi8, kPi16})
            out.push_back({fig + "_tm-" + tm.label + "_ts-" + ts.label,
                           preset_config(base, StateFamily::ghz, setting, tm.value, ts.value)});
    out.push_back({fig + "_tm-pi4_ts-pi128",
                   preset_config(base, StateFamily::ghz, setting, kPi4.value, kPi128.value)});
    return out;
}

} // namespace detail

/// Curves of a preset, each a complete run configuration derived from `base`
/// (which supplies the grid, optimizer and output options).
inline std::vector<FigureCurve> figure_curves(std::string_view preset, const RunConfig& base = {}) {
    using namespace detail;
    std::vector<FigureCurve> out;
    if (preset == "fig1") {
        for (auto setting : {MomentumSetting::two_opposite, MomentumSetting::two_same})
            for (const auto& ts : {kPi4, kPi16})
                out.push_back({"fig1_" + std::string(to_string(setting)) + "_tm-pi4_ts-" + ts.label,
                               preset_config(base, StateFamily::ghz, setting, kPi4.value, ts.value)});
    } else if (preset == "fig2") {
        out = ghz3_grid("fig2", MomentumSetting::three_symmetric, base);
    } else if (preset == "fig3") {
        const NamedAngle equal{std::acos(1.0 / std::sqrt(3.0)), "acos-inv-sqrt3"};
        const NamedAngle p7_16{7 * std::numbers::pi / 16, "7pi16"};
        const std::pair<NamedAngle, NamedAngle> spins[] = {{equal, kPi4}, {p7_16, kPi4}, {p7_16, kPi16}};
        for (const auto& tm : {kPi4, kPi8, kPi16})
            for (const auto& [ts, ps] : spins)
                out.push_back({"fig3_tm-" + std::string(tm.label) + "_ts-" + ts.label + "_ps-" + ps.label,
                               preset_config(base, StateFamily::w, MomentumSetting::three_symmetric, tm.value,
                                             ts.value, ps.value)});
        out.push_back({"fig3_tm-pi4_ts-15pi32_ps-pi32",
                       preset_config(base, StateFamily::w, MomentumSetting::three_symmetric, kPi4.value,
                                     15 * std::numbers::pi / 32, std::numbers::pi / 32)});
    } else if (preset == "fig4") {
        out = ghz3_grid("fig4", MomentumSetting::three_same, base);
    } else {
        std::string valid;
        for (auto p : kFigurePresets) valid += (valid.empty() ? "" : ", ") + std::string(p);
        throw ConfigError("preset", "unknown preset '" + std::string(preset) + "' (valid: " + valid + ")");
    }
    return out;
}

struct FigureResult {
    std::vector<PlotCurve> curves;
    std::vector<std::filesystem::path> files;
};

/// Runs every curve of a preset and writes one data file per curve into
/// base.output.dir (plus <preset>.svg when base.output.svg is set).
inline FigureResult run_figure(std::string_view preset, const RunConfig& base) {
    FigureResult res;
    const std::filesystem::path dir = base.output.dir;
    for (const auto& curve : figure_curves(preset, base)) {
        auto points = run_sweep(curve.config);
        const bool csv = base.output.format == OutputFormat::csv;
        const auto path = dir / (curve.name + (csv ? ".csv" : ".json"));
        write_file_atomic(path, csv ? to_csv(points) : to_json(points).dump(2) + "\n");
        res.files.push_back(path);
        res.curves.push_back({curve.name, std::move(points)});
    }
    if (base.output.svg) {
        const auto path = dir / (std::string(preset) + ".svg");
        write_file_atomic(path, to_svg(std::string(preset), res.curves));
        res.files.push_back(path);
    }
    return res;
}

} // namespace wbell

#endif // WBELL_FIGURES_HPP
