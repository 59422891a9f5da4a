// wbell: optimized Bell values of boosted momentum-spin states.
//
//   wbell point   --config run.json
//   wbell sweep   --config run.json --out results --format csv --svg
//   wbell figures fig3 --out figures --seed 7
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "wbell/config.hpp"
#include "wbell/figures.hpp"
#include "wbell/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Overrides {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    bool svg = false;
};

wbell::RunConfig load_config(const Overrides& ov) {
    wbell::RunConfig c;
    if (!ov.config_path.empty()) {
        std::ifstream f(ov.config_path);
        if (!f) throw wbell::IoError("cannot read config file " + ov.config_path);
        std::stringstream buf;
        buf << f.rdbuf();
        c = wbell::parse_config_text(buf.str());
    }
    if (ov.out_dir) c.output.dir = *ov.out_dir;
    if (ov.seed) c.optimizer.seed = *ov.seed;
    if (ov.format) c.output.format = wbell::parse_output_format(*ov.format);
    if (ov.threads) c.optimizer.threads = *ov.threads;
    if (ov.svg) c.output.svg = true;
    wbell::validate(c);
    return c;
}

std::string describe_settings(const wbell::MeasurementSettings& m) {
    std::string s;
    for (int k = 0; k < m.n_parties(); ++k)
        for (int i = 1; i <= wbell::MeasurementSettings::kSettingsPerParty; ++i) {
            const auto& a = m.angles(k, i);
            s += "  party " + std::to_string(k + 1) + " setting " + std::to_string(i) +
                 ": theta=" + wbell::format_number(a.theta) + " phi=" + wbell::format_number(a.phi) + "\n";
        }
    return s;
}

void write_points(const wbell::RunConfig& c, const std::string& stem, const std::vector<wbell::SweepPoint>& pts) {
    const std::filesystem::path dir = c.output.dir;
    if (c.output.format == wbell::OutputFormat::csv)
        wbell::write_file_atomic(dir / (stem + ".csv"), wbell::to_csv(pts));
    else
        wbell::write_file_atomic(dir / (stem + ".json"), wbell::to_json(pts).dump(2) + "\n");
    if (c.output.svg) {
        const wbell::PlotCurve curve{stem, pts};
        wbell::write_file_atomic(dir / (stem + ".svg"), wbell::to_svg(stem, std::span(&curve, 1)));
    }
}

int cmd_point(const Overrides& ov) {
    const auto c = load_config(ov);
    const auto p = wbell::run_point(c);
    std::cout << "omega_rad=" << wbell::format_number(p.omega) << " bell_value=" << wbell::format_number(p.value)
              << " converged=" << (p.converged ? 1 : 0) << "\n"
              << describe_settings(p.settings);
    write_points(c, c.output.name + "_point", {p});
    return 0;
}

int cmd_sweep(const Overrides& ov) {
    const auto c = load_config(ov);
    const auto pts = wbell::run_sweep(c);
    write_points(c, c.output.name, pts);
    std::cout << "wrote " << pts.size() << " points to " << c.output.dir << "\n";
    return 0;
}

int cmd_figures(const Overrides& ov, const std::string& preset) {
    const auto c = load_config(ov);
    const auto res = wbell::run_figure(preset, c);
    for (const auto& f : res.files) std::cout << f.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell nonlocality of Lorentz-boosted massive qubits"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides ov;
    std::string out_dir, format;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    app.add_option("--config", ov.config_path, "JSON run configuration");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "optimizer seed");
    auto* format_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* threads_opt = app.add_option("--threads", threads, "worker threads for multistarts (0 = all cores)");
    app.add_flag("--svg", ov.svg, "also write an SVG plot");

    auto* point = app.add_subcommand("point", "optimize a single Wigner angle");
    auto* sweep = app.add_subcommand("sweep", "optimize over a grid of Wigner angles");
    auto* figures = app.add_subcommand("figures", "reproduce a figure preset (fig1..fig4)");
    std::string preset;
    figures->add_option("preset", preset, "fig1, fig2, fig3 or fig4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }
    if (*out_opt) ov.out_dir = out_dir;
    if (*seed_opt) ov.seed = seed;
    if (*format_opt) ov.format = format;
    if (*threads_opt) ov.threads = threads;

    try {
        if (*point) return cmd_point(ov);
        if (*sweep) return cmd_sweep(ov);
        if (*figures) return cmd_figures(ov, preset);
    } catch (const wbell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wbell::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const wbell::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}
