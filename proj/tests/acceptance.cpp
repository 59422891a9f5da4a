// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "support/oracles.hpp"
#include "wbell/wbell.hpp"

using namespace wbell;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Curve {
    std::vector<double> omega, value;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

Curve read_curve(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("missing " + p.string());
    Curve c;
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        const auto a = line.find(',');
        const auto b = line.find(',', a + 1);
        c.omega.push_back(std::stod(line.substr(0, a)));
        c.value.push_back(std::stod(line.substr(a + 1, b - a - 1)));
    }
    if (c.value.empty()) throw std::runtime_error("empty " + p.string());
    return c;
}

double min_of(const Curve& c) { return *std::min_element(c.value.begin(), c.value.end()); }

// Shared state: the figure outputs produced for criterion 10 feed criteria 2-5.
fs::path g_figdir;
double g_figure_seconds = 0.0;
bool g_figures_identical = false;
std::string g_figure_error;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WBELL_CLI_PATH) + " " + args + " > /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void produce_figures(const fs::path& root) {
    const fs::path a = root / "run1", b = root / "run2";
    const auto t0 = Clock::now();
    for (const char* p : {"fig1", "fig2", "fig3", "fig4"})
        if (run_cli(std::string("figures ") + p + " --seed 7 --out " + a.string()) != 0) {
            g_figure_error = std::string("cli failed on ") + p;
            return;
        }
    g_figure_seconds = seconds_since(t0);
    for (const char* p : {"fig1", "fig2", "fig3", "fig4"})
        if (run_cli(std::string("figures ") + p + " --seed 7 --out " + b.string()) != 0) {
            g_figure_error = std::string("cli rerun failed on ") + p;
            return;
        }
    g_figdir = a;
    std::size_t files = 0;
    g_figures_identical = true;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        const fs::path other = b / e.path().filename();
        if (!fs::exists(other) || read_file(e.path()) != read_file(other)) g_figures_identical = false;
    }
    if (files != 34 || std::distance(fs::directory_iterator(b), fs::directory_iterator{}) != 34) {
        g_figures_identical = false;
        g_figure_error = "expected 34 curve files per run, got " + std::to_string(files);
    }
}

Outcome c1_flat_curve() {
    RunConfig c;
    c.scenario.setting = MomentumSetting::two_same;
    c.scenario.theta_m = c.scenario.theta_s = kPi / 4;
    c.sweep.steps = 64;
    const auto t0 = Clock::now();
    const auto pts = run_sweep(c);
    const double secs = seconds_since(t0);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(p.value - std::sqrt(2.0)));
    return {pts.size() == 64 && worst <= 1e-4 && secs < 10.0,
            "max |I2 - sqrt2| = " + fmt("%.3g", worst) + " (tol 1e-4), " + fmt("%.2f", secs) + " s (limit 10 s)"};
}

Outcome c2_lhv_region() {
    const auto thin = read_curve(g_figdir / "fig1_two-opposite_tm-pi4_ts-pi16.csv");
    const auto full = read_curve(g_figdir / "fig1_two-opposite_tm-pi4_ts-pi4.csv");
    // interior interval: two or more consecutive non-endpoint grid points below 1
    std::size_t run = 0, best_run = 0;
    for (std::size_t i = 1; i + 1 < thin.value.size(); ++i) {
        run = thin.value[i] < 1.0 ? run + 1 : 0;
        best_run = std::max(best_run, run);
    }
    const double full_min = min_of(full);
    return {best_run >= 2 && full_min >= 1.0 - 1e-6,
            "pi/16 curve: min " + fmt("%.6f", min_of(thin)) + ", " + std::to_string(best_run) +
                " consecutive interior points < 1; pi/4 curve min " + fmt("%.9f", full_min) + " (>= 1 - 1e-6)"};
}

Outcome c3_ghz_robust() {
    const auto c = read_curve(g_figdir / "fig2_tm-pi4_ts-pi128.csv");
    const double m = min_of(c);
    return {m > 1.0, "min I3 = " + fmt("%.6f", m) + " over " + std::to_string(c.value.size()) + " points (> 1)"};
}

Outcome c4_w_minimum() {
    const auto c = read_curve(g_figdir / "fig3_tm-pi4_ts-15pi32_ps-pi32.csv");
    const auto it = std::min_element(c.value.begin(), c.value.end());
    const double m = *it, at = c.omega[static_cast<std::size_t>(it - c.value.begin())];
    return {std::abs(m - 0.9997) <= 0.002 && std::abs(at - 0.64) <= 0.05,
            "min I3 = " + fmt("%.6f", m) + " (0.9997 +- 0.002) at omega = " + fmt("%.4f", at) + " (0.64 +- 0.05)"};
}

Outcome c5_alternative_setting() {
    double max_gap = 0.0, fig4_min = 1e9;
    for (const auto& curve : figure_curves("fig2")) {
        const auto a = read_curve(g_figdir / (curve.name + ".csv"));
        const std::string alt = "fig4" + curve.name.substr(4);
        const auto b = read_curve(g_figdir / (alt + ".csv"));
        for (std::size_t i = 0; i < std::min(a.value.size(), b.value.size()); ++i)
            max_gap = std::max(max_gap, std::abs(a.value[i] - b.value[i]));
        fig4_min = std::min(fig4_min, min_of(b));
    }
    return {max_gap > 0.01 && fig4_min > 1.0,
            "max pointwise gap = " + fmt("%.4f", max_gap) + " (> 0.01), min over all curves = " +
                fmt("%.10f", fig4_min) + " (> 1)"};
}

Outcome c6_oracle() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> rank(1, 4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SpinDensity rho(oracle::random_density(4, rank(rng), rng));
        worst = std::max(worst, std::abs(maximize(chsh(), rho).value - chsh_oracle(rho)));
    }
    double worst_lu = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto m = oracle::random_density(4, rank(rng), rng);
        const auto u = kron(oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
        const SpinDensity rho(m), moved(u * m * u.adjoint());
        worst_lu = std::max(worst_lu, std::abs(chsh_oracle(rho) - chsh_oracle(moved)));
    }
    return {worst <= 1e-4 && worst_lu <= 1e-10,
            "max |maximize - oracle| = " + fmt("%.3g", worst) + " (tol 1e-4), LU drift " + fmt("%.3g", worst_lu) +
                " (tol 1e-10)"};
}

Outcome c7_brute_force() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(0.0, kPi / 2);
    double worst = 0.0;
    int cases = 0;
    for (auto setting : {MomentumSetting::two_opposite, MomentumSetting::two_same, MomentumSetting::three_symmetric,
                         MomentumSetting::three_same})
        for (int t = 0; t < 20; ++t) {
            const MomentumScenario s(make_momentum_branches(setting, ang(rng)),
                                     oracle::random_state(std::size_t{1} << qubit_count(setting), rng));
            const double om = ang(rng) * 0.999;
            const auto oracle = oracle::brute_force_spin_state(s.branches(), s.spin_state(), om);
            worst = std::max(worst, max_abs_diff(transform_scenario(s, om).matrix(), oracle));
            ++cases;
        }
    return {worst <= 1e-10, std::to_string(cases) + " cases, max entry diff " + fmt("%.3g", worst) + " (tol 1e-10)"};
}

Outcome c8_relativistic_observable() {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> sp(0.0, 0.999);
    double worst_ev = 0.0, worst_norm = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a = oracle::random_unit(rng);
        const Velocity w(sp(rng) * oracle::random_unit(rng));
        const auto op = relativistic_spin_operator(a, w);
        const auto ev = hermitian_eigenvalues(op);
        worst_ev = std::max({worst_ev, std::abs(ev[0] - 1.0), std::abs(ev[1] + 1.0)});
        const auto c = pauli_coefficients(op);
        const double norm = std::sqrt(std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]));
        worst_norm = std::max({worst_norm, std::abs(norm - 1.0), std::abs(c[0])});
    }
    return {worst_ev <= 1e-10 && worst_norm <= 1e-10,
            "eigenvalue error " + fmt("%.3g", worst_ev) + ", coefficient-norm error " + fmt("%.3g", worst_norm) +
                " (tol 1e-10)"};
}

Outcome c9_kinematics() {
    bool zero = true;
    for (double v : {0.0, 0.3, 0.9, 0.999}) zero = zero && wigner_angle(0.0, v) == 0.0 && wigner_angle(v, 0.0) == 0.0;
    const double w = wigner_angle(0.6, 0.8);
    bool monotone = true;
    auto speed = [](int i) { return 0.99 * i / 49.0; };
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            if (i > 0) monotone = monotone && wigner_angle(speed(i), speed(j)) >= wigner_angle(speed(i - 1), speed(j));
            if (j > 0) monotone = monotone && wigner_angle(speed(i), speed(j)) >= wigner_angle(speed(i), speed(j - 1));
        }
    return {zero && std::abs(w - 0.3303) <= 1e-4 && monotone,
            std::string("omega(0,v) = 0: ") + (zero ? "yes" : "no") + ", omega(0.6,0.8) = " + fmt("%.6f", w) +
                ", monotone on 50x50: " + (monotone ? "yes" : "no")};
}

Outcome c10_determinism() {
    if (!g_figure_error.empty()) return {false, g_figure_error};
    return {g_figures_identical && g_figure_seconds < 300.0,
            std::string("rerun byte-identical: ") + (g_figures_identical ? "yes" : "no") + ", four figures in " +
                fmt("%.1f", g_figure_seconds) + " s (limit 300 s)"};
}

} // namespace

int main() {
    const fs::path root = fs::temp_directory_path() / ("wbell_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::printf("producing figures fig1..fig4 twice (seed 7)...\n");
    std::fflush(stdout);
    produce_figures(root);

    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"flat curve for maximally entangled spin", c1_flat_curve},
        {"LHV region in the two-opposite setting", c2_lhv_region},
        {"GHZ robustness at theta_s = pi/128", c3_ghz_robust},
        {"W-state sweep minimum", c4_w_minimum},
        {"alternative three-particle setting", c5_alternative_setting},
        {"CHSH maximizer matches the analytic oracle", c6_oracle},
        {"branch mixture matches brute-force partial trace", c7_brute_force},
        {"relativistic spin observable", c8_relativistic_observable},
        {"Wigner-angle kinematics", c9_kinematics},
        {"determinism and runtime of the figure presets", c10_determinism},
    };
    int failed = 0, n = 0;
    for (const auto& [name, check] : criteria) {
        ++n;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    }
    fs::remove_all(root);
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
