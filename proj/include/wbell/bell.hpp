#ifndef WBELL_BELL_HPP
#define WBELL_BELL_HPP

// Correlation-form Bell functionals I = sum_t T_t Q_t over setting-index
// tuples (0 = no measurement, i.e. identity on that party), their evaluation
// on spin states and their maximization over measurement directions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "wbell/error.hpp"
#include "wbell/linalg.hpp"
#include "wbell/nelder_mead.hpp"
#include "wbell/relativity.hpp"
#include "wbell/scenario.hpp"

namespace wbell {

inline constexpr int kMaxParties = 3;

struct BellTerm {
    std::array<int, kMaxParties> settings{}; // index per party, 0 = identity
    double weight = 0.0;
};

class BellFunctional {
public:
    BellFunctional(int n_parties, int n_settings, std::vector<BellTerm> terms, double classical_bound = 1.0)
        : n_parties_(n_parties), n_settings_(n_settings), terms_(std::move(terms)), classical_bound_(classical_bound) {
        if (n_parties < 1 || n_parties > kMaxParties) throw DomainError("BellFunctional: 1..3 parties supported");
        if (n_settings < 1) throw DomainError("BellFunctional: need at least one setting per party");
        for (const auto& t : terms_)
            for (int k = 0; k < kMaxParties; ++k) {
                const int s = t.settings[static_cast<std::size_t>(k)];
                if (s < 0 || s > n_settings || (k >= n_parties && s != 0))
                    throw DomainError("BellFunctional: setting index out of range");
            }
    }

    int n_parties() const noexcept { return n_parties_; }
    int n_settings() const noexcept { return n_settings_; }
    const std::vector<BellTerm>& terms() const noexcept { return terms_; }
    double classical_bound() const noexcept { return classical_bound_; }

    /// Sum of |T| over all terms; an upper bound on |I| for any state.
    double weight_norm() const {
        double s = 0.0;
        for (const auto& t : terms_) s += std::abs(t.weight);
        return s;
    }

private:
    int n_parties_;
    int n_settings_;
    std::vector<BellTerm> terms_;
    double classical_bound_;
};

/// I2 = (Q11 + Q12 + Q21 - Q22) / 2, classical bound 1, quantum maximum sqrt(2).
inline BellFunctional chsh() {
    const double h = 0.5;
    return {2, 2, {{{1, 1, 0}, h}, {{1, 2, 0}, h}, {{2, 1, 0}, h}, {{2, 2, 0}, -h}}};
}

/// Three-party, two-setting inequality with one- and three-body correlators.
/// All weights are +-1/3; classical bound 1.
inline BellFunctional i3() {
    const double t = 1.0 / 3.0;
    std::vector<BellTerm> terms;
    for (auto s : {std::array{2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}})
        terms.push_back({s, t});
    for (auto s : {std::array{1, 1, 1}, {2, 2, 2}, {1, 1, 0}, {1, 2, 0}, {2, 1, 0}, {1, 0, 1}, {1, 0, 2}, {2, 0, 1},
                   {0, 1, 1}, {0, 1, 2}, {0, 2, 1}})
        terms.push_back({s, -t});
    return {3, 2, std::move(terms)};
}

/// The functional used for n qubits: CHSH for 2, I3 for 3.
inline BellFunctional functional_for(int n_qubits) {
    if (n_qubits == 2) return chsh();
    if (n_qubits == 3) return i3();
    throw DomainError("functional_for: only 2 or 3 qubits");
}

/// Polar angle theta from +z, azimuth phi from +x.
struct SphericalAngles {
    double theta = 0.0;
    double phi = 0.0;

    Vec3 direction() const {
        const double st = std::sin(theta);
        return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    }
};

/// Two measurement directions per party.
class MeasurementSettings {
public:
    static constexpr int kSettingsPerParty = 2;
    static constexpr std::size_t kParamsPerParty = 2 * kSettingsPerParty;

    explicit MeasurementSettings(int n_parties) : angles_(static_cast<std::size_t>(check_parties(n_parties))) {}

    /// Layout: party-major, setting-minor, (theta, phi) pairs.
    static MeasurementSettings from_params(int n_parties, std::span<const double> params) {
        MeasurementSettings m(n_parties);
        if (params.size() != m.param_count()) throw DimensionError("MeasurementSettings: wrong parameter count");
        for (std::size_t k = 0; k < m.angles_.size(); ++k)
            for (std::size_t i = 0; i < kSettingsPerParty; ++i)
                m.angles_[k][i] = {params[k * kParamsPerParty + 2 * i], params[k * kParamsPerParty + 2 * i + 1]};
        return m;
    }

    std::vector<double> params() const {
        std::vector<double> p;
        p.reserve(param_count());
        for (const auto& party : angles_)
            for (const auto& a : party) {
                p.push_back(a.theta);
                p.push_back(a.phi);
            }
        return p;
    }

    int n_parties() const noexcept { return static_cast<int>(angles_.size()); }
    std::size_t param_count() const noexcept { return angles_.size() * kParamsPerParty; }

    /// setting is 1-based, matching the functional's indices.
    SphericalAngles& angles(int party, int setting) { return angles_.at(idx(party)).at(sidx(setting)); }
    const SphericalAngles& angles(int party, int setting) const { return angles_.at(idx(party)).at(sidx(setting)); }
    Vec3 direction(int party, int setting) const { return angles(party, setting).direction(); }

    void set_direction(int party, int setting, const Vec3& d) {
        detail::require_unit(d, "MeasurementSettings::set_direction", 1e-12);
        angles(party, setting) = {std::acos(std::clamp(d.z(), -1.0, 1.0)), std::atan2(d.y(), d.x())};
    }

private:
    static int check_parties(int n) {
        if (n < 1 || n > kMaxParties) throw DomainError("MeasurementSettings: 1..3 parties supported");
        return n;
    }
    static std::size_t idx(int party) { return static_cast<std::size_t>(party); }
    static std::size_t sidx(int setting) {
        if (setting < 1 || setting > kSettingsPerParty) throw DomainError("MeasurementSettings: setting must be 1 or 2");
        return static_cast<std::size_t>(setting - 1);
    }

    std::vector<std::array<SphericalAngles, kSettingsPerParty>> angles_;
};

/// Q = tr[rho (x)_k O_k] with O_k = a_k . sigma, or the identity where the
/// entry is empty.
inline double correlation(const SpinDensity& rho, std::span<const std::optional<Vec3>> directions) {
    if (static_cast<int>(directions.size()) != rho.n_qubits())
        throw DimensionError("correlation: " + std::to_string(directions.size()) + " directions for " +
                             std::to_string(rho.n_qubits()) + " qubits");
    std::vector<ComplexMatrix> ops;
    ops.reserve(directions.size());
    for (const auto& d : directions) {
        if (d) {
            detail::require_unit(*d, "correlation", 1e-10);
            ops.push_back(dot_sigma(*d));
        } else {
            ops.push_back(pauli_i());
        }
    }
    return real_expectation(rho.matrix(), kron_all(ops));
}

inline double correlation(const SpinDensity& rho, std::initializer_list<std::optional<Vec3>> directions) {
    return correlation(rho, std::span<const std::optional<Vec3>>(directions.begin(), directions.size()));
}

/// sum_t T_t Q_t evaluated by explicit operator traces.
inline double evaluate(const BellFunctional& f, const SpinDensity& rho, const MeasurementSettings& m) {
    if (f.n_parties() != rho.n_qubits() || f.n_parties() != m.n_parties())
        throw DimensionError("evaluate: functional, state and settings disagree on the number of parties");
    double sum = 0.0;
    std::vector<std::optional<Vec3>> dirs(static_cast<std::size_t>(f.n_parties()));
    for (const auto& t : f.terms()) {
        for (int k = 0; k < f.n_parties(); ++k) {
            const int s = t.settings[static_cast<std::size_t>(k)];
            dirs[static_cast<std::size_t>(k)] = s == 0 ? std::nullopt : std::optional<Vec3>(m.direction(k, s));
        }
        sum += t.weight * correlation(rho, dirs);
    }
    return sum;
}

/// Real Pauli correlation tensor R[a1..aN] = tr[rho sigma_a1 (x) .. (x) sigma_aN],
/// flattened with party 0 most significant. Evaluating a functional through R
/// costs a few hundred flops, which is what the optimizer runs on.
class CorrelationTensor {
public:
    explicit CorrelationTensor(const SpinDensity& rho) : n_(rho.n_qubits()) {
        if (n_ < 1 || n_ > kMaxParties) throw DimensionError("CorrelationTensor: 1..3 qubits supported");
        const std::size_t size = std::size_t{1} << (2 * n_);
        r_.resize(size);
        std::vector<ComplexMatrix> ops;
        for (std::size_t flat = 0; flat < size; ++flat) {
            ops.clear();
            for (int k = n_ - 1; k >= 0; --k) ops.push_back(pauli(static_cast<int>((flat >> (2 * k)) & 3U)));
            r_[flat] = real_expectation(rho.matrix(), kron_all(ops));
        }
    }

    int n_parties() const noexcept { return n_; }
    double at(std::span<const int> paulis) const {
        std::size_t flat = 0;
        for (int p : paulis) flat = (flat << 2) | static_cast<std::size_t>(p);
        return r_.at(flat);
    }

    /// Evaluates f with settings given as raw angle parameters (see MeasurementSettings).
    double value(const BellFunctional& f, std::span<const double> params) const {
        const std::size_t n = static_cast<std::size_t>(n_);
        // v[k][s] is the 4-vector multiplying sigma_0..3 for party k, setting s.
        std::array<std::array<std::array<double, 4>, 3>, kMaxParties> v{};
        for (std::size_t k = 0; k < n; ++k) {
            v[k][0] = {1.0, 0.0, 0.0, 0.0};
            for (std::size_t s = 1; s <= 2; ++s) {
                const double th = params[k * 4 + 2 * (s - 1)];
                const double ph = params[k * 4 + 2 * (s - 1) + 1];
                const double st = std::sin(th);
                v[k][s] = {0.0, st * std::cos(ph), st * std::sin(ph), std::cos(th)};
            }
        }

        double sum = 0.0;
        if (n_ == 2) {
            // q[s1][s2] = v0[s1]^T R v1[s2]
            std::array<std::array<double, 4>, 3> half{};
            for (std::size_t s = 0; s < 3; ++s)
                for (std::size_t b = 0; b < 4; ++b) {
                    double acc = 0.0;
                    for (std::size_t a = 0; a < 4; ++a) acc += v[0][s][a] * r_[a * 4 + b];
                    half[s][b] = acc;
                }
            for (const auto& t : f.terms()) {
                const auto& h = half[static_cast<std::size_t>(t.settings[0])];
                const auto& w = v[1][static_cast<std::size_t>(t.settings[1])];
                sum += t.weight * (h[0] * w[0] + h[1] * w[1] + h[2] * w[2] + h[3] * w[3]);
            }
            return sum;
        }
        if (n_ == 3) {
            std::array<std::array<double, 16>, 3> first{};
            for (std::size_t s = 0; s < 3; ++s)
                for (std::size_t bc = 0; bc < 16; ++bc) {
                    double acc = 0.0;
                    for (std::size_t a = 0; a < 4; ++a) acc += v[0][s][a] * r_[a * 16 + bc];
                    first[s][bc] = acc;
                }
            std::array<std::array<std::array<double, 4>, 3>, 3> second{};
            for (std::size_t s1 = 0; s1 < 3; ++s1)
                for (std::size_t s2 = 0; s2 < 3; ++s2)
                    for (std::size_t c = 0; c < 4; ++c) {
                        double acc = 0.0;
                        for (std::size_t b = 0; b < 4; ++b) acc += v[1][s2][b] * first[s1][b * 4 + c];
                        second[s1][s2][c] = acc;
                    }
            for (const auto& t : f.terms()) {
                const auto& h = second[static_cast<std::size_t>(t.settings[0])][static_cast<std::size_t>(t.settings[1])];
                const auto& w = v[2][static_cast<std::size_t>(t.settings[2])];
                sum += t.weight * (h[0] * w[0] + h[1] * w[1] + h[2] * w[2] + h[3] * w[3]);
            }
            return sum;
        }
        // single party
        for (const auto& t : f.terms()) {
            const auto& w = v[0][static_cast<std::size_t>(t.settings[0])];
            sum += t.weight * (r_[0] * w[0] + r_[1] * w[1] + r_[2] * w[2] + r_[3] * w[3]);
        }
        return sum;
    }

private:
    int n_;
    std::vector<double> r_;
};

struct MaximizeOptions {
    std::size_t multistarts = 24;
    std::size_t max_iters = 2000;
    double tol = 1e-9;
    std::uint64_t seed = 7;
    /// Worker threads for the multistarts; 0 picks hardware concurrency.
    unsigned threads = 1;
    /// Extra starting points tried before the random ones (e.g. the previous
    /// sweep point's optimum).
    std::vector<MeasurementSettings> warm_starts;
};

struct MaximizeResult {
    double value = 0.0;
    MeasurementSettings settings{1};
    bool converged = false;
    std::size_t best_start = 0; // index into warm starts followed by random starts
};

namespace detail {

/// Random direction angles drawn uniformly on the sphere, one stream per start.
inline std::vector<double> random_start(int n_parties, std::uint64_t seed, std::uint64_t start_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(start_index), static_cast<std::uint32_t>(start_index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> p;
    const std::size_t dirs = static_cast<std::size_t>(n_parties) * MeasurementSettings::kSettingsPerParty;
    for (std::size_t i = 0; i < dirs; ++i) {
        p.push_back(std::acos(1.0 - 2.0 * unit(rng)));
        p.push_back(2.0 * std::numbers::pi * unit(rng));
    }
    return p;
}

struct StartOutcome {
    std::vector<double> x;
    double value = -std::numeric_limits<double>::infinity();
    bool converged = false;
};

/// Nelder-Mead, then one more pass from the optimum with a fresh simplex;
/// a collapsed simplex can stall short of a stationary point.
inline StartOutcome climb(const CorrelationTensor& tensor, const BellFunctional& f, std::vector<double> x0,
                          const MaximizeOptions& opts) {
    auto neg = [&](std::span<const double> x) { return -tensor.value(f, x); };
    NelderMeadOptions nm{opts.max_iters, opts.tol, 0.5};
    auto r = nelder_mead(neg, x0, nm);
    nm.initial_step = 0.05;
    auto polished = nelder_mead(neg, r.x, nm);
    if (polished.value <= r.value) r = std::move(polished);
    return {std::move(r.x), -r.value, r.converged};
}

} // namespace detail

/// Maximizes f over all measurement directions by multistart simplex search.
/// Deterministic for fixed options, independent of the thread count: ties go
/// to the lowest start index.
inline MaximizeResult maximize(const BellFunctional& f, const SpinDensity& rho, const MaximizeOptions& opts = {}) {
    if (f.n_parties() != rho.n_qubits())
        throw DimensionError("maximize: functional and state disagree on the number of parties");
    const int n = f.n_parties();
    const CorrelationTensor tensor(rho);

    std::vector<std::vector<double>> starts;
    for (const auto& w : opts.warm_starts) {
        if (w.n_parties() != n) throw DimensionError("maximize: warm start has the wrong number of parties");
        starts.push_back(w.params());
    }
    for (std::size_t j = 0; j < opts.multistarts; ++j) starts.push_back(detail::random_start(n, opts.seed, j));
    if (starts.empty()) starts.push_back(detail::random_start(n, opts.seed, 0));

    std::vector<detail::StartOutcome> out(starts.size());
    unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts.size()));
    if (threads <= 1) {
        for (std::size_t j = 0; j < starts.size(); ++j) out[j] = detail::climb(tensor, f, starts[j], opts);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t j = t; j < starts.size(); j += threads) out[j] = detail::climb(tensor, f, starts[j], opts);
            });
    }

    std::size_t best = 0;
    for (std::size_t j = 1; j < out.size(); ++j)
        if (out[j].value > out[best].value) best = j;

    MaximizeResult res;
    res.value = out[best].value;
    res.settings = MeasurementSettings::from_params(n, out[best].x);
    res.converged = out[best].converged;
    res.best_start = best;
    return res;
}

/// Exact maximum of the normalized CHSH functional for a two-qubit state:
/// sqrt(l1 + l2) for the two largest eigenvalues of T^T T, where
/// T_ij = tr[rho sigma_i (x) sigma_j].
inline double chsh_oracle(const SpinDensity& rho) {
    if (rho.dim() != 4) throw DimensionError("chsh_oracle: expected a two-qubit state");
    double t[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = real_expectation(rho.matrix(), kron(pauli(i + 1), pauli(j + 1)));
    ComplexMatrix tt(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += t[k][i] * t[k][j];
            tt(i, j) = acc;
        }
    const auto ev = hermitian_eigenvalues(tt);
    return std::sqrt(std::max(0.0, ev[0] + ev[1]));
}

struct SweepPoint {
    double omega = 0.0;
    double value = 0.0;
    bool converged = false;
    MeasurementSettings settings{1};
};

/// Per-point seed derived from the run seed, so every grid point is
/// reproducible on its own.
inline std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), 0x5eedU};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (std::uint64_t{words[0]} << 32) | words[1];
}

/// Optimized functional value at each omega of a nondecreasing grid inside
/// [0, pi/2). Each point warm-starts from the previous optimum in addition to
/// fresh random starts.
inline std::vector<SweepPoint> sweep(const BellFunctional& f, const MomentumScenario& scenario,
                                     std::span<const double> omega_grid, const MaximizeOptions& opts = {}) {
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid[i];
        if (!std::isfinite(w) || w < 0.0 || w >= std::numbers::pi / 2)
            throw DomainError("sweep: omega must lie in [0, pi/2)");
        if (i > 0 && w < omega_grid[i - 1]) throw DomainError("sweep: omega grid must be nondecreasing");
    }
    std::vector<SweepPoint> out;
    out.reserve(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        MaximizeOptions o = opts;
        o.seed = point_seed(opts.seed, i);
        if (!out.empty()) o.warm_starts.insert(o.warm_starts.begin(), out.back().settings);
        const SpinDensity rho = transform_scenario(scenario, omega_grid[i]);
        auto r = maximize(f, rho, o);
        out.push_back({omega_grid[i], r.value, r.converged, std::move(r.settings)});
    }
    return out;
}

/// n evenly spaced points from lo to hi inclusive (just lo when n == 1).
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

} // namespace wbell

#endif // WBELL_BELL_HPP
