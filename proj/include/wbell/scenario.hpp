#ifndef WBELL_SCENARIO_HPP
#define WBELL_SCENARIO_HPP

// Momentum (x) spin initial states and the reduced spin state seen by an
// observer boosted along +x.
//
// Momentum kets are orthonormal labels. A boost maps distinct momentum tuples
// to distinct tuples, so after tracing out momentum the cross terms between
// branches vanish and the reduced state is the mixture
//
//     rho'_spin = sum_b |c_b|^2  U_b rho_spin U_b^dagger,
//     U_b = (x)_k D(omega, x_hat x dir_{b,k}).

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wbell/error.hpp"
#include "wbell/linalg.hpp"
#include "wbell/relativity.hpp"

namespace wbell {

/// Tolerance for "direction lies in the yz-plane".
inline constexpr double kPlaneTol = 1e-9;
/// Tolerance on unit norms and total branch weight.
inline constexpr double kNormTol = 1e-12;
/// Largest accepted eigenvalue deficit of a density matrix.
inline constexpr double kPsdTol = 1e-10;

/// Observer boost direction.
inline const Vec3& observer_axis() {
    static const Vec3 x = Vec3::UnitX();
    return x;
}

struct MomentumBranch {
    cplx amplitude;
    std::vector<Vec3> directions; // one unit vector per particle
};

enum class MomentumSetting {
    two_opposite,    // p1 = -p2 = z
    two_same,        // p1 = p2 = z
    three_symmetric, // z, (0, sqrt3/2, -1/2), (0, -sqrt3/2, -1/2)
    three_same,      // p1 = p2 = p3 = z
};

inline std::string_view to_string(MomentumSetting s) {
    switch (s) {
    case MomentumSetting::two_opposite: return "two-opposite";
    case MomentumSetting::two_same: return "two-same";
    case MomentumSetting::three_symmetric: return "three-symmetric";
    case MomentumSetting::three_same: return "three-same";
    }
    return "?";
}

inline MomentumSetting parse_momentum_setting(std::string_view name) {
    for (auto s : {MomentumSetting::two_opposite, MomentumSetting::two_same, MomentumSetting::three_symmetric,
                   MomentumSetting::three_same})
        if (to_string(s) == name) return s;
    throw DomainError("unknown momentum setting '" + std::string(name) +
                      "' (expected two-opposite, two-same, three-symmetric or three-same)");
}

inline int qubit_count(MomentumSetting s) {
    return (s == MomentumSetting::two_opposite || s == MomentumSetting::two_same) ? 2 : 3;
}

/// Branch 1 carries the setting's directions with amplitude cos(theta_m);
/// branch 2 carries their negations with amplitude sin(theta_m).
inline std::vector<MomentumBranch> make_momentum_branches(MomentumSetting setting, double theta_m) {
    const Vec3 z = Vec3::UnitZ();
    const double h = std::numbers::sqrt3 / 2.0;
    std::vector<Vec3> dirs;
    switch (setting) {
    case MomentumSetting::two_opposite: dirs = {z, -z}; break;
    case MomentumSetting::two_same: dirs = {z, z}; break;
    case MomentumSetting::three_symmetric: dirs = {z, Vec3(0.0, h, -0.5), Vec3(0.0, -h, -0.5)}; break;
    case MomentumSetting::three_same: dirs = {z, z, z}; break;
    default: throw DomainError("make_momentum_branches: unknown setting");
    }
    std::vector<Vec3> neg;
    neg.reserve(dirs.size());
    for (const auto& d : dirs) neg.push_back(-d);
    return {MomentumBranch{std::cos(theta_m), std::move(dirs)}, MomentumBranch{std::sin(theta_m), std::move(neg)}};
}

/// cos(theta_s)|0...0> + sin(theta_s)|1...1> on n in {2, 3} qubits.
inline StateVector make_generalized_ghz_spin(int n, double theta_s) {
    if (n != 2 && n != 3) throw DomainError("make_generalized_ghz_spin: n must be 2 or 3");
    StateVector::Storage v = StateVector::Storage::Zero(1 << n);
    v(0) = std::cos(theta_s);
    v((1 << n) - 1) = std::sin(theta_s);
    return StateVector(std::move(v));
}

/// sin(theta_s)cos(phi_s)|001> + sin(theta_s)sin(phi_s)|010> + cos(theta_s)|100>.
inline StateVector make_generalized_w_spin(double theta_s, double phi_s) {
    StateVector::Storage v = StateVector::Storage::Zero(8);
    v(1) = std::sin(theta_s) * std::cos(phi_s);
    v(2) = std::sin(theta_s) * std::sin(phi_s);
    v(4) = std::cos(theta_s);
    return StateVector(std::move(v));
}

/// Validated momentum superposition times a spin state. Branches with equal
/// direction tuples are merged by adding amplitudes.
class MomentumScenario {
public:
    MomentumScenario(std::vector<MomentumBranch> branches, StateVector spin)
        : spin_(std::move(spin)) {
        if (branches.empty()) throw DomainError("MomentumScenario: no momentum branches");
        n_ = static_cast<int>(branches.front().directions.size());
        if (n_ != 2 && n_ != 3) throw DomainError("MomentumScenario: only 2 or 3 qubits are supported");
        if (spin_.dim() != (std::size_t{1} << n_))
            throw DimensionError("MomentumScenario: spin state dimension " + std::to_string(spin_.dim()) +
                                 " does not match " + std::to_string(n_) + " qubits");

        for (auto& b : branches) {
            if (static_cast<int>(b.directions.size()) != n_)
                throw DimensionError("MomentumScenario: branches disagree on the number of particles");
            for (const auto& d : b.directions) {
                if (!d.allFinite() || std::abs(d.norm() - 1.0) > kNormTol)
                    throw DomainError("MomentumScenario: momentum direction is not a unit vector");
                if (std::abs(d.x()) > kPlaneTol)
                    throw DomainError("MomentumScenario: momentum direction must lie in the yz-plane");
            }
            merge_into(branches_, std::move(b));
        }

        double weight = 0.0;
        for (const auto& b : branches_) weight += std::norm(b.amplitude);
        if (std::abs(weight - 1.0) > kNormTol)
            throw DomainError("MomentumScenario: branch weights sum to " + std::to_string(weight) + ", not 1");
    }

    int n_qubits() const noexcept { return n_; }
    const std::vector<MomentumBranch>& branches() const noexcept { return branches_; }
    const StateVector& spin_state() const noexcept { return spin_; }

private:
    static void merge_into(std::vector<MomentumBranch>& out, MomentumBranch b) {
        for (auto& existing : out) {
            bool same = true;
            for (std::size_t k = 0; k < b.directions.size() && same; ++k)
                same = (existing.directions[k] - b.directions[k]).norm() <= kNormTol;
            if (same) {
                existing.amplitude += b.amplitude;
                return;
            }
        }
        out.push_back(std::move(b));
    }

    int n_ = 0;
    std::vector<MomentumBranch> branches_;
    StateVector spin_;
};

/// The paper-style families in one call.
inline MomentumScenario make_ghz_scenario(MomentumSetting setting, double theta_m, double theta_s) {
    return {make_momentum_branches(setting, theta_m), make_generalized_ghz_spin(qubit_count(setting), theta_s)};
}

inline MomentumScenario make_w_scenario(MomentumSetting setting, double theta_m, double theta_s, double phi_s) {
    if (qubit_count(setting) != 3) throw DomainError("make_w_scenario: W states need a three-particle setting");
    return {make_momentum_branches(setting, theta_m), make_generalized_w_spin(theta_s, phi_s)};
}

/// Hermitian, unit-trace, positive semidefinite matrix on 2^N dimensions.
class SpinDensity {
public:
    explicit SpinDensity(ComplexMatrix m) : m_(std::move(m)) {
        const std::size_t d = m_.dim();
        if (d < 2 || (d & (d - 1)) != 0) throw DimensionError("SpinDensity: dimension must be a power of two >= 2");
        if (!is_hermitian(m_)) throw DomainError("SpinDensity: matrix is not Hermitian");
        if (std::abs(m_.trace() - cplx(1.0)) > 1e-10) throw DomainError("SpinDensity: trace is not 1");
        if (hermitian_eigenvalues(m_).back() < -kPsdTol) throw DomainError("SpinDensity: matrix is not PSD");
    }

    static SpinDensity pure(const StateVector& psi) { return SpinDensity(psi.projector()); }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    int n_qubits() const noexcept {
        int n = 0;
        while ((std::size_t{1} << n) < m_.dim()) ++n;
        return n;
    }
    double purity() const { return (m_ * m_).trace().real(); }

private:
    ComplexMatrix m_;
};

/// x_hat x dir: the rotation axis for a particle moving along `dir`.
inline Vec3 wigner_axis(const Vec3& dir) {
    const Vec3 n = observer_axis().cross(dir);
    return n.norm() < kCollinearTol ? Vec3(Vec3::UnitZ()) : Vec3(n.normalized());
}

/// Tensor product of the per-particle spin rotations for one branch.
inline ComplexMatrix branch_unitary(const MomentumBranch& b, double omega) {
    std::vector<ComplexMatrix> factors;
    factors.reserve(b.directions.size());
    for (const auto& d : b.directions) factors.push_back(spin_half_rep(omega, wigner_axis(d)));
    return kron_all(factors);
}

/// Reduced spin state after a boost producing Wigner angle `omega` in [0, pi/2).
inline SpinDensity transform_scenario(const MomentumScenario& s, double omega) {
    if (!std::isfinite(omega) || omega < 0.0 || omega >= std::numbers::pi / 2)
        throw DomainError("transform_scenario: omega must lie in [0, pi/2)");
    const ComplexMatrix rho = s.spin_state().projector();
    ComplexMatrix out(rho.dim());
    for (const auto& b : s.branches()) {
        const double w = std::norm(b.amplitude);
        if (w == 0.0) continue;
        const ComplexMatrix u = branch_unitary(b, omega);
        out += cplx(w) * (u * rho * u.adjoint());
    }
    // Restore exact Hermiticity lost to round-off.
    return SpinDensity(ComplexMatrix(ComplexMatrix::Storage(0.5 * (out.eigen() + out.eigen().adjoint()))));
}

/// Same as transform_scenario with omega derived from the particle and
/// observer speeds.
inline SpinDensity transform_scenario_speeds(const MomentumScenario& s, double particle_speed, double observer_speed) {
    return transform_scenario(s, wigner_angle(particle_speed, observer_speed));
}

} // namespace wbell

#endif // WBELL_SCENARIO_HPP
