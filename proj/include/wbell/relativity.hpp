#ifndef WBELL_RELATIVITY_HPP
#define WBELL_RELATIVITY_HPP

// Kinematics of two perpendicular boosts: rapidities, the Wigner angle,
// the spin-1/2 representation of the resulting rotation, Einstein velocity
// addition and a relativistic spin observable. Natural units, c = 1.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "wbell/error.hpp"
#include "wbell/linalg.hpp"

namespace wbell {

using Vec3 = Eigen::Vector3d;

/// Largest |u . v| / (|u||v|) accepted as "perpendicular".
inline constexpr double kPerpendicularTol = 1e-9;
/// Cross products shorter than this count as collinear.
inline constexpr double kCollinearTol = 1e-12;

namespace detail {

inline void require_subluminal(double speed, const char* what) {
    if (!std::isfinite(speed) || speed < 0.0)
        throw DomainError(std::string(what) + ": speed must be a finite non-negative number");
    if (speed >= 1.0) throw SuperluminalError(std::string(what) + ": speed " + std::to_string(speed) + " >= 1");
}

inline void require_unit(const Vec3& v, const char* what, double tol = 1e-12) {
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > tol)
        throw DomainError(std::string(what) + ": expected a unit vector");
}

} // namespace detail

/// Velocity as a fraction of c; the norm is strictly below 1.
class Velocity {
public:
    Velocity() : v_(Vec3::Zero()) {}
    explicit Velocity(const Vec3& v) : v_(v) {
        if (!v_.allFinite()) throw DomainError("Velocity: non-finite component");
        if (v_.norm() >= 1.0) throw SuperluminalError("Velocity: |v| = " + std::to_string(v_.norm()) + " >= 1");
    }
    Velocity(double vx, double vy, double vz) : Velocity(Vec3(vx, vy, vz)) {}

    const Vec3& vec() const noexcept { return v_; }
    double speed() const { return v_.norm(); }
    double gamma() const { return 1.0 / std::sqrt(1.0 - v_.squaredNorm()); }

private:
    Vec3 v_;
};

/// xi = artanh(speed), so cosh(xi) is the Lorentz factor.
inline double rapidity(double speed) {
    detail::require_subluminal(speed, "rapidity");
    return std::atanh(speed);
}

/// Wigner angle for a particle with speed u seen by an observer boosted with
/// speed v perpendicular to it: arctan(sinh xi sinh zeta / (cosh xi + cosh zeta)).
/// Symmetric in its arguments, in [0, pi/2).
inline double wigner_angle(double u_speed, double v_speed) {
    detail::require_subluminal(u_speed, "wigner_angle");
    detail::require_subluminal(v_speed, "wigner_angle");
    // cosh = gamma and sinh = gamma * speed; avoids atanh round trips near c.
    const double gu = 1.0 / std::sqrt(1.0 - u_speed * u_speed);
    const double gv = 1.0 / std::sqrt(1.0 - v_speed * v_speed);
    return std::atan((gu * u_speed) * (gv * v_speed) / (gu + gv));
}

/// Rotation by `angle` about the unit `axis`.
struct WignerRotation {
    double angle = 0.0;
    Vec3 axis = Vec3::UnitZ();

    WignerRotation() = default;
    WignerRotation(double angle_, const Vec3& axis_) : angle(angle_), axis(axis_) {
        if (!std::isfinite(angle)) throw DomainError("WignerRotation: non-finite angle");
        detail::require_unit(axis, "WignerRotation axis");
    }

    /// Identity with the conventional axis +z.
    static WignerRotation identity() { return {}; }
};

/// Wigner rotation of a particle moving along `u_dir` seen from a frame boosted
/// along `v_dir`. Only the perpendicular geometry is supported. The axis is
/// v_dir x u_dir.
inline WignerRotation wigner_rotation(const Vec3& u_dir, const Vec3& v_dir, double u_speed, double v_speed) {
    detail::require_unit(u_dir, "wigner_rotation u_dir", 1e-9);
    detail::require_unit(v_dir, "wigner_rotation v_dir", 1e-9);
    const double omega = wigner_angle(u_speed, v_speed);
    if (u_speed == 0.0 || v_speed == 0.0) return WignerRotation::identity();

    const Vec3 n = v_dir.cross(u_dir);
    if (n.norm() < kCollinearTol) return WignerRotation::identity();
    if (std::abs(u_dir.dot(v_dir)) > kPerpendicularTol)
        throw DomainError("wigner_rotation: particle and observer directions must be perpendicular");
    return {omega, n.normalized()};
}

/// n . sigma for a 3-vector n (not necessarily unit).
inline ComplexMatrix dot_sigma(const Vec3& n) {
    return ComplexMatrix{{n.z(), cplx(n.x(), -n.y())}, {cplx(n.x(), n.y()), -n.z()}};
}

/// cos(angle/2) I + i sin(angle/2) n . sigma  (special unitary).
inline ComplexMatrix spin_half_rep(double angle, const Vec3& axis) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const Vec3& n = axis;
    return ComplexMatrix{{cplx(c, s * n.z()), cplx(s * n.y(), s * n.x())},
                         {cplx(-s * n.y(), s * n.x()), cplx(c, -s * n.z())}};
}

inline ComplexMatrix spin_half_rep(const WignerRotation& w) { return spin_half_rep(w.angle, w.axis); }

/// Velocity of an object moving with `u` in a frame that itself moves with `v`:
/// w_par = (v + u_par) / (1 + v.u),  w_perp = u_perp / (gamma_v (1 + v.u)).
inline Velocity einstein_add(const Velocity& v, const Velocity& u) {
    const double vs = v.speed();
    if (vs == 0.0) return u;
    const Vec3 vhat = v.vec() / vs;
    const Vec3 u_par = u.vec().dot(vhat) * vhat;
    const Vec3 u_perp = u.vec() - u_par;
    const double denom = 1.0 + v.vec().dot(u.vec());
    return Velocity((v.vec() + u_par + u_perp / v.gamma()) / denom);
}

/// ((sqrt(1-|w|^2) a_perp + a_par) . sigma) / sqrt(1 + (w.a)^2 - |w|^2), with
/// a_perp and a_par taken relative to w. Eigenvalues are +-1.
inline ComplexMatrix relativistic_spin_operator(const Vec3& a, const Velocity& w) {
    detail::require_unit(a, "relativistic_spin_operator", 1e-10);
    const double ws = w.speed();
    if (ws == 0.0) return dot_sigma(a);
    const Vec3 what = w.vec() / ws;
    const Vec3 a_par = a.dot(what) * what;
    const Vec3 a_perp = a - a_par;
    const double wa = w.vec().dot(a);
    const double denom2 = 1.0 + wa * wa - ws * ws;
    if (!(denom2 > 0.0)) throw DomainError("relativistic_spin_operator: degenerate normalization");
    return (1.0 / std::sqrt(denom2)) * dot_sigma(std::sqrt(1.0 - ws * ws) * a_perp + a_par);
}

/// Coefficients c_k = tr(m sigma_k) / 2 so that m = sum_k c_k sigma_k.
inline std::array<cplx, 4> pauli_coefficients(const ComplexMatrix& m) {
    if (m.dim() != 2) throw DimensionError("pauli_coefficients: expected a 2x2 matrix");
    std::array<cplx, 4> c{};
    for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] = 0.5 * (m * pauli(k)).trace();
    return c;
}

} // namespace wbell

#endif // WBELL_RELATIVITY_HPP
