#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "poisson/linalg.hpp"
#include "poisson/ode.hpp"
#include "poisson/so3.hpp"

// The rigid body with a fixed point in an axially symmetric field:
// energies, the momentum integral, the Euler-Poisson equations on the
// Poisson vector and body angular velocity, and their lift to SO(3).

namespace poisson::body {

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kHardResidualLimit = 1e-3;

/// Principal moments of inertia. All strictly positive.
struct InertiaTensor {
    double i1, i2, i3;

    InertiaTensor(double a, double b, double c);

    /// I_i + I_j > I_k strictly, for all permutations. Needed by the
    /// curvature-sign guarantees, not by the dynamics.
    bool strict_triangle() const;

    Vec3 apply(const Vec3& w) const { return {i1 * w[0], i2 * w[1], i3 * w[2]}; }
    Vec3 apply_inverse(const Vec3& w) const { return {w[0] / i1, w[1] / i2, w[2] / i3}; }
    double product() const { return i1 * i2 * i3; }
};

/// Axially symmetric potential on the Poisson sphere, with gradient.
class PotentialSpec {
public:
    using Field = std::function<std::pair<double, Vec3>(const Vec3&)>;

    static PotentialSpec zero();
    /// V(nu) = c . nu
    static PotentialSpec linear(const Vec3& c);
    /// V(nu) = nu . (B nu) / 2; B must be symmetric within 1e-12.
    static PotentialSpec quadratic(const Mat3& b);
    /// Caller-supplied (value, gradient); the gradient is validated against
    /// central differences at construction (h = 1e-5, tol 1e-6).
    static PotentialSpec custom(Field f);

    double value(const Vec3& nu) const { return field_(nu).first; }
    Vec3 gradient(const Vec3& nu) const { return field_(nu).second; }
    std::pair<double, Vec3> eval(const Vec3& nu) const { return field_(nu); }

private:
    explicit PotentialSpec(Field f) : field_(std::move(f)) {}
    Field field_;
};

/// Point of the Euler-Poisson phase space: Poisson vector + body angular
/// velocity. |nu| must be 1 within kUnitTol.
struct BodyPhaseState {
    Vec3 nu;
    Vec3 omega;

    BodyPhaseState(const Vec3& nu_, const Vec3& omega_);
};

/// Full configuration-space state (rotation matrix + spin).
struct FullState {
    so3::Rotation q;
    Vec3 omega;
};

struct TrajectorySample {
    double t = 0.0;
    Vec3 nu;
    Vec3 omega;
    double energy = 0.0;
    double momentum = 0.0;
    double unit_residual = 0.0;  // | |nu| - 1 | before renormalization
    double ortho_residual = 0.0; // |Q^T Q - Id|_inf before correction (full runs)
    std::optional<Mat3> rotation; // present for full runs
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    long renormalizations = 0;
};

double kinetic_energy(const Vec3& omega, const InertiaTensor& inertia);

double total_energy(const BodyPhaseState& s, const InertiaTensor& inertia,
                    const PotentialSpec& potential);

/// Momentum integral of the vertical-rotation symmetry: I omega . nu.
double momentum(const BodyPhaseState& s, const InertiaTensor& inertia);

/// nudot = nu x omega; omegadot = I^-1 [(I omega) x omega + nu x grad V].
/// Conserves total_energy and momentum exactly along the flow.
std::pair<Vec3, Vec3> euler_poisson_rhs(const BodyPhaseState& s, const InertiaTensor& inertia,
                                        const PotentialSpec& potential);

/// Lift to SO(3): qdot = Q hat(omega), omegadot as in euler_poisson_rhs
/// with nu = poisson_projection(Q).
std::pair<Mat3, Vec3> full_rhs(const FullState& s, const InertiaTensor& inertia,
                               const PotentialSpec& potential);

/// Integrates the Euler-Poisson system; renormalizes nu every
/// settings.renorm_every accepted steps (drift recorded before correction).
Trajectory simulate_body(const BodyPhaseState& initial, const InertiaTensor& inertia,
                         const PotentialSpec& potential, const ode::IntegratorSettings& settings);

/// Integrates on SO(3) x R^3, re-orthonormalizing Q on the same schedule.
Trajectory simulate_body(const FullState& initial, const InertiaTensor& inertia,
                         const PotentialSpec& potential, const ode::IntegratorSettings& settings);

} // namespace poisson::body
