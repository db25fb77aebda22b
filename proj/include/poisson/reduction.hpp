#pragma once

#include "poisson/body.hpp"
#include "poisson/linalg.hpp"

// Explicit reduction of the rigid body to the Poisson sphere: horizontal
// lift (Kolosov relations), reduced metric, connection and curvature of the
// zero-momentum distribution, amended potential, and reconstruction of the
// full angular velocity from a reduced state and momentum constant.

namespace poisson::reduction {

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kTangencyTol = 1e-10;
inline constexpr double kTangencyRepair = 1e-6;

/// Point of the tangent bundle of the Poisson sphere. nudot is projected
/// onto the tangent plane when |nu . nudot| < kTangencyRepair (rounding
/// drift); larger violations throw ConstraintViolated.
struct ReducedState {
    Vec3 nu;
    Vec3 nudot;

    ReducedState(const Vec3& nu_, const Vec3& nudot_);
};

/// The reduced mechanical system with gyroscopic forces at momentum k.
struct ReducedSystemSpec {
    body::InertiaTensor inertia;
    body::PotentialSpec potential;
    double k = 0.0;
    /// Test hook: multiplies the gyroscopic 2-form. Physical value is 1.
    double gyro_scale = 1.0;
};

/// I1 a1^2 + I2 a2^2 + I3 a3^2 = <v, v>, squared metric length of the
/// symmetry generator at nu.
double generator_norm2(const Vec3& nu, const body::InertiaTensor& inertia);

/// The unique zero-momentum angular velocity over nu projecting to nudot:
/// omega0 = (nudot x I nu) / (I nu . nu).
Vec3 horizontal_lift(const ReducedState& s, const body::InertiaTensor& inertia);

/// Polarized reduced metric of two tangent vectors at nu.
double reduced_metric(const Vec3& s1_dot, const Vec3& s2_dot, const Vec3& nu,
                      const body::InertiaTensor& inertia);

/// Connection form of the zero-momentum distribution evaluated on the spin
/// omega at nu: (I nu . omega) / (I nu . nu). Equals 1 on the generator.
double connection_value(const Vec3& nu, const Vec3& omega, const body::InertiaTensor& inertia);

/// Scalar density of the curvature 2-form against the outward round volume
/// form of the sphere (momentum constant factored out). Strictly positive
/// under strict triangle inequalities.
double curvature_coefficient(const Vec3& nu, const body::InertiaTensor& inertia);

/// V(nu) + k^2 / (2 <v,v>).
double amended_potential(const Vec3& nu, double k, const body::InertiaTensor& inertia,
                         const body::PotentialSpec& potential);

/// Gradient (in the ambient R^3 sense, restricted to the sphere) of the
/// amended potential.
Vec3 amended_potential_gradient(const Vec3& nu, double k, const body::InertiaTensor& inertia,
                                const body::PotentialSpec& potential);

/// omega = horizontal_lift + k nu / <v,v>; the unique velocity over nu with
/// momentum k projecting to nudot.
Vec3 reconstruct_velocity(const ReducedState& s, double k, const body::InertiaTensor& inertia);

/// A deterministic rotation whose Poisson projection is nu (any point of the
/// fiber works; this picks one by completing nu to a right-handed frame).
so3::Rotation lift_base_point(const Vec3& nu);

} // namespace poisson::reduction
