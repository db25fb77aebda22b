#include "poisson/reduction.hpp"

#include <cmath>

#include "poisson/errors.hpp"

namespace poisson::reduction {

namespace {

void require_unit(const Vec3& nu, const char* who) {
    if (std::fabs(norm(nu) - 1.0) > kUnitTol)
        throw NotUnit(std::string(who) + ": |nu| must be 1");
}

} // namespace

ReducedState::ReducedState(const Vec3& nu_, const Vec3& nudot_) : nu(nu_), nudot(nudot_) {
    if (!nu.finite() || !nudot.finite())
        throw ConstraintViolated("ReducedState: non-finite components");
    if (std::fabs(norm(nu) - 1.0) > kUnitTol)
        throw NotUnit("ReducedState: |nu| must be 1");
    const double t = dot(nu, nudot);
    if (std::fabs(t) > kTangencyTol) {
        if (std::fabs(t) >= kTangencyRepair)
            throw ConstraintViolated("ReducedState: nudot is not tangent at nu");
        nudot = nudot - nu * t; // rounding drift: project back
    }
}

double generator_norm2(const Vec3& nu, const body::InertiaTensor& inertia) {
    return dot(inertia.apply(nu), nu);
}

Vec3 horizontal_lift(const ReducedState& s, const body::InertiaTensor& inertia) {
    return cross(s.nudot, inertia.apply(s.nu)) / generator_norm2(s.nu, inertia);
}

double reduced_metric(const Vec3& s1_dot, const Vec3& s2_dot, const Vec3& nu,
                      const body::InertiaTensor& inertia) {
    require_unit(nu, "reduced_metric");
    constexpr double tol = 1e-8;
    if (std::fabs(dot(nu, s1_dot)) > tol * (1.0 + norm(s1_dot)) ||
        std::fabs(dot(nu, s2_dot)) > tol * (1.0 + norm(s2_dot)))
        throw ConstraintViolated("reduced_metric: arguments must be tangent at nu");
    return inertia.product() * dot(inertia.apply_inverse(s1_dot), s2_dot) /
           generator_norm2(nu, inertia);
}

double connection_value(const Vec3& nu, const Vec3& omega, const body::InertiaTensor& inertia) {
    require_unit(nu, "connection_value");
    return dot(inertia.apply(nu), omega) / generator_norm2(nu, inertia);
}

double curvature_coefficient(const Vec3& nu, const body::InertiaTensor& inertia) {
    require_unit(nu, "curvature_coefficient");
    const double i1 = inertia.i1, i2 = inertia.i2, i3 = inertia.i3;
    const double num = (i2 + i3 - i1) * i1 * nu[0] * nu[0] +
                       (i3 + i1 - i2) * i2 * nu[1] * nu[1] +
                       (i1 + i2 - i3) * i3 * nu[2] * nu[2];
    const double den = generator_norm2(nu, inertia);
    return num / (den * den);
}

double amended_potential(const Vec3& nu, double k, const body::InertiaTensor& inertia,
                         const body::PotentialSpec& potential) {
    require_unit(nu, "amended_potential");
    return potential.value(nu) + k * k / (2.0 * generator_norm2(nu, inertia));
}

Vec3 amended_potential_gradient(const Vec3& nu, double k, const body::InertiaTensor& inertia,
                                const body::PotentialSpec& potential) {
    require_unit(nu, "amended_potential_gradient");
    const double den = generator_norm2(nu, inertia);
    return potential.gradient(nu) - inertia.apply(nu) * (k * k / (den * den));
}

Vec3 reconstruct_velocity(const ReducedState& s, double k, const body::InertiaTensor& inertia) {
    const double den = generator_norm2(s.nu, inertia);
    return horizontal_lift(s, inertia) + s.nu * (k / den);
}

so3::Rotation lift_base_point(const Vec3& nu) {
    require_unit(nu, "lift_base_point");
    const Vec3 n = nu / norm(nu);
    const Vec3 helper = std::fabs(n[1]) < 0.9 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0};
    Vec3 r2 = helper - n * dot(helper, n);
    r2 = r2 / norm(r2);
    const Vec3 r3 = cross(n, r2);
    return so3::Rotation(Mat3::from_rows(n, r2, r3));
}

} // namespace poisson::reduction
