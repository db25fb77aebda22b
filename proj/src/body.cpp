#include "poisson/body.hpp"

#include <cmath>

#include "poisson/errors.hpp"

namespace poisson::body {

InertiaTensor::InertiaTensor(double a, double b, double c) : i1(a), i2(b), i3(c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw Error("InertiaTensor: moments must be strictly positive");
}

bool InertiaTensor::strict_triangle() const {
    return i1 + i2 > i3 && i2 + i3 > i1 && i3 + i1 > i2;
}

PotentialSpec PotentialSpec::zero() {
    return PotentialSpec([](const Vec3&) { return std::pair<double, Vec3>{0.0, Vec3{}}; });
}

PotentialSpec PotentialSpec::linear(const Vec3& c) {
    return PotentialSpec([c](const Vec3& nu) { return std::pair<double, Vec3>{dot(c, nu), c}; });
}

PotentialSpec PotentialSpec::quadratic(const Mat3& b) {
    if (norm_inf(b - b.transposed()) > 1e-12)
        throw Error("PotentialSpec::quadratic: B must be symmetric");
    return PotentialSpec([b](const Vec3& nu) {
        const Vec3 bnu = b * nu;
        return std::pair<double, Vec3>{0.5 * dot(nu, bnu), bnu};
    });
}

PotentialSpec PotentialSpec::custom(Field f) {
    // Spot-check the supplied gradient against central differences.
    constexpr double h = 1e-5, tol = 1e-6;
    const Vec3 probes[] = {{1, 0, 0}, {0, 0, 1}, {0.6, 0.48, 0.64}};
    for (const Vec3& nu : probes) {
        const Vec3 grad = f(nu).second;
        for (int i = 0; i < 3; ++i) {
            Vec3 p = nu, m = nu;
            p[i] += h;
            m[i] -= h;
            const double fd = (f(p).first - f(m).first) / (2.0 * h);
            if (std::fabs(fd - grad[i]) > tol)
                throw Error("PotentialSpec::custom: gradient disagrees with finite differences");
        }
    }
    return PotentialSpec(std::move(f));
}

BodyPhaseState::BodyPhaseState(const Vec3& nu_, const Vec3& omega_) : nu(nu_), omega(omega_) {
    if (!nu.finite() || !omega.finite())
        throw Error("BodyPhaseState: non-finite components");
    if (std::fabs(norm(nu) - 1.0) > kUnitTol)
        throw NotUnit("BodyPhaseState: |nu| must be 1");
}

double kinetic_energy(const Vec3& omega, const InertiaTensor& inertia) {
    return 0.5 * dot(inertia.apply(omega), omega);
}

double total_energy(const BodyPhaseState& s, const InertiaTensor& inertia,
                    const PotentialSpec& potential) {
    return kinetic_energy(s.omega, inertia) + potential.value(s.nu);
}

double momentum(const BodyPhaseState& s, const InertiaTensor& inertia) {
    return dot(inertia.apply(s.omega), s.nu);
}

namespace {

// Unvalidated core shared by the public rhs and the integrators (RK4 stage
// states leave the unit sphere by O(h^2), so they must bypass the state
// invariant).
inline Vec3 omega_dot(const Vec3& nu, const Vec3& om, const InertiaTensor& inertia,
                      const PotentialSpec& potential) {
    return inertia.apply_inverse(cross(inertia.apply(om), om) +
                                 cross(nu, potential.gradient(nu)));
}

double energy_raw(const Vec3& nu, const Vec3& om, const InertiaTensor& inertia,
                  const PotentialSpec& potential) {
    return 0.5 * dot(inertia.apply(om), om) + potential.value(nu);
}

double momentum_raw(const Vec3& nu, const Vec3& om, const InertiaTensor& inertia) {
    return dot(inertia.apply(om), nu);
}

} // namespace

std::pair<Vec3, Vec3> euler_poisson_rhs(const BodyPhaseState& s, const InertiaTensor& inertia,
                                        const PotentialSpec& potential) {
    return {cross(s.nu, s.omega), omega_dot(s.nu, s.omega, inertia, potential)};
}

std::pair<Mat3, Vec3> full_rhs(const FullState& s, const InertiaTensor& inertia,
                               const PotentialSpec& potential) {
    const Vec3 nu = so3::poisson_projection(s.q);
    return {s.q.matrix() * so3::hat(s.omega), omega_dot(nu, s.omega, inertia, potential)};
}

Trajectory simulate_body(const BodyPhaseState& initial, const InertiaTensor& inertia,
                         const PotentialSpec& potential,
                         const ode::IntegratorSettings& settings) {
    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        const Vec3 nu{y[0], y[1], y[2]};
        const Vec3 om{y[3], y[4], y[5]};
        const Vec3 nd = cross(nu, om);
        const Vec3 od = omega_dot(nu, om, inertia, potential);
        for (int i = 0; i < 3; ++i) {
            dy[i] = nd[i];
            dy[3 + i] = od[i];
        }
    };

    Trajectory traj;
    std::vector<double> residuals; // unit residual at each accepted step, pre-renorm
    auto hook = [&](long step, double, std::span<double> y) {
        Vec3 nu{y[0], y[1], y[2]};
        const double res = std::fabs(norm(nu) - 1.0);
        residuals.push_back(res);
        if (res > kHardResidualLimit)
            throw InvariantBlown("simulate_body: unit-sphere residual exceeded hard limit");
        if (settings.renorm_every > 0 && step % settings.renorm_every == 0) {
            nu = nu / norm(nu);
            for (int i = 0; i < 3; ++i) y[i] = nu[i];
            ++traj.renormalizations;
        }
        return true;
    };

    const double y0[6] = {initial.nu[0],    initial.nu[1],    initial.nu[2],
                          initial.omega[0], initial.omega[1], initial.omega[2]};
    const auto records = ode::integrate(rhs, y0, settings, {hook});

    std::size_t ri = 0;
    for (const auto& rec : records) {
        if (!rec.accepted) continue;
        TrajectorySample s;
        s.t = rec.t;
        s.nu = {rec.state[0], rec.state[1], rec.state[2]};
        s.omega = {rec.state[3], rec.state[4], rec.state[5]};
        s.energy = energy_raw(s.nu, s.omega, inertia, potential);
        s.momentum = momentum_raw(s.nu, s.omega, inertia);
        s.unit_residual = (ri == 0) ? std::fabs(norm(s.nu) - 1.0) : residuals[ri - 1];
        traj.samples.push_back(std::move(s));
        ++ri;
    }
    return traj;
}

Trajectory simulate_body(const FullState& initial, const InertiaTensor& inertia,
                         const PotentialSpec& potential,
                         const ode::IntegratorSettings& settings) {
    auto unpack_q = [](std::span<const double> y) {
        Mat3 q;
        for (int i = 0; i < 9; ++i) q.m[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)];
        return q;
    };

    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        const Mat3 q = unpack_q(y);
        const Vec3 om{y[9], y[10], y[11]};
        const Vec3 nu = q.row(0);
        const Mat3 qdot = q * so3::hat(om);
        const Vec3 od = omega_dot(nu, om, inertia, potential);
        for (int i = 0; i < 9; ++i) dy[static_cast<std::size_t>(i)] = qdot.m[static_cast<std::size_t>(i)];
        for (int i = 0; i < 3; ++i) dy[static_cast<std::size_t>(9 + i)] = od[i];
    };

    Trajectory traj;
    std::vector<double> residuals;
    auto hook = [&](long step, double, std::span<double> y) {
        const Mat3 q = unpack_q(y);
        const double res = norm_inf(q.transposed() * q - Mat3::identity());
        residuals.push_back(res);
        if (res > kHardResidualLimit)
            throw InvariantBlown("simulate_body: orthogonality residual exceeded hard limit");
        if (settings.renorm_every > 0 && step % settings.renorm_every == 0) {
            const Mat3 fixed = so3::reorthonormalize(q).matrix();
            for (int i = 0; i < 9; ++i) y[static_cast<std::size_t>(i)] = fixed.m[static_cast<std::size_t>(i)];
            ++traj.renormalizations;
        }
        return true;
    };

    std::vector<double> y0(12);
    for (int i = 0; i < 9; ++i) y0[static_cast<std::size_t>(i)] = initial.q.matrix().m[static_cast<std::size_t>(i)];
    for (int i = 0; i < 3; ++i) y0[static_cast<std::size_t>(9 + i)] = initial.omega[i];
    const auto records = ode::integrate(rhs, y0, settings, {hook});

    std::size_t ri = 0;
    for (const auto& rec : records) {
        if (!rec.accepted) continue;
        const Mat3 q = unpack_q(rec.state);
        TrajectorySample s;
        s.t = rec.t;
        s.nu = q.row(0);
        s.omega = {rec.state[9], rec.state[10], rec.state[11]};
        s.energy = energy_raw(s.nu, s.omega, inertia, potential);
        s.momentum = momentum_raw(s.nu, s.omega, inertia);
        s.unit_residual = std::fabs(norm(s.nu) - 1.0);
        s.ortho_residual =
            (ri == 0) ? norm_inf(q.transposed() * q - Mat3::identity()) : residuals[ri - 1];
        s.rotation = q;
        traj.samples.push_back(std::move(s));
        ++ri;
    }
    return traj;
}

} // namespace poisson::body
