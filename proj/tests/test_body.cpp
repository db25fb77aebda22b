#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "poisson/body.hpp"
#include "poisson/errors.hpp"
#include "poisson/reduction.hpp"

using namespace poisson;
using namespace poisson::body;
using testutil::random_unit;
using testutil::random_vec;

namespace {

ode::IntegratorSettings rk4(double step, double t_end) {
    ode::IntegratorSettings s;
    s.method = ode::Method::rk4;
    s.step = step;
    s.t_end = t_end;
    return s;
}

const InertiaTensor kHeavyTop{2.0, 1.5, 1.0};

} // namespace

TEST_CASE("inertia validation and triangle flag") {
    CHECK_THROWS_AS(InertiaTensor(1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(InertiaTensor(-1.0, 1.0, 1.0), Error);
    CHECK(kHeavyTop.strict_triangle());
    CHECK_FALSE(InertiaTensor(2.0, 1.0, 1.0).strict_triangle()); // degenerate (flat) body
    CHECK(InertiaTensor(1.0, 1.0, 1.0).strict_triangle());
}

TEST_CASE("kinetic energy") {
    CHECK(kinetic_energy({0, 0, 0}, kHeavyTop) == 0.0);
    CHECK(kinetic_energy({1, 1, 1}, {1, 2, 3}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(kinetic_energy({0, 3, 0}, {2, 2, 2}) == doctest::Approx(9.0).epsilon(1e-15));
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        const Vec3 w = random_vec(rng, 2.0);
        CHECK(kinetic_energy(w, kHeavyTop) >= 0.0);
    }
}

TEST_CASE("total energy") {
    const BodyPhaseState s({0, 0, 1}, {0, 0, 0});
    CHECK(total_energy(s, kHeavyTop, PotentialSpec::zero()) == 0.0);
    CHECK(total_energy(s, kHeavyTop, PotentialSpec::linear({0, 0, 1})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(total_energy(s, kHeavyTop, PotentialSpec::quadratic(Mat3::identity())) ==
          doctest::Approx(0.5).epsilon(1e-15));

    const BodyPhaseState sk({1, 0, 0}, {1, 1, 1});
    CHECK(total_energy(sk, kHeavyTop, PotentialSpec::zero()) ==
          doctest::Approx(kinetic_energy(sk.omega, kHeavyTop)).epsilon(1e-15));
}

TEST_CASE("momentum integral") {
    CHECK(momentum(BodyPhaseState({1, 0, 0}, {0, 1, 0}), kHeavyTop) == 0.0);
    CHECK(momentum(BodyPhaseState({0, 1, 0}, {3, 4, 5}), {1, 2, 3}) ==
          doctest::Approx(8.0).epsilon(1e-15));
    // vertical vector over nu = e1 with momentum k
    const double k = 0.7;
    CHECK(momentum(BodyPhaseState({1, 0, 0}, {k / 2.0, 0, 0}), kHeavyTop) ==
          doctest::Approx(k).epsilon(1e-15));
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(BodyPhaseState({1.1, 0, 0}, {0, 0, 0}), NotUnit);
    CHECK_NOTHROW(BodyPhaseState({1.0, 0, 0}, {5, 5, 5}));
}

TEST_CASE("potential variants and gradient validation") {
    const Vec3 nu{0.6, 0.48, 0.64};
    const PotentialSpec lin = PotentialSpec::linear({1, 2, 3});
    CHECK(lin.value(nu) == doctest::Approx(0.6 + 0.96 + 1.92).epsilon(1e-14));

    Mat3 b = Mat3::identity();
    b(0, 1) = 0.25;
    b(1, 0) = 0.25;
    const PotentialSpec quad = PotentialSpec::quadratic(b);
    CHECK(quad.value(nu) == doctest::Approx(0.5 * dot(nu, b * nu)).epsilon(1e-14));
    CHECK(norm_inf(quad.gradient(nu) - b * nu) < 1e-14);

    Mat3 bad = b;
    bad(0, 1) = 0.3; // asymmetric
    CHECK_THROWS_AS(PotentialSpec::quadratic(bad), Error);

    // custom potential with correct gradient passes, wrong gradient is caught
    CHECK_NOTHROW(PotentialSpec::custom([](const Vec3& n) {
        return std::pair<double, Vec3>{n[0] * n[0], Vec3{2.0 * n[0], 0, 0}};
    }));
    CHECK_THROWS_AS(PotentialSpec::custom([](const Vec3& n) {
                        return std::pair<double, Vec3>{n[0] * n[0], Vec3{3.0 * n[0], 0, 0}};
                    }),
                    Error);
}

TEST_CASE("euler_poisson_rhs closed-form cases") {
    // free symmetric body: omega is constant
    const InertiaTensor eq{1.0, 1.0, 1.0};
    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        const BodyPhaseState s(random_unit(rng), random_vec(rng, 2.0));
        const auto [nudot, omegadot] = euler_poisson_rhs(s, eq, PotentialSpec::zero());
        CHECK(norm(omegadot) < 1e-14);
        CHECK(norm_inf(nudot - cross(s.nu, s.omega)) == 0.0);
    }

    // pure torque from a linear potential at rest
    const BodyPhaseState rest({0, 0, 1}, {0, 0, 0});
    const auto [nudot, omegadot] =
        euler_poisson_rhs(rest, kHeavyTop, PotentialSpec::linear({1, 0, 0}));
    CHECK(norm(nudot) == 0.0);
    CHECK(norm_inf(omegadot - kHeavyTop.apply_inverse({0, 1, 0})) < 1e-15);
}

TEST_CASE("rhs is orthogonal to the energy and momentum gradients") {
    // symbolic gradients: dE = (grad V, I omega), dJ = (I omega, I nu);
    // their central-difference validation runs once below
    const PotentialSpec pot = PotentialSpec::linear({0.3, -0.2, 1.0});
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 om = random_vec(rng, 2.0);
        const auto [nudot, omegadot] = euler_poisson_rhs(BodyPhaseState(nu, om), kHeavyTop, pot);

        const double dE = dot(pot.gradient(nu), nudot) + dot(kHeavyTop.apply(om), omegadot);
        const double dJ = dot(kHeavyTop.apply(om), nudot) + dot(kHeavyTop.apply(nu), omegadot);
        CHECK(std::fabs(dE) < 1e-12);
        CHECK(std::fabs(dJ) < 1e-12);
    }

    // the symbolic gradients match central differences
    const Vec3 nu = random_unit(rng);
    const Vec3 om = random_vec(rng, 2.0);
    const double h = 1e-6;
    for (int c = 0; c < 3; ++c) {
        Vec3 np = nu, nm = nu;
        np[c] += h;
        nm[c] -= h;
        CHECK(std::fabs((pot.value(np) - pot.value(nm)) / (2.0 * h) - pot.gradient(nu)[c]) <
              1e-9);
        Vec3 wp = om, wm = om;
        wp[c] += h;
        wm[c] -= h;
        const double fd =
            (0.5 * dot(kHeavyTop.apply(wp), wp) - 0.5 * dot(kHeavyTop.apply(wm), wm)) / (2.0 * h);
        CHECK(std::fabs(fd - kHeavyTop.apply(om)[c]) < 1e-8);
    }
}

TEST_CASE("full_rhs kinematics") {
    const so3::Rotation id;
    {
        const auto [qdot, omegadot] =
            full_rhs({id, {0, 0, 0}}, kHeavyTop, PotentialSpec::linear({0, 0, 1}));
        CHECK(norm_inf(qdot) == 0.0);
        (void)omegadot;
    }
    {
        const auto [qdot, omegadot] = full_rhs({id, {1, 0, 0}}, kHeavyTop, PotentialSpec::zero());
        CHECK(norm_inf(qdot - so3::hat({1, 0, 0})) == 0.0);
        (void)omegadot;
    }
}

TEST_CASE("free symmetric top precesses with the closed-form period") {
    const InertiaTensor eq{1.0, 1.0, 1.0};
    const BodyPhaseState initial({1, 0, 0}, {0, 0, 2});
    const auto traj =
        simulate_body(initial, eq, PotentialSpec::zero(), rk4(1e-3, std::numbers::pi));
    CHECK(norm(traj.samples.back().nu - initial.nu) < 1e-8);
    // quarter period: nu rotated by -pi/2 about axis 3
    const auto quarter =
        simulate_body(initial, eq, PotentialSpec::zero(), rk4(1e-3, std::numbers::pi / 4));
    CHECK(norm(quarter.samples.back().nu - Vec3{0, -1, 0}) < 1e-8);
}

TEST_CASE("heavy-top conservation under rk4") {
    std::mt19937 rng(1);
    const BodyPhaseState initial(random_unit(rng), {1, 2, 3});
    const PotentialSpec pot = PotentialSpec::linear({0, 0, 1});
    const auto traj = simulate_body(initial, kHeavyTop, pot, rk4(1e-3, 50.0));

    const double e0 = traj.samples.front().energy;
    const double j0 = traj.samples.front().momentum;
    double de = 0.0, dj = 0.0, unit = 0.0;
    for (const auto& s : traj.samples) {
        de = std::max(de, std::fabs(s.energy - e0) / std::fabs(e0));
        dj = std::max(dj, std::fabs(s.momentum - j0));
        unit = std::max(unit, s.unit_residual);
    }
    CHECK(de <= 1e-8);
    CHECK(dj <= 1e-8);
    CHECK(unit <= 1e-9);
    CHECK(traj.samples.size() == 50001);
    CHECK(traj.renormalizations == 50000 / 16);
}

TEST_CASE("drift halves by ~16x with the step (truncation regime)") {
    std::mt19937 rng(1);
    const BodyPhaseState initial(random_unit(rng), {1, 2, 3});
    const PotentialSpec pot = PotentialSpec::linear({0, 0, 1});
    auto drift = [&](double h) {
        const auto traj = simulate_body(initial, kHeavyTop, pot, rk4(h, 5.0));
        const double e0 = traj.samples.front().energy;
        const double j0 = traj.samples.front().momentum;
        double de = 0.0, dj = 0.0;
        for (const auto& s : traj.samples) {
            de = std::max(de, std::fabs(s.energy - e0) / std::fabs(e0));
            dj = std::max(dj, std::fabs(s.momentum - j0));
        }
        return std::pair{de, dj};
    };
    const auto [de1, dj1] = drift(5e-3);
    const auto [de2, dj2] = drift(2.5e-3);
    CHECK(de1 / de2 > 12.0);
    CHECK(de1 / de2 < 20.0);
    CHECK(dj1 / dj2 > 12.0);
    CHECK(dj1 / dj2 < 20.0);
}

TEST_CASE("rkf45 heavy-top run meets its tolerance") {
    std::mt19937 rng(1);
    const BodyPhaseState initial(random_unit(rng), {1, 2, 3});
    ode::IntegratorSettings settings;
    settings.method = ode::Method::rkf45;
    settings.abs_tol = 1e-10;
    settings.rel_tol = 1e-10;
    settings.max_step = 0.05;
    settings.t_end = 10.0;
    const auto traj =
        simulate_body(initial, kHeavyTop, PotentialSpec::linear({0, 0, 1}), settings);
    const double e0 = traj.samples.front().energy;
    double de = 0.0;
    double prev_t = -1.0;
    for (const auto& s : traj.samples) {
        de = std::max(de, std::fabs(s.energy - e0) / std::fabs(e0));
        CHECK(s.t > prev_t); // strictly increasing sample times
        prev_t = s.t;
    }
    CHECK(de <= 1e-8);
    CHECK(traj.samples.back().t == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("full and reduced integrations project consistently") {
    std::mt19937 rng(17);
    const Vec3 nu0 = random_unit(rng);
    const Vec3 om0 = random_vec(rng, 1.5);
    const PotentialSpec pot = PotentialSpec::linear({0, 0, 1});

    const auto reduced =
        simulate_body(BodyPhaseState(nu0, om0), kHeavyTop, pot, rk4(1e-3, 10.0));
    const auto full = simulate_body(FullState{reduction::lift_base_point(nu0), om0}, kHeavyTop,
                                    pot, rk4(1e-3, 10.0));
    REQUIRE(full.samples.size() == reduced.samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < full.samples.size(); ++i)
        sup = std::max(sup, norm(full.samples[i].nu - reduced.samples[i].nu));
    CHECK(sup <= 1e-8);
}

TEST_CASE("reversibility: negating omega retraces the trajectory") {
    std::mt19937 rng(21);
    const Vec3 nu0 = random_unit(rng);
    const Vec3 om0 = random_vec(rng, 1.5);
    const PotentialSpec pot = PotentialSpec::linear({0, 0, 1});

    const auto forward = simulate_body(BodyPhaseState(nu0, om0), kHeavyTop, pot, rk4(1e-3, 10.0));
    const auto& end = forward.samples.back();
    const auto back = simulate_body(BodyPhaseState(end.nu, -end.omega), kHeavyTop, pot,
                                    rk4(1e-3, 10.0));
    CHECK(norm(back.samples.back().nu - nu0) < 1e-6);
    CHECK(norm(back.samples.back().omega + om0) < 1e-6);
}

TEST_CASE("left symmetry action leaves the Poisson trajectory invariant") {
    std::mt19937 rng(25);
    const so3::Rotation q0 = testutil::random_rotation(rng);
    const Vec3 om0 = random_vec(rng, 1.5);
    const PotentialSpec pot = PotentialSpec::linear({0, 0, 1});

    const so3::Rotation g = so3::Rotation::about_axis(0, 1.1);
    const so3::Rotation q0_shifted(g.matrix() * q0.matrix());

    const auto a = simulate_body(FullState{q0, om0}, kHeavyTop, pot, rk4(1e-3, 10.0));
    const auto b = simulate_body(FullState{q0_shifted, om0}, kHeavyTop, pot, rk4(1e-3, 10.0));
    CHECK(norm(a.samples.front().nu - b.samples.front().nu) < 1e-12);
    CHECK(norm(a.samples.back().nu - b.samples.back().nu) < 1e-8);
}

TEST_CASE("orthogonality residual stays small and is reported") {
    std::mt19937 rng(29);
    const auto traj = simulate_body(FullState{testutil::random_rotation(rng), {1, 2, 3}},
                                    kHeavyTop, PotentialSpec::linear({0, 0, 1}), rk4(1e-3, 10.0));
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, s.ortho_residual);
    CHECK(worst < 1e-9);
    CHECK(traj.samples.back().rotation.has_value());
}

TEST_CASE("absurd steps blow the invariant instead of silently degrading") {
    const BodyPhaseState initial({1, 0, 0}, {0, 0, 40.0});
    CHECK_THROWS_AS(
        simulate_body(initial, kHeavyTop, PotentialSpec::zero(), rk4(0.5, 50.0)),
        InvariantBlown);
}
