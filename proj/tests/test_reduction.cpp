#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "poisson/errors.hpp"
#include "poisson/reduction.hpp"

using namespace poisson;
using namespace poisson::reduction;
using body::InertiaTensor;
using body::PotentialSpec;
using testutil::random_tangent;
using testutil::random_unit;
using testutil::random_vec;

namespace {
const InertiaTensor kI{2.0, 1.5, 1.0};
}

TEST_CASE("reduced state tangency policy") {
    const Vec3 nu{1, 0, 0};
    CHECK_NOTHROW(ReducedState(nu, {0, 1, 0}));
    // rounding-level violation is repaired by projection
    const ReducedState repaired(nu, {1e-8, 1.0, 0.0});
    CHECK(std::fabs(dot(repaired.nu, repaired.nudot)) < 1e-16);
    // gross violation is a user error
    CHECK_THROWS_AS(ReducedState(nu, {0.5, 1.0, 0.0}), ConstraintViolated);
    CHECK_THROWS_AS(ReducedState({2, 0, 0}, {0, 1, 0}), NotUnit);
}

TEST_CASE("horizontal lift: closed form and contracts") {
    // zero tangent lifts to zero
    CHECK(norm(horizontal_lift(ReducedState({0.6, 0.48, 0.64}, {0, 0, 0}), kI)) == 0.0);

    // worked coordinate case
    const Vec3 w0 = horizontal_lift(ReducedState({1, 0, 0}, {0, 1, 0}), kI);
    CHECK(norm_inf(w0 - Vec3{0, 0, -1}) < 1e-15);

    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 nudot = random_tangent(rng, nu);
        const ReducedState s(nu, nudot);
        const Vec3 lift = horizontal_lift(s, kI);
        CHECK(std::fabs(dot(kI.apply(lift), nu)) < 1e-12);
        CHECK(norm_inf(cross(nu, lift) - s.nudot) < 1e-12);
        // zero momentum
        CHECK(std::fabs(body::momentum(body::BodyPhaseState(nu, lift), kI)) < 1e-12);
    }
}

TEST_CASE("coordinate formulas of the lift agree with the 1-form reading") {
    // same formula evaluated as a matrix of 1-forms on nudot; exact equality
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 nudot = random_tangent(rng, nu);
        const double den = kI.i1 * nu[0] * nu[0] + kI.i2 * nu[1] * nu[1] + kI.i3 * nu[2] * nu[2];
        const Vec3 expected{(nudot[1] * (kI.i3 * nu[2]) - nudot[2] * (kI.i2 * nu[1])) / den,
                            (nudot[2] * (kI.i1 * nu[0]) - nudot[0] * (kI.i3 * nu[2])) / den,
                            (nudot[0] * (kI.i2 * nu[1]) - nudot[1] * (kI.i1 * nu[0])) / den};
        const Vec3 got = horizontal_lift(ReducedState(nu, nudot), kI);
        CHECK(got[0] == expected[0]);
        CHECK(got[1] == expected[1]);
        CHECK(got[2] == expected[2]);
    }
}

TEST_CASE("reduced metric: worked values and identity with the lift") {
    // axis case collapses to I3
    CHECK(reduced_metric({0, 1, 0}, {0, 1, 0}, {1, 0, 0}, kI) ==
          doctest::Approx(kI.i3).epsilon(1e-14));

    // equal moments give the round metric scaled by c
    const InertiaTensor eq{2.5, 2.5, 2.5};
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 v = random_tangent(rng, nu);
        CHECK(reduced_metric(v, v, nu, eq) == doctest::Approx(2.5 * dot(v, v)).epsilon(1e-13));
    }

    // metric value equals the inertia form of the horizontal lift
    for (int i = 0; i < 200; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 v = random_tangent(rng, nu);
        const Vec3 lift = horizontal_lift(ReducedState(nu, v), kI);
        const double direct = reduced_metric(v, v, nu, kI);
        const double via_lift = dot(kI.apply(lift), lift);
        CHECK(std::fabs(direct - via_lift) < 1e-12 * std::max(1.0, direct));
    }

    // polarization is symmetric
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 a = random_tangent(rng, nu), b = random_tangent(rng, nu);
        CHECK(reduced_metric(a, b, nu, kI) == doctest::Approx(reduced_metric(b, a, nu, kI)));
    }

    CHECK_THROWS_AS(reduced_metric({1, 0, 0}, {1, 0, 0}, {1, 0, 0}, kI), ConstraintViolated);
}

TEST_CASE("connection form values") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec3 nu = random_unit(rng);
        // vanishes exactly on horizontal lifts
        const Vec3 lift = horizontal_lift(ReducedState(nu, random_tangent(rng, nu)), kI);
        CHECK(std::fabs(connection_value(nu, lift, kI)) < 1e-13);
        // equals 1 on the symmetry generator
        CHECK(connection_value(nu, nu, kI) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(connection_value({1, 0, 0}, {3, 4, 5}, {1, 2, 3}) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(connection_value({0.5, 0, 0}, {1, 1, 1}, kI), NotUnit);
}

TEST_CASE("orthogonal splitting into horizontal and vertical parts") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 omega = random_vec(rng, 2.0);
        const double vertical = connection_value(nu, omega, kI);
        const Vec3 horizontal = omega - nu * vertical;
        // horizontal part has zero connection value and reassembles omega
        CHECK(std::fabs(connection_value(nu, horizontal, kI)) < 1e-13);
        CHECK(norm_inf(horizontal + nu * vertical - omega) < 1e-12);
    }
}

TEST_CASE("curvature coefficient: values, collapse, positivity") {
    // equal moments collapse to the constant 1 (independent of c)
    for (double c : {1.0, 2.5}) {
        const InertiaTensor eq{c, c, c};
        std::mt19937 rng(17);
        for (int i = 0; i < 100; ++i)
            CHECK(std::fabs(curvature_coefficient(random_unit(rng), eq) - 1.0) < 1e-12);
    }

    // worked value
    CHECK(curvature_coefficient({1, 0, 0}, kI) == doctest::Approx(0.25).epsilon(1e-14));

    // strictly positive under strict triangle inequalities
    std::mt19937 rng(19);
    for (int i = 0; i < 500; ++i)
        CHECK(curvature_coefficient(random_unit(rng), kI) > 0.0);

    CHECK_THROWS_AS(curvature_coefficient({1, 1, 0}, kI), NotUnit);
}

TEST_CASE("sphere integral of the curvature form is 4 pi") {
    // midpoint rule on a lat-long grid with sin weight
    auto integral = [](const InertiaTensor& inertia) {
        const int nth = 400, nph = 800;
        double sum = 0.0;
        for (int i = 0; i < nth; ++i) {
            const double th = (i + 0.5) * std::numbers::pi / nth;
            for (int j = 0; j < nph; ++j) {
                const double ph = (j + 0.5) * 2.0 * std::numbers::pi / nph;
                const Vec3 nu{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                              std::cos(th)};
                sum += curvature_coefficient(nu, inertia) * std::sin(th);
            }
        }
        return sum * (std::numbers::pi / nth) * (2.0 * std::numbers::pi / nph);
    };
    CHECK(std::fabs(integral(kI) - 4.0 * std::numbers::pi) < 1e-3);
    CHECK(std::fabs(integral({1.0, 1.0, 1.0}) - 4.0 * std::numbers::pi) < 1e-3);
    CHECK(std::fabs(integral({3.0, 2.4, 1.1}) - 4.0 * std::numbers::pi) < 1e-3);
}

TEST_CASE("amended potential") {
    const PotentialSpec zero = PotentialSpec::zero();
    CHECK(amended_potential({0.6, 0.48, 0.64}, 0.0, kI, zero) == 0.0);
    CHECK(amended_potential({0, 0, 1}, 2.0, kI, zero) == doctest::Approx(2.0).epsilon(1e-14));

    // equal moments: constant offset k^2/(2c)
    const InertiaTensor eq{2.0, 2.0, 2.0};
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        CHECK(amended_potential(nu, 1.5, eq, zero) ==
              doctest::Approx(1.5 * 1.5 / 4.0).epsilon(1e-12));
    }

    // dominates the bare potential
    const PotentialSpec lin = PotentialSpec::linear({0, 0, 1});
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        CHECK(amended_potential(nu, 0.8, kI, lin) >= lin.value(nu));
    }

    // gradient vs central differences (through unit-sphere-preserving paths
    // is unnecessary: the formula extends smoothly off the sphere)
    const Vec3 nu{0.6, 0.48, 0.64};
    const Vec3 grad = amended_potential_gradient(nu, 0.8, kI, lin);
    for (int c = 0; c < 3; ++c) {
        Vec3 p = nu, m = nu;
        p[c] += 1e-6;
        m[c] -= 1e-6;
        const double fp = lin.value(p) + 0.8 * 0.8 / (2.0 * generator_norm2(p, kI));
        const double fm = lin.value(m) + 0.8 * 0.8 / (2.0 * generator_norm2(m, kI));
        CHECK(std::fabs((fp - fm) / 2e-6 - grad[c]) < 1e-8);
    }
}

TEST_CASE("reconstruct_velocity satisfies both contracts") {
    CHECK(norm(reconstruct_velocity(ReducedState({0.6, 0.48, 0.64}, {0, 0, 0}), 0.0, kI)) == 0.0);

    // vertical vector over e1 with momentum I1
    const Vec3 vertical = reconstruct_velocity(ReducedState({1, 0, 0}, {0, 0, 0}), kI.i1, kI);
    CHECK(norm_inf(vertical - Vec3{1, 0, 0}) < 1e-15);

    std::mt19937 rng(29);
    for (int i = 0; i < 200; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 nudot = random_tangent(rng, nu);
        const double k = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        const Vec3 omega = reconstruct_velocity(ReducedState(nu, nudot), k, kI);
        CHECK(std::fabs(dot(kI.apply(omega), nu) - k) < 1e-12);
        CHECK(norm_inf(cross(nu, omega) - nudot) < 1e-12);
    }
}

TEST_CASE("round trip through a full state with known momentum") {
    // decomposition uniqueness: solving the 3x3 linear system
    //   [I nu | nu x . | ...] directly reproduces reconstruct_velocity
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        const Vec3 nu = random_unit(rng);
        const Vec3 omega = random_vec(rng, 2.0);
        const double k = dot(kI.apply(omega), nu);
        const Vec3 nudot = cross(nu, omega);
        const Vec3 back = reconstruct_velocity(ReducedState(nu, nudot), k, kI);
        CHECK(norm_inf(back - omega) < 1e-12);
    }
}

TEST_CASE("lift_base_point produces a rotation over nu") {
    std::mt19937 rng(37);
    for (int i = 0; i < 50; ++i) {
        const Vec3 nu = random_unit(rng);
        const so3::Rotation q = lift_base_point(nu);
        CHECK(norm_inf(so3::poisson_projection(q) - nu) < 1e-14);
    }
}
