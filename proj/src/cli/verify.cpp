#include "cli/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "poisson/errors.hpp"
#include "poisson/gyro2d.hpp"
#include "poisson/reduction.hpp"

namespace poisson::cli {

namespace {

using body::InertiaTensor;
using body::PotentialSpec;
using gyro2d::Chart;
using gyro2d::ChartState;
using gyro2d::EnergyLevel;
using gyro2d::GyroSystem2D;

Vec3 random_unit(std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        Vec3 v{n(rng), n(rng), n(rng)};
        const double len = norm(v);
        if (len > 0.1) return v / len;
    }
}

Vec3 random_tangent(std::mt19937& rng, const Vec3& nu) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        Vec3 v{n(rng), n(rng), n(rng)};
        v = v - nu * dot(nu, v);
        const double len = norm(v);
        if (len > 0.1) return v / len;
    }
}

struct SystemUnderTest {
    InertiaTensor inertia;
    PotentialSpec potential;
    double k;
};

SystemUnderTest system_from(const VerifyOptions& opt) {
    if (opt.config) {
        double k = 1.0;
        if (opt.config->reduced) k = opt.config->reduced->k;
        return {opt.config->inertia_tensor(), opt.config->potential.build(), k};
    }
    return {InertiaTensor{2.0, 1.5, 1.0}, PotentialSpec::linear({0.0, 0.0, 1.0}), 1.2};
}

// Reference reduced initial data used by the dynamic checks: a point tilted
// away from the chart origin with a generic tangent.
reduction::ReducedState reference_state() {
    const double th = 0.4;
    const Vec3 nu{std::sin(th), 0.0, std::cos(th)};
    Vec3 nudot = cross(nu, Vec3{0.3, -0.2, 0.1});
    nudot = nudot - nu * dot(nu, nudot);
    return {nu, nudot};
}

double sphere_distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// ---- individual checks ------------------------------------------------

void check_conservation(const SystemUnderTest& sut, std::mt19937& rng,
                        std::vector<CheckResult>& out) {
    const Vec3 nu0 = random_unit(rng);
    const body::BodyPhaseState initial(nu0, {1.0, 2.0, 3.0});

    auto drift = [&](double h, double t_end) {
        ode::IntegratorSettings settings;
        settings.method = ode::Method::rk4;
        settings.step = h;
        settings.t_end = t_end;
        const auto traj = body::simulate_body(initial, sut.inertia, sut.potential, settings);
        const double e0 = traj.samples.front().energy;
        const double j0 = traj.samples.front().momentum;
        double de = 0.0, dj = 0.0;
        for (const auto& s : traj.samples) {
            de = std::max(de, std::fabs(s.energy - e0));
            dj = std::max(dj, std::fabs(s.momentum - j0));
        }
        return std::pair{de / std::fabs(e0), dj};
    };

    const auto [de1, dj1] = drift(1e-3, 50.0);
    out.push_back({"conservation_drift",
                   (de1 <= 1e-8 && dj1 <= 1e-8) ? "pass" : "fail",
                   std::max(de1, dj1), 1e-8,
                   "max relative energy drift " + std::to_string(de1) +
                       ", max momentum drift " + std::to_string(dj1)});

    // Order check in a truncation-dominated window; at h=1e-3 over t=50 the
    // drift sits at rounding level and carries no order information.
    const auto [oe1, oj1] = drift(5e-3, 5.0);
    const auto [oe2, oj2] = drift(2.5e-3, 5.0);
    const double re = oe1 / oe2, rj = oj1 / oj2;
    const bool order_ok = re >= 12.0 && re <= 20.0 && rj >= 12.0 && rj <= 20.0;
    out.push_back({"conservation_order", order_ok ? "pass" : "fail", std::min(re, rj), 16.0,
                   "step-halving ratios E " + std::to_string(re) + ", J " + std::to_string(rj)});
}

void check_projection(const SystemUnderTest& sut, double kappa_scale,
                      std::vector<CheckResult>& out) {
    const auto rstate = reference_state();
    const double k = sut.k;

    // Full simulation from matched initial data.
    const Vec3 omega0 = reduction::reconstruct_velocity(rstate, k, sut.inertia);
    const body::FullState full0{reduction::lift_base_point(rstate.nu), omega0};

    ode::IntegratorSettings settings;
    settings.method = ode::Method::rk4;
    settings.step = 1e-3;
    settings.t_end = 10.0;
    const auto full = body::simulate_body(full0, sut.inertia, sut.potential, settings);

    const reduction::ReducedSystemSpec spec{sut.inertia, sut.potential, k, kappa_scale};
    const auto reduced = gyro2d::simulate_reduced(spec, rstate, settings);

    double sup = 0.0;
    const std::size_t n = std::min(full.samples.size(), reduced.samples.size());
    for (std::size_t i = 0; i < n; ++i)
        sup = std::max(sup, sphere_distance(full.samples[i].nu, reduced.samples[i].nu));
    out.push_back({"projection_consistency", sup <= 1e-5 ? "pass" : "fail", sup, 1e-5,
                   "sup sphere distance between projected full run and reduced run, t in [0,10]; "
                   "chart switches: " + std::to_string(reduced.chart_switches)});
}

void check_roundtrip(const SystemUnderTest& sut, std::vector<CheckResult>& out) {
    const auto rstate = reference_state();
    const Chart chart = Chart::select(rstate.nu);
    const reduction::ReducedSystemSpec spec{sut.inertia, sut.potential, sut.k, 1.0};
    const GyroSystem2D sys = gyro2d::reduced_system_in_chart(spec, chart);

    const Vec2 q0 = chart.point_to_chart(rstate.nu);
    const Vec2 qd0 = chart.velocity_to_chart(rstate.nu, rstate.nudot);
    const EnergyLevel h{gyro2d::chart_energy(sys, {q0, qd0})};

    ode::IntegratorSettings settings;
    settings.method = ode::Method::rk4;
    settings.step = 1e-3;
    settings.t_end = 5.0;
    const auto direct = gyro2d::integrate_chart(sys, {q0, qd0}, settings);

    // Arclength along the direct run: dtau = 2(h - V) dt, accumulated by
    // Simpson with Hermite midpoints (O(h^5) per interval).
    auto hermite_mid = [&](const gyro2d::TimedSample& a, const gyro2d::TimedSample& b) {
        const double hh = b.t - a.t;
        return a.q * 0.5 + b.q * 0.5 + (a.qdot - b.qdot) * (hh / 8.0);
    };
    auto tau_of_direct = [&](std::size_t upto) {
        double tau = 0.0;
        for (std::size_t i = 1; i <= upto; ++i) {
            const double g0 = 2.0 * (h.h - sys.potential(direct[i - 1].q).value);
            const double g1 = 2.0 * (h.h - sys.potential(direct[i].q).value);
            const double gm =
                2.0 * (h.h - sys.potential(hermite_mid(direct[i - 1], direct[i])).value);
            tau += (direct[i].t - direct[i - 1].t) / 6.0 * (g0 + 4.0 * gm + g1);
        }
        return tau;
    };
    const double tau_total = tau_of_direct(direct.size() - 1);
    const Vec2 qp0 = qd0 / (2.0 * (h.h - sys.potential(q0).value));
    ode::IntegratorSettings fsettings = settings;
    fsettings.t_end = tau_total * 0.999;
    const auto flow = gyro2d::integrate_flow(sys, h, {q0, qp0}, fsettings);

    // Direction 1: reparameterized flow vs direct run at matching times.
    const auto timed = gyro2d::reparameterize(flow, sys, h);
    double sup1 = 0.0;
    {
        std::size_t j = 0;
        for (const auto& ts : timed) {
            while (j + 1 < direct.size() && direct[j + 1].t <= ts.t) ++j;
            if (j + 1 >= direct.size()) break;
            // cubic Hermite on the direct segment
            const auto& a = direct[j];
            const auto& b = direct[j + 1];
            const double hh = b.t - a.t;
            const double s = (ts.t - a.t) / hh;
            const double s2 = s * s, s3 = s2 * s;
            const auto [ad, add] = gyro2d::gyro_rhs(sys, {a.q, a.qdot});
            const auto [bd, bdd] = gyro2d::gyro_rhs(sys, {b.q, b.qdot});
            (void)add;
            (void)bdd;
            const Vec2 qi = a.q * (2 * s3 - 3 * s2 + 1) + ad * ((s3 - 2 * s2 + s) * hh) +
                            b.q * (-2 * s3 + 3 * s2) + bd * ((s3 - s2) * hh);
            sup1 = std::max(sup1, norm(qi - ts.q));
        }
    }

    // Direction 2: direct run reparameterized to arclength vs the flow.
    double sup2 = 0.0;
    {
        double tau = 0.0;
        std::size_t j = 0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
            if (i > 0) {
                const double g0 = 2.0 * (h.h - sys.potential(direct[i - 1].q).value);
                const double g1 = 2.0 * (h.h - sys.potential(direct[i].q).value);
                const double gm =
                    2.0 * (h.h - sys.potential(hermite_mid(direct[i - 1], direct[i])).value);
                tau += (direct[i].t - direct[i - 1].t) / 6.0 * (g0 + 4.0 * gm + g1);
            }
            if (tau > flow.back().tau) break;
            while (j + 1 < flow.size() && flow[j + 1].tau <= tau) ++j;
            if (j + 1 >= flow.size()) break;
            const auto& a = flow[j];
            const auto& b = flow[j + 1];
            const double hh = b.tau - a.tau;
            const double s = (tau - a.tau) / hh;
            const double s2 = s * s, s3 = s2 * s;
            const Vec2 qi = a.q * (2 * s3 - 3 * s2 + 1) + a.qprime * ((s3 - 2 * s2 + s) * hh) +
                            b.q * (-2 * s3 + 3 * s2) + b.qprime * ((s3 - s2) * hh);
            sup2 = std::max(sup2, norm(qi - direct[i].q));
        }
    }

    const double sup = std::max(sup1, sup2);
    out.push_back({"maupertuis_roundtrip", sup <= 1e-5 ? "pass" : "fail", sup, 1e-5,
                   "arclength flow vs direct dynamics, both directions (" +
                       std::to_string(sup1) + ", " + std::to_string(sup2) + ")"});
}

void check_sign_law(const SystemUnderTest& sut, std::vector<CheckResult>& out) {
    if (!sut.inertia.strict_triangle()) {
        out.push_back({"curvature_sign_law", "skip", 0.0, 0.0,
                       "inertia violates strict triangle inequalities; sign guarantee does not "
                       "apply"});
        return;
    }
    const auto rstate = reference_state();
    const Chart chart = Chart::select(rstate.nu);

    double worst_rel = 0.0;
    bool signs_ok = true;
    double min_abs = std::numeric_limits<double>::infinity();

    for (const double k : {1.0, -1.0}) {
        const reduction::ReducedSystemSpec spec{sut.inertia, sut.potential, k, 1.0};
        const GyroSystem2D sys = gyro2d::reduced_system_in_chart(spec, chart);
        const Vec2 q0 = chart.point_to_chart(rstate.nu);
        const Vec2 qd0 = chart.velocity_to_chart(rstate.nu, rstate.nudot);
        const EnergyLevel h{gyro2d::chart_energy(sys, {q0, qd0})};
        const Vec2 qp0 = qd0 / (2.0 * (h.h - sys.potential(q0).value));

        ode::IntegratorSettings settings;
        settings.method = ode::Method::rk4;
        settings.step = 1e-3;
        settings.t_end = 8.0;
        const auto flow = gyro2d::integrate_flow(sys, h, {q0, qp0}, settings);

        const auto mh = gyro2d::maupertuis_metric(sys, h);
        const auto kg = gyro2d::signed_geodesic_curvature(flow, mh, +1);

        const std::size_t stride = std::max<std::size_t>(1, kg.size() / 150);
        std::size_t count = 0;
        for (std::size_t i = 0; i < kg.size(); i += stride) {
            // locate the flow sample for this tau (kg starts at sample 2)
            const auto& fs = flow[i + 2];
            const Vec3 nu = chart.chart_to_point(fs.q);
            const double den = reduction::generator_norm2(nu, sut.inertia);
            const double area_ratio = std::sqrt(sut.inertia.product() / den);
            const double margin = h.h - sys.potential(fs.q).value;
            const double predicted =
                k * reduction::curvature_coefficient(nu, sut.inertia) / (2.0 * margin * area_ratio);
            worst_rel = std::max(worst_rel,
                                 std::fabs(kg[i].second - predicted) / std::fabs(predicted));
            if (k > 0 && kg[i].second <= 0.0) signs_ok = false;
            if (k < 0 && kg[i].second >= 0.0) signs_ok = false;
            min_abs = std::min(min_abs, std::fabs(kg[i].second));
            ++count;
        }
        if (count < 100) signs_ok = false;
    }

    const bool ok = worst_rel <= 1e-3 && signs_ok && min_abs > 0.0;
    out.push_back({"curvature_sign_law", ok ? "pass" : "fail", worst_rel, 1e-3,
                   "measured geodesic curvature vs predicted density; min |kg| " +
                       std::to_string(min_abs) + (signs_ok ? "" : "; SIGN VIOLATION")});
}

void check_equal_moments(std::vector<CheckResult>& out) {
    double worst = 0.0;
    for (const double c : {1.0, 2.5}) {
        const InertiaTensor eq{c, c, c};
        const double expected = 1.0 / 1.0; // collapses to 1 for every c
        const int nth = 100, nph = 100;
        for (int i = 0; i < nth; ++i) {
            const double th = (i + 0.5) * std::numbers::pi / nth;
            for (int j = 0; j < nph; ++j) {
                const double ph = (j + 0.5) * 2.0 * std::numbers::pi / nph;
                const Vec3 nu{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                              std::cos(th)};
                const double v = reduction::curvature_coefficient(nu, eq);
                worst = std::max(worst, std::fabs(v - expected));
            }
        }
    }
    out.push_back({"equal_moments_coefficient", worst <= 1e-12 ? "pass" : "fail", worst, 1e-12,
                   "curvature coefficient constant on the sphere for equal moments"});
}

double sphere_integral_coefficient(const InertiaTensor& inertia, int nth = 400, int nph = 800) {
    double sum = 0.0;
    for (int i = 0; i < nth; ++i) {
        const double th = (i + 0.5) * std::numbers::pi / nth;
        const double sth = std::sin(th);
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * 2.0 * std::numbers::pi / nph;
            const Vec3 nu{sth * std::cos(ph), sth * std::sin(ph), std::cos(th)};
            sum += reduction::curvature_coefficient(nu, inertia) * sth;
        }
    }
    return sum * (std::numbers::pi / nth) * (2.0 * std::numbers::pi / nph);
}

void check_4pi(std::mt19937& rng, std::vector<CheckResult>& out) {
    std::uniform_real_distribution<double> u(0.5, 3.0);
    double worst = 0.0;
    int produced = 0;
    while (produced < 5) {
        const double a = u(rng), b = u(rng), c = u(rng);
        if (!(a + b > c && b + c > a && c + a > b)) continue;
        ++produced;
        const double integral = sphere_integral_coefficient({a, b, c});
        worst = std::max(worst, std::fabs(integral - 4.0 * std::numbers::pi));
    }
    out.push_back({"curvature_charge_4pi", worst <= 1e-3 ? "pass" : "fail", worst, 1e-3,
                   "sphere integral of the gyroscopic 2-form density, 5 random inertia tensors"});
}

void check_positivity(const SystemUnderTest& sut, std::vector<CheckResult>& out) {
    if (!sut.inertia.strict_triangle()) {
        out.push_back({"coefficient_positivity", "skip", 0.0, 0.0,
                       "warning: inertia violates strict triangle inequalities, positivity is "
                       "not guaranteed"});
        return;
    }
    double minv = std::numeric_limits<double>::infinity();
    const int nth = 100, nph = 100;
    for (int i = 0; i < nth; ++i) {
        const double th = (i + 0.5) * std::numbers::pi / nth;
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * 2.0 * std::numbers::pi / nph;
            const Vec3 nu{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
            minv = std::min(minv, reduction::curvature_coefficient(nu, sut.inertia));
        }
    }
    out.push_back({"coefficient_positivity", minv > 0.0 ? "pass" : "fail", minv, 0.0,
                   "minimum of the curvature coefficient over a 10^4-point sphere grid"});
}

void check_maurer_cartan(std::vector<CheckResult>& out) {
    const double eps = so3::kFdFormEps;
    const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    // d w_i = w_k ^ w_j for (i,j,k) cyclic; on basis pairs the matrix of
    // w_k ^ w_j is antisymmetric with (j,k) entry -1.
    const so3::Rotation q = so3::exp_hat({0.3, -0.7, 0.5});
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        auto form = [i](const so3::TangentSO3& w) { return w.omega[i]; };
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double lhs = so3::fd_exterior_derivative_1form(form, q, e[a], e[b], eps);
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                double expected = 0.0;
                if (a == k && b == j) expected = 1.0;
                if (a == j && b == k) expected = -1.0;
                worst = std::max(worst, std::fabs(lhs - expected));
            }
    }
    out.push_back({"maurer_cartan", worst <= 5.0 * eps * eps ? "pass" : "fail", worst,
                   5.0 * eps * eps, "structure relations of the spin coframe by central differences"});
}

void check_curvature_form_fd(const SystemUnderTest& sut, std::mt19937& rng,
                             std::vector<CheckResult>& out) {
    const InertiaTensor& inertia = sut.inertia;
    auto connection = [&inertia](const so3::TangentSO3& w) {
        return reduction::connection_value(so3::poisson_projection(w.q), w.omega, inertia);
    };
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const so3::Rotation q = so3::exp_hat(random_unit(rng) * 2.0);
        const Vec3 nu = so3::poisson_projection(q);
        // horizontal pair: u, v orthogonal to I nu
        const Vec3 inu = inertia.apply(nu);
        Vec3 u = cross(random_unit(rng), inu);
        while (norm(u) < 0.3) u = cross(random_unit(rng), inu);
        u = u / norm(u);
        Vec3 v = cross(inu, u);
        v = v / norm(v);
        const double lhs = so3::fd_exterior_derivative_1form(connection, q, u, v);
        const double rhs = reduction::curvature_coefficient(nu, inertia) *
                           dot(nu, cross(cross(nu, u), cross(nu, v)));
        worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(rhs));
    }
    out.push_back({"curvature_form_fd", worst <= 1e-4 ? "pass" : "fail", worst, 1e-4,
                   "exterior derivative of the connection form vs curvature coefficient at 20 "
                   "random rotations"});
}

void check_lift_contracts(const SystemUnderTest& sut, std::mt19937& rng,
                          std::vector<CheckResult>& out) {
    double worst = 0.0;
    std::uniform_real_distribution<double> uk(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec3 nu = random_unit(rng);
        const Vec3 nudot = random_tangent(rng, nu);
        const reduction::ReducedState s{nu, nudot};
        const Vec3 w0 = reduction::horizontal_lift(s, sut.inertia);
        worst = std::max(worst, std::fabs(dot(sut.inertia.apply(w0), nu)));
        worst = std::max(worst, norm_inf(cross(nu, w0) - s.nudot));
        const double k = uk(rng);
        const Vec3 omega = reduction::reconstruct_velocity(s, k, sut.inertia);
        worst = std::max(worst,
                         std::fabs(dot(sut.inertia.apply(omega), nu) - k));
        worst = std::max(worst, norm_inf(cross(nu, omega) - s.nudot));
    }
    out.push_back({"horizontal_lift_contracts", worst <= 1e-12 ? "pass" : "fail", worst, 1e-12,
                   "zero-momentum and projection contracts over 1000 random reduced states"});
}

void check_free_top(std::vector<CheckResult>& out) {
    const InertiaTensor eq{1.0, 1.0, 1.0};
    const body::BodyPhaseState initial({1.0, 0.0, 0.0}, {0.0, 0.0, 2.0});
    ode::IntegratorSettings settings;
    settings.method = ode::Method::rk4;
    settings.step = 1e-3;
    settings.t_end = std::numbers::pi; // period 2 pi / |omega|
    const auto traj = body::simulate_body(initial, eq, PotentialSpec::zero(), settings);
    const double err = norm(traj.samples.back().nu - initial.nu);
    out.push_back({"free_top_precession", err <= 1e-8 ? "pass" : "fail", err, 1e-8,
                   "closure of the precession circle after one period"});
}

void check_larmor(std::vector<CheckResult>& out) {
    const double b = 0.8;
    GyroSystem2D sys;
    sys.metric = [](const Vec2&) { return Mat2::identity(); };
    sys.metric_derivative = [](const Vec2&) { return std::array<Mat2, 2>{}; };
    sys.potential = [](const Vec2&) { return gyro2d::PotentialEval{}; };
    sys.kappa = [b](const Vec2&) { return b; };

    const Vec2 q0{0.0, 0.0}, qd0{1.0, 0.0};
    ode::IntegratorSettings settings;
    settings.method = ode::Method::rk4;
    settings.step = 1e-3;
    settings.t_end = 2.0 * std::numbers::pi / b;
    const auto run = gyro2d::integrate_chart(sys, {q0, qd0}, settings);

    // center = q0 - i qdot0 / b, radius |qdot0|/b
    const Vec2 center = q0 - Vec2{-qd0[1], qd0[0]} / b;
    const double radius = norm(qd0) / b;
    double worst = 0.0;
    for (const auto& s : run) worst = std::max(worst, std::fabs(norm(s.q - center) - radius));
    out.push_back({"magnetic_larmor", worst <= 1e-6 ? "pass" : "fail", worst, 1e-6,
                   "constant-field chart orbit stays on the predicted circle"});
}

} // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    std::mt19937 rng(options.seed);
    const SystemUnderTest sut = system_from(options);

    VerifyReport report;
    auto guarded = [&report](const char* id, auto&& fn) {
        const std::size_t before = report.checks.size();
        try {
            fn();
        } catch (const std::exception& e) {
            report.checks.resize(before);
            report.checks.push_back({id, "fail", 0.0, 0.0, std::string("exception: ") + e.what()});
        }
    };

    guarded("conservation_drift", [&] { check_conservation(sut, rng, report.checks); });
    guarded("projection_consistency",
            [&] { check_projection(sut, options.kappa_scale, report.checks); });
    guarded("maupertuis_roundtrip", [&] { check_roundtrip(sut, report.checks); });
    guarded("curvature_sign_law", [&] { check_sign_law(sut, report.checks); });
    guarded("equal_moments_coefficient", [&] { check_equal_moments(report.checks); });
    guarded("curvature_charge_4pi", [&] { check_4pi(rng, report.checks); });
    guarded("coefficient_positivity", [&] { check_positivity(sut, report.checks); });
    guarded("maurer_cartan", [&] { check_maurer_cartan(report.checks); });
    guarded("curvature_form_fd", [&] { check_curvature_form_fd(sut, rng, report.checks); });
    guarded("horizontal_lift_contracts", [&] { check_lift_contracts(sut, rng, report.checks); });
    guarded("free_top_precession", [&] { check_free_top(report.checks); });
    guarded("magnetic_larmor", [&] { check_larmor(report.checks); });
    return report;
}

std::string verify_report_json(const VerifyReport& report) {
    nlohmann::json root;
    root["all_pass"] = report.all_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json j;
        j["id"] = c.id;
        j["status"] = c.status;
        j["measured"] = c.measured;
        j["tolerance"] = c.tolerance;
        j["detail"] = c.detail;
        checks.push_back(j);
    }
    root["checks"] = checks;
    return root.dump(2) + "\n";
}

} // namespace poisson::cli
