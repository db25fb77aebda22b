#include "poisson/gyro2d.hpp"

#include <cmath>

#include "poisson/errors.hpp"

namespace poisson::gyro2d {

// ---------------------------------------------------------------- charts

Vec2 Chart::point_to_chart(const Vec3& nu) const {
    if (id_ == ChartId::north) {
        const double d = 1.0 + nu[2];
        if (d < 1e-12) throw Degenerate("Chart: point at the excluded pole");
        return {nu[0] / d, nu[1] / d};
    }
    const double d = 1.0 - nu[2];
    if (d < 1e-12) throw Degenerate("Chart: point at the excluded pole");
    // The y-flip keeps dq1 ^ dq2 outward-oriented.
    return {nu[0] / d, -nu[1] / d};
}

Vec3 Chart::chart_to_point(const Vec2& q) const {
    const double s = dot(q, q);
    const double d = 1.0 + s;
    if (id_ == ChartId::north)
        return {2.0 * q[0] / d, 2.0 * q[1] / d, (1.0 - s) / d};
    return {2.0 * q[0] / d, -2.0 * q[1] / d, (s - 1.0) / d};
}

std::array<Vec3, 2> Chart::jacobian(const Vec2& q) const {
    const double s = dot(q, q);
    const double d2 = (1.0 + s) * (1.0 + s);
    Vec3 c1{(2.0 * (1.0 + s) - 4.0 * q[0] * q[0]) / d2, -4.0 * q[0] * q[1] / d2,
            -4.0 * q[0] / d2};
    Vec3 c2{-4.0 * q[0] * q[1] / d2, (2.0 * (1.0 + s) - 4.0 * q[1] * q[1]) / d2,
            -4.0 * q[1] / d2};
    if (id_ == ChartId::south) {
        c1 = {c1[0], -c1[1], -c1[2]};
        c2 = {c2[0], -c2[1], -c2[2]};
    }
    return {c1, c2};
}

Vec2 Chart::velocity_to_chart(const Vec3& nu, const Vec3& nudot) const {
    if (id_ == ChartId::north) {
        const double d = 1.0 + nu[2];
        return {nudot[0] / d - nu[0] * nudot[2] / (d * d),
                nudot[1] / d - nu[1] * nudot[2] / (d * d)};
    }
    const double d = 1.0 - nu[2];
    return {nudot[0] / d + nu[0] * nudot[2] / (d * d),
            -nudot[1] / d - nu[1] * nudot[2] / (d * d)};
}

double Chart::round_area_density(const Vec2& q) const {
    const auto j = jacobian(q);
    return dot(chart_to_point(q), cross(j[0], j[1]));
}

Chart Chart::select(const Vec3& nu, double switch_radius) {
    return Chart(nu[2] >= 0.0 ? ChartId::north : ChartId::south, switch_radius);
}

// ------------------------------------------------------- chart geometry

namespace {

Mat2 metric_at(const GyroSystem2D& sys, const Vec2& q) {
    const Mat2 a = sys.metric(q);
    if (!(a.det() > 0.0) || !(a.trace() > 0.0))
        throw SingularMetric("gyro2d: metric is not positive definite");
    return a;
}

std::array<Mat2, 2> metric_derivatives(const GyroSystem2D& sys, const Vec2& q) {
    if (sys.metric_derivative) return sys.metric_derivative(q);
    // 5-point stencil: the 2-point one leaves a derivative-error floor
    // around 1e-10 that dominates long integrations.
    std::array<Mat2, 2> da;
    for (int k = 0; k < 2; ++k) {
        const double h = kMetricFdStep * (norm(q) + 1.0);
        Vec2 qp = q, qm = q, qp2 = q, qm2 = q;
        qp[k] += h;
        qm[k] -= h;
        qp2[k] += 2.0 * h;
        qm2[k] -= 2.0 * h;
        da[static_cast<std::size_t>(k)] =
            ((sys.metric(qp) - sys.metric(qm)) * 8.0 - (sys.metric(qp2) - sys.metric(qm2))) *
            (1.0 / (12.0 * h));
    }
    return da;
}

Christoffel christoffel_of(const GyroSystem2D& sys, const Vec2& q) {
    const Mat2 a = metric_at(sys, q);
    const Mat2 ai = inverse(a);
    const auto da = metric_derivatives(sys, q);
    auto d = [&da](int k, int i, int j) { return da[static_cast<std::size_t>(k)](i, j); };
    Christoffel ch;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                double sum = 0.0;
                for (int l = 0; l < 2; ++l)
                    sum += ai(i, l) * (d(j, l, k) + d(k, l, j) - d(l, j, k));
                ch.g[i][j][k] = 0.5 * sum;
                ch.g[i][k][j] = ch.g[i][j][k];
            }
    return ch;
}

Vec2 gamma_contract(const Christoffel& ch, const Vec2& v) {
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
        double sum = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) sum += ch.g[i][j][k] * v[j] * v[k];
        out[i] = sum;
    }
    return out;
}

// a^{ik} kbar_kj qdot^j with kbar = [[0, c], [-c, 0]]
Vec2 gyro_force(const Mat2& a_inv, double c, const Vec2& qdot) {
    return a_inv * Vec2{c * qdot[1], -c * qdot[0]};
}

} // namespace

Christoffel christoffel(const GyroSystem2D& sys, const Vec2& q) { return christoffel_of(sys, q); }

std::pair<Vec2, Vec2> gyro_rhs(const GyroSystem2D& sys, const ChartState& s) {
    const Mat2 a = metric_at(sys, s.q);
    const Mat2 ai = inverse(a);
    const Christoffel ch = christoffel_of(sys, s.q);
    const PotentialEval pv = sys.potential(s.q);
    const double c = sys.kappa(s.q);
    const Vec2 qdd =
        Vec2{} - gamma_contract(ch, s.qdot) - ai * pv.gradient + gyro_force(ai, c, s.qdot);
    return {s.qdot, qdd};
}

double chart_energy(const GyroSystem2D& sys, const ChartState& s) {
    return 0.5 * quad(sys.metric(s.q), s.qdot, s.qdot) + sys.potential(s.q).value;
}

std::function<Mat2(const Vec2&)> maupertuis_metric(const GyroSystem2D& sys, EnergyLevel h) {
    return [sys, h](const Vec2& q) {
        const double margin = h.h - sys.potential(q).value;
        if (margin <= kTurningFloor)
            throw TurningRegion("maupertuis_metric: h - V at the turning floor");
        return sys.metric(q) * (2.0 * margin);
    };
}

GyroSystem2D maupertuis_system(const GyroSystem2D& sys, EnergyLevel h) {
    GyroSystem2D out;
    out.metric = maupertuis_metric(sys, h);
    out.potential = [](const Vec2&) { return PotentialEval{}; };
    out.kappa = sys.kappa;
    if (sys.metric_derivative) {
        out.metric_derivative = [sys, h](const Vec2& q) -> std::array<Mat2, 2> {
            const auto da = sys.metric_derivative(q);
            const PotentialEval pv = sys.potential(q);
            const Mat2 a = sys.metric(q);
            const double margin = h.h - pv.value;
            return {da[0] * (2.0 * margin) - a * (2.0 * pv.gradient[0]),
                    da[1] * (2.0 * margin) - a * (2.0 * pv.gradient[1])};
        };
    }
    return out;
}

std::pair<Vec2, Vec2> curvature_flow_rhs(const GyroSystem2D& sys, EnergyLevel h,
                                         const ChartState& s) {
    const GyroSystem2D mh = maupertuis_system(sys, h);
    const Mat2 a = metric_at(mh, s.q);
    const double speed2 = quad(a, s.qdot, s.qdot);
    if (std::fabs(std::sqrt(speed2) - 1.0) > kUnitSpeedTol)
        throw NotUnitSpeed("curvature_flow_rhs: tangent is not unit in the Maupertuis metric");
    const Mat2 ai = inverse(a);
    const Christoffel ch = christoffel_of(mh, s.q);
    const double c = mh.kappa(s.q);
    const Vec2 qpp = Vec2{} - gamma_contract(ch, s.qdot) + gyro_force(ai, c, s.qdot);
    return {s.qdot, qpp};
}

namespace {

// Cubic Hermite chart position between two flow samples.
Vec2 hermite_q(const FlowSample& a, const FlowSample& b, double tau) {
    const double h = b.tau - a.tau;
    const double s = (tau - a.tau) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return a.q * h00 + a.qprime * (h10 * h) + b.q * h01 + b.qprime * (h11 * h);
}

double simpson(const std::function<double(double)>& f, double lo, double hi, double flo,
               double fmid, double fhi, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    const double flm = f(lmid), frm = f(rmid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double two = left + right;
    if (depth <= 0 || std::fabs(two - whole) < 15.0 * tol) return two + (two - whole) / 15.0;
    return simpson(f, lo, mid, flo, flm, fmid, 0.5 * tol, depth - 1) +
           simpson(f, mid, hi, fmid, frm, fhi, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    return simpson(f, lo, hi, f(lo), f(mid), f(hi), tol, 24);
}

} // namespace

std::vector<TimedSample> reparameterize(const std::vector<FlowSample>& traj,
                                        const GyroSystem2D& sys, EnergyLevel h) {
    if (traj.size() < 2) throw Error("reparameterize: need at least two samples");
    auto margin = [&](const Vec2& q) {
        const double m = h.h - sys.potential(q).value;
        if (m <= kTurningFloor)
            throw TurningRegion("reparameterize: trajectory reached the turning floor");
        return m;
    };

    std::vector<TimedSample> out;
    out.reserve(traj.size());
    double t = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (i > 0) {
            const FlowSample& a = traj[i - 1];
            const FlowSample& b = traj[i];
            auto integrand = [&](double tau) { return 1.0 / (2.0 * margin(hermite_q(a, b, tau))); };
            t += adaptive_simpson(integrand, a.tau, b.tau, 1e-14);
        }
        const double m = margin(traj[i].q);
        out.push_back({t, traj[i].q, traj[i].qprime * (2.0 * m)});
    }
    return out;
}

std::vector<std::pair<double, double>> signed_geodesic_curvature(
    const std::vector<FlowSample>& traj, const std::function<Mat2(const Vec2&)>& metric,
    int orientation) {
    std::vector<std::pair<double, double>> out;
    if (traj.size() < 5) return out;
    GyroSystem2D msys;
    msys.metric = metric;
    for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
        const double h = traj[i + 1].tau - traj[i].tau;
        const Mat2 g = metric(traj[i].q);
        const Vec2 tangent = traj[i].qprime;
        if (std::fabs(quad(g, tangent, tangent) - 1.0) > 1e-6)
            throw NotUnitSpeed("signed_geodesic_curvature: samples are not unit speed");
        // 5-point stencil for dT/dtau
        Vec2 dT;
        for (int c = 0; c < 2; ++c)
            dT[c] = (traj[i - 2].qprime[c] - 8.0 * traj[i - 1].qprime[c] +
                     8.0 * traj[i + 1].qprime[c] - traj[i + 2].qprime[c]) /
                    (12.0 * h);
        const Christoffel ch = christoffel_of(msys, traj[i].q);
        const Vec2 acc = dT + gamma_contract(ch, tangent);
        const double mag = std::sqrt(std::max(0.0, quad(g, acc, acc)));
        const double orient = det2(acc, tangent) * orientation;
        out.emplace_back(traj[i].tau, orient >= 0.0 ? mag : -mag);
    }
    return out;
}

std::vector<TimedSample> integrate_chart(const GyroSystem2D& sys, const ChartState& initial,
                                         const ode::IntegratorSettings& settings) {
    auto rhs = [&sys](double, std::span<const double> y, std::span<double> dy) {
        const auto [qd, qdd] = gyro_rhs(sys, {{y[0], y[1]}, {y[2], y[3]}});
        dy[0] = qd[0];
        dy[1] = qd[1];
        dy[2] = qdd[0];
        dy[3] = qdd[1];
    };
    const double y0[4] = {initial.q[0], initial.q[1], initial.qdot[0], initial.qdot[1]};
    std::vector<TimedSample> out;
    for (const auto& rec : ode::integrate(rhs, y0, settings)) {
        if (!rec.accepted) continue;
        out.push_back({rec.t, {rec.state[0], rec.state[1]}, {rec.state[2], rec.state[3]}});
    }
    return out;
}

std::vector<FlowSample> integrate_flow(const GyroSystem2D& sys, EnergyLevel h,
                                       const ChartState& initial,
                                       const ode::IntegratorSettings& settings) {
    const GyroSystem2D mh = maupertuis_system(sys, h);
    const double speed = std::sqrt(quad(mh.metric(initial.q), initial.qdot, initial.qdot));
    if (std::fabs(speed - 1.0) > kUnitSpeedTol)
        throw NotUnitSpeed("integrate_flow: initial tangent is not unit in the Maupertuis metric");
    std::vector<FlowSample> out;
    for (const auto& s : integrate_chart(mh, initial, settings))
        out.push_back({s.t, s.q, s.qdot});
    return out;
}

GyroSystem2D reduced_system_in_chart(const reduction::ReducedSystemSpec& spec,
                                     const Chart& chart) {
    const body::InertiaTensor inertia = spec.inertia;
    const body::PotentialSpec potential = spec.potential;
    const double k = spec.k;
    const double scale = spec.gyro_scale;

    GyroSystem2D sys;
    sys.metric = [inertia, chart](const Vec2& q) {
        const Vec3 nu = chart.chart_to_point(q);
        const auto j = chart.jacobian(q);
        const double den = reduction::generator_norm2(nu, inertia);
        const double f = inertia.product() / den;
        Mat2 a;
        for (int r = 0; r < 2; ++r)
            for (int c = r; c < 2; ++c) {
                const double v = f * dot(inertia.apply_inverse(j[static_cast<std::size_t>(r)]),
                                         j[static_cast<std::size_t>(c)]);
                a(r, c) = v;
                a(c, r) = v;
            }
        return a;
    };
    sys.potential = [inertia, potential, k, chart](const Vec2& q) {
        const Vec3 nu = chart.chart_to_point(q);
        const auto j = chart.jacobian(q);
        const auto [val, grad3] = potential.eval(nu);
        const double den = reduction::generator_norm2(nu, inertia);
        const Vec3 g = grad3 - inertia.apply(nu) * (k * k / (den * den));
        PotentialEval out;
        out.value = val + k * k / (2.0 * den);
        out.gradient = {dot(g, j[0]), dot(g, j[1])};
        return out;
    };
    sys.kappa = [inertia, k, scale, chart](const Vec2& q) {
        const Vec3 nu = chart.chart_to_point(q);
        return scale * k * reduction::curvature_coefficient(nu, inertia) *
               chart.round_area_density(q);
    };
    return sys;
}

ReducedTrajectory simulate_reduced(const reduction::ReducedSystemSpec& spec,
                                   const reduction::ReducedState& initial,
                                   const ode::IntegratorSettings& settings) {
    Chart chart = Chart::select(initial.nu);
    GyroSystem2D sys = reduced_system_in_chart(spec, chart);

    const Vec2 q0 = chart.point_to_chart(initial.nu);
    const Vec2 qd0 = chart.velocity_to_chart(initial.nu, initial.nudot);

    ReducedTrajectory traj;
    std::vector<ChartId> chart_ids; // chart per accepted step, post-switch

    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        const ChartState s{{y[0], y[1]}, {y[2], y[3]}};
        const auto [qd, qdd] = gyro_rhs(sys, s);
        dy[0] = qd[0];
        dy[1] = qd[1];
        dy[2] = qdd[0];
        dy[3] = qdd[1];
    };

    auto hook = [&](long, double, std::span<double> y) {
        const Vec2 q{y[0], y[1]};
        if (norm(q) > chart.switch_radius()) {
            const Vec2 qdot{y[2], y[3]};
            const Vec3 nu = chart.chart_to_point(q);
            const auto j = chart.jacobian(q);
            const Vec3 nudot = j[0] * qdot[0] + j[1] * qdot[1];
            const Chart next = chart.other();
            const Vec2 nq = next.point_to_chart(nu);
            if (norm(nq) < chart.switch_radius() - kSwitchHysteresis) {
                const Vec2 nqd = next.velocity_to_chart(nu, nudot);
                y[0] = nq[0];
                y[1] = nq[1];
                y[2] = nqd[0];
                y[3] = nqd[1];
                chart = next;
                sys = reduced_system_in_chart(spec, chart);
                ++traj.chart_switches;
            }
        }
        chart_ids.push_back(chart.id());
        return true;
    };

    const double y0[4] = {q0[0], q0[1], qd0[0], qd0[1]};
    const auto records = ode::integrate(rhs, y0, settings, {hook});

    // Rebuild sphere-side samples chart-by-chart.
    Chart c0 = Chart::select(initial.nu);
    std::size_t ai = 0;
    for (const auto& rec : records) {
        if (!rec.accepted) continue;
        const ChartId cid = (ai == 0) ? c0.id() : chart_ids[ai - 1];
        const Chart cc(cid, c0.switch_radius());
        ReducedSample s;
        s.t = rec.t;
        s.q = {rec.state[0], rec.state[1]};
        s.qdot = {rec.state[2], rec.state[3]};
        s.chart = cid;
        s.nu = cc.chart_to_point(s.q);
        const auto j = cc.jacobian(s.q);
        s.nudot = j[0] * s.qdot[0] + j[1] * s.qdot[1];
        const GyroSystem2D csys = reduced_system_in_chart(spec, cc);
        s.energy = chart_energy(csys, {s.q, s.qdot});
        traj.samples.push_back(std::move(s));
        ++ai;
    }
    return traj;
}

} // namespace poisson::gyro2d
