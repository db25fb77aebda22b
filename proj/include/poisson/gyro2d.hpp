#pragma once

#include <array>
#include <functional>
#include <vector>

#include "poisson/linalg.hpp"
#include "poisson/ode.hpp"
#include "poisson/reduction.hpp"

// 2-D mechanical systems with gyroscopic forces in chart coordinates:
// the second-order field, the Maupertuis metric and arclength flow of
// prescribed geodesic curvature, signed-curvature measurement, and the
// stereographic charts connecting all of this to the reduced rigid body.

namespace poisson::gyro2d {

inline constexpr double kDefaultSwitchRadius = 2.0;
inline constexpr double kSwitchHysteresis = 0.2;
inline constexpr double kTurningFloor = 1e-6;
inline constexpr double kMetricFdStep = 1e-3; // 5-point stencil, error O(step^4)
inline constexpr double kUnitSpeedTol = 1e-8;

enum class ChartId { north, south };

/// Stereographic chart of the unit sphere with the named pole at the chart
/// origin (projection from the opposite pole). Both charts are oriented so
/// that dq1 ^ dq2 agrees with the outward orientation of the sphere.
class Chart {
public:
    explicit Chart(ChartId id, double switch_radius = kDefaultSwitchRadius)
        : id_(id), switch_radius_(switch_radius) {}

    ChartId id() const { return id_; }
    double switch_radius() const { return switch_radius_; }
    Chart other() const { return Chart(id_ == ChartId::north ? ChartId::south : ChartId::north, switch_radius_); }

    Vec2 point_to_chart(const Vec3& nu) const;
    Vec3 chart_to_point(const Vec2& q) const;

    /// Columns of d(chart_to_point) at q; both tangent to the sphere.
    std::array<Vec3, 2> jacobian(const Vec2& q) const;

    /// Differential of point_to_chart applied to a tangent vector at nu.
    Vec2 velocity_to_chart(const Vec3& nu, const Vec3& nudot) const;

    /// Density of the outward round volume form against dq1 ^ dq2:
    /// nu . (d1 x d2). Positive everywhere in the chart.
    double round_area_density(const Vec2& q) const;

    /// Chart covering nu best (pole closest to nu).
    static Chart select(const Vec3& nu, double switch_radius = kDefaultSwitchRadius);

private:
    ChartId id_;
    double switch_radius_;
};

struct PotentialEval {
    double value = 0.0;
    Vec2 gradient;
};

/// Chart-level description of a mechanical system with gyroscopic forces:
/// metric a_ij(q), potential V(q) with gradient, and the density c(q) of
/// the gyroscopic 2-form kappa = c(q) dq1 ^ dq2.
struct GyroSystem2D {
    std::function<Mat2(const Vec2&)> metric;
    std::function<PotentialEval(const Vec2&)> potential;
    std::function<double(const Vec2&)> kappa;
    /// Optional analytic metric derivatives {da/dq1, da/dq2}; central
    /// differences of `metric` are used when absent.
    std::function<std::array<Mat2, 2>(const Vec2&)> metric_derivative;
};

struct ChartState {
    Vec2 q;
    Vec2 qdot;
};

struct EnergyLevel {
    double h = 0.0;
};

/// Christoffel symbols: gamma[i][j][k] = Gamma^i_jk, symmetric in (j,k).
struct Christoffel {
    double g[2][2][2] = {};
};

/// Throws SingularMetric when the metric at q is not positive definite.
Christoffel christoffel(const GyroSystem2D& sys, const Vec2& q);

/// Second-order field: qddot^i = -Gamma^i_jk qdot^j qdot^k
///                               - a^{ij} dV/dq^j + a^{ik} kbar_kj qdot^j,
/// with kbar = [[0, c], [-c, 0]].
std::pair<Vec2, Vec2> gyro_rhs(const GyroSystem2D& sys, const ChartState& s);

/// Total energy of a chart state: a(qdot,qdot)/2 + V(q).
double chart_energy(const GyroSystem2D& sys, const ChartState& s);

/// The metric 2(h - V) a on the region {V < h}. The returned field throws
/// TurningRegion when queried where h - V <= kTurningFloor.
std::function<Mat2(const Vec2&)> maupertuis_metric(const GyroSystem2D& sys, EnergyLevel h);

/// The system whose gyro_rhs is the arclength curvature flow: Maupertuis
/// metric, zero potential, same gyroscopic form. Use this to integrate the
/// flow (RK4 stages sit slightly off unit speed, so the validating
/// curvature_flow_rhs cannot serve as the integrand).
GyroSystem2D maupertuis_system(const GyroSystem2D& sys, EnergyLevel h);

/// Arclength-parameterized flow of prescribed geodesic curvature in the
/// Maupertuis metric: d2q/dtau2 = -Gammabar q'q' + abar^{ik} kbar_kj q'^j.
/// Requires unit m_h-speed within kUnitSpeedTol (NotUnitSpeed otherwise).
std::pair<Vec2, Vec2> curvature_flow_rhs(const GyroSystem2D& sys, EnergyLevel h,
                                         const ChartState& s);

/// Sample of an arclength-parameterized trajectory.
struct FlowSample {
    double tau = 0.0;
    Vec2 q;
    Vec2 qprime; // dq/dtau
};

/// Sample of a time-parameterized chart trajectory.
struct TimedSample {
    double t = 0.0;
    Vec2 q;
    Vec2 qdot;
};

/// Converts an arclength trajectory to time parameterization via
/// dt = dtau / (2(h - V)), cumulative time by adaptive Simpson on cubic
/// Hermite interpolants of the samples; velocities are rescaled to satisfy
/// the time dynamics at energy h.
std::vector<TimedSample> reparameterize(const std::vector<FlowSample>& traj,
                                        const GyroSystem2D& sys, EnergyLevel h);

/// Signed geodesic curvature at interior samples of a unit-speed trajectory,
/// via a 5-point finite-difference covariant derivative of the unit tangent.
/// Sign is positive when the pair {curvature vector, tangent} has the chart
/// orientation multiplied by `orientation`: with orientation = +1 on an
/// outward-oriented chart, right-turning curves measure positive (so the
/// classical counterclockwise-positive convention is orientation = -1).
std::vector<std::pair<double, double>> signed_geodesic_curvature(
    const std::vector<FlowSample>& traj, const std::function<Mat2(const Vec2&)>& metric,
    int orientation);

/// Integrates gyro_rhs in a single chart (no switching); samples at the
/// accepted steps.
std::vector<TimedSample> integrate_chart(const GyroSystem2D& sys, const ChartState& initial,
                                         const ode::IntegratorSettings& settings);

/// Integrates the arclength curvature flow of the Maupertuis metric from a
/// unit-speed initial state (NotUnitSpeed otherwise). The sample field tau
/// carries the arclength parameter.
std::vector<FlowSample> integrate_flow(const GyroSystem2D& sys, EnergyLevel h,
                                       const ChartState& initial,
                                       const ode::IntegratorSettings& settings);

/// The reduced rigid-body system written in a stereographic chart:
/// pullback of the reduced metric, amended potential, and the gyroscopic
/// form k * (curvature coefficient) * (round volume form).
GyroSystem2D reduced_system_in_chart(const reduction::ReducedSystemSpec& spec, const Chart& chart);

struct ReducedSample {
    double t = 0.0;
    Vec3 nu;
    Vec3 nudot;
    double energy = 0.0; // reduced energy m(nudot,nudot)/2 + V_k(nu)
    ChartId chart = ChartId::north;
    Vec2 q;
    Vec2 qdot;
};

struct ReducedTrajectory {
    std::vector<ReducedSample> samples;
    int chart_switches = 0;
};

/// Integrates the reduced system on the sphere, switching stereographic
/// charts at the switch radius.
ReducedTrajectory simulate_reduced(const reduction::ReducedSystemSpec& spec,
                                   const reduction::ReducedState& initial,
                                   const ode::IntegratorSettings& settings);

} // namespace poisson::gyro2d
