#pragma once

#include <functional>
#include <span>
#include <vector>

#include "poisson/errors.hpp"

// Shared ODE engine: fixed-step RK4 and adaptive RKF45 over flat state
// vectors, with post-acceptance hooks and cubic-Hermite dense output.

namespace poisson::ode {

enum class Method { rk4, rkf45 };

struct IntegratorSettings {
    Method method = Method::rk4;
    double step = 1e-3;      // rk4 step size
    double abs_tol = 1e-10;  // rkf45 tolerances
    double rel_tol = 1e-10;
    double max_step = 0.1;
    int renorm_every = 16;   // consumed by hook installers, not the engine
    double t_end = 1.0;

    /// Throws Error unless (step > 0 or both tolerances > 0) and t_end > 0.
    void validate() const;
};

struct StepRecord {
    double t = 0.0;
    std::vector<double> state;
    std::vector<double> deriv; // rhs at (t, state), after hooks ran
    bool accepted = true;
    double error_estimate = 0.0;
};

/// rhs(t, y, dydt): writes the derivative of y into dydt.
using Rhs = std::function<void(double, std::span<const double>, std::span<double>)>;

/// Invoked after each accepted step, in registration order; may modify the
/// state in place (renormalization, chart switching). Returning false aborts
/// the run with HookAbort.
using Hook = std::function<bool(long step_index, double t, std::span<double> state)>;

/// Integrates from t=0 to settings.t_end. The returned records include the
/// initial state; rejected rkf45 attempts are recorded with accepted=false.
/// Throws StepRejected on rkf45 min-step underflow, HookAbort if a hook
/// returns false.
std::vector<StepRecord> integrate(const Rhs& rhs, std::span<const double> initial,
                                  const IntegratorSettings& settings,
                                  const std::vector<Hook>& hooks = {});

/// Cubic Hermite interpolation on the bracketing accepted step. Exact at
/// sample points. Throws OutOfRange outside the covered interval.
std::vector<double> dense_eval(const std::vector<StepRecord>& records, double t);

} // namespace poisson::ode
