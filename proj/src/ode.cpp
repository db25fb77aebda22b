#include "poisson/ode.hpp"

#include <algorithm>
#include <cmath>

namespace poisson::ode {

namespace {

constexpr double kMinStep = 1e-12;
constexpr double kSafety = 0.9;

using Vec = std::vector<double>;

void axpy(Vec& out, const Vec& y, double a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * x[i];
}

// One classic RK4 step; k1 is the derivative at (t, y).
void rk4_step(const Rhs& rhs, double t, const Vec& y, const Vec& k1, double h, Vec& out,
              Vec& k2, Vec& k3, Vec& k4, Vec& tmp) {
    axpy(tmp, y, 0.5 * h, k1);
    rhs(t + 0.5 * h, tmp, k2);
    axpy(tmp, y, 0.5 * h, k2);
    rhs(t + 0.5 * h, tmp, k3);
    axpy(tmp, y, h, k3);
    rhs(t + h, tmp, k4);
    for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Fehlberg 4(5) tableau.
constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
constexpr double a21 = 1.0 / 4;
constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104,
                 a65 = -11.0 / 40;
// 5th-order solution weights
constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430, b5 = -9.0 / 50,
                 b6 = 2.0 / 55;
// 4th-order embedded weights
constexpr double d1 = 25.0 / 216, d3 = 1408.0 / 2565, d4 = 2197.0 / 4104, d5 = -1.0 / 5;

struct Rkf45Result {
    double error; // scaled error, accept when <= 1
};

Rkf45Result rkf45_step(const Rhs& rhs, double t, const Vec& y, const Vec& k1, double h, Vec& out,
                       double abs_tol, double rel_tol, std::array<Vec, 6>& k, Vec& tmp) {
    const std::size_t n = y.size();
    k[0] = k1;
    axpy(tmp, y, h * a21, k[0]);
    rhs(t + c2 * h, tmp, k[1]);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
    rhs(t + c3 * h, tmp, k[2]);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    rhs(t + c4 * h, tmp, k[3]);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    rhs(t + c5 * h, tmp, k[4]);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] +
                 h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i]);
    rhs(t + c6 * h, tmp, k[5]);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y5 =
            y[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
        const double y4 = y[i] + h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i]);
        out[i] = y5;
        const double sc = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y5));
        err = std::max(err, std::fabs(y5 - y4) / sc);
    }
    return {err};
}

} // namespace

void IntegratorSettings::validate() const {
    const bool fixed_ok = step > 0.0;
    const bool adaptive_ok = abs_tol > 0.0 && rel_tol > 0.0;
    if (method == Method::rk4 && !fixed_ok)
        throw Error("IntegratorSettings: rk4 requires step > 0");
    if (method == Method::rkf45 && !adaptive_ok)
        throw Error("IntegratorSettings: rkf45 requires positive tolerances");
    if (!(t_end > 0.0)) throw Error("IntegratorSettings: t_end must be positive");
    if (method == Method::rkf45 && !(max_step > 0.0))
        throw Error("IntegratorSettings: max_step must be positive");
}

std::vector<StepRecord> integrate(const Rhs& rhs, std::span<const double> initial,
                                  const IntegratorSettings& settings,
                                  const std::vector<Hook>& hooks) {
    settings.validate();
    const std::size_t n = initial.size();
    Vec y(initial.begin(), initial.end());
    Vec deriv(n), k2(n), k3(n), k4(n), tmp(n), next(n);
    std::array<Vec, 6> kbuf;
    for (auto& k : kbuf) k.assign(n, 0.0);

    std::vector<StepRecord> records;
    rhs(0.0, y, deriv);
    records.push_back({0.0, y, deriv, true, 0.0});

    auto run_hooks = [&](long idx, double t) {
        for (const auto& hook : hooks)
            if (!hook(idx, t, std::span<double>(y)))
                throw HookAbort("integrate: hook requested abort");
    };

    const double t_end = settings.t_end;

    if (settings.method == Method::rk4) {
        const double h0 = settings.step;
        const long nsteps = static_cast<long>(std::ceil(t_end / h0 - 1e-9));
        for (long i = 0; i < nsteps; ++i) {
            const double t = static_cast<double>(i) * h0;
            const double t_next = (i + 1 == nsteps) ? t_end : t + h0;
            rk4_step(rhs, t, y, deriv, t_next - t, next, k2, k3, k4, tmp);
            y.swap(next);
            run_hooks(i + 1, t_next);
            rhs(t_next, y, deriv);
            records.push_back({t_next, y, deriv, true, 0.0});
        }
        return records;
    }

    // rkf45
    double t = 0.0;
    double h = std::min(settings.max_step, t_end);
    long accepted = 0;
    while (t < t_end - 1e-14 * t_end) {
        h = std::min(h, t_end - t);
        const auto res = rkf45_step(rhs, t, y, deriv, h, next, settings.abs_tol, settings.rel_tol,
                                    kbuf, tmp);
        if (res.error <= 1.0) {
            t += h;
            y.swap(next);
            ++accepted;
            run_hooks(accepted, t);
            rhs(t, y, deriv);
            records.push_back({t, y, deriv, true, res.error});
        } else {
            records.push_back({t, y, deriv, false, res.error});
        }
        const double factor =
            res.error > 0.0 ? kSafety * std::pow(res.error, -0.2) : 5.0;
        h *= std::clamp(factor, 0.1, 5.0);
        h = std::min(h, settings.max_step);
        if (h < kMinStep)
            throw StepRejected("integrate: rkf45 step size underflow");
    }
    return records;
}

std::vector<double> dense_eval(const std::vector<StepRecord>& records, double t) {
    // bracketing search over accepted records (monotone t)
    const StepRecord* lo = nullptr;
    const StepRecord* hi = nullptr;
    for (const auto& r : records) {
        if (!r.accepted) continue;
        if (r.t == t) return r.state;
        if (r.t <= t) {
            lo = &r;
        } else {
            hi = &r;
            break;
        }
    }
    if (!lo || !hi)
        throw OutOfRange("dense_eval: t outside covered interval");

    const double h = hi->t - lo->t;
    const double s = (t - lo->t) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    std::vector<double> out(lo->state.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = h00 * lo->state[i] + h10 * h * lo->deriv[i] + h01 * hi->state[i] +
                 h11 * h * hi->deriv[i];
    return out;
}

} // namespace poisson::ode
