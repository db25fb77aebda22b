#include "poisson/so3.hpp"

#include <cmath>

namespace poisson::so3 {

namespace {

double ortho_residual_of(const Mat3& m) {
    const Mat3 g = m.transposed() * m;
    return norm_inf(g - Mat3::identity());
}

} // namespace

Rotation::Rotation(const Mat3& m) : m_(m) {
    if (!m.finite())
        throw Degenerate("Rotation: non-finite entries");
    if (ortho_residual_of(m) > kOrthoTol)
        throw Degenerate("Rotation: not orthonormal within tolerance");
    if (m.det() <= 0.0)
        throw Degenerate("Rotation: negative determinant");
}

double Rotation::ortho_residual() const { return ortho_residual_of(m_); }

Rotation Rotation::about_axis(int axis, double angle) {
    Vec3 w;
    w[axis] = angle;
    return exp_hat(w);
}

Mat3 hat(const Vec3& v) {
    Mat3 m;
    m(0, 1) = -v[2];
    m(0, 2) = v[1];
    m(1, 0) = v[2];
    m(1, 2) = -v[0];
    m(2, 0) = -v[1];
    m(2, 1) = v[0];
    return m;
}

Vec3 vee(const Mat3& m) {
    if (norm_inf(m + m.transposed()) > kSkewTol)
        throw NotSkew("vee: matrix is not skew-symmetric");
    return {0.5 * (m(2, 1) - m(1, 2)),
            0.5 * (m(0, 2) - m(2, 0)),
            0.5 * (m(1, 0) - m(0, 1))};
}

Vec3 spin(const Rotation& q, const Mat3& qdot) {
    const Mat3 body = q.matrix().transposed() * qdot;
    if (norm_inf(body + body.transposed()) > kSkewTol)
        throw NotTangent("spin: qdot is not tangent to SO(3) at q");
    return {0.5 * (body(2, 1) - body(1, 2)),
            0.5 * (body(0, 2) - body(2, 0)),
            0.5 * (body(1, 0) - body(0, 1))};
}

Vec3 poisson_projection(const Rotation& q) { return q.matrix().row(0); }

Vec3 tangent_projection(const Vec3& nu, const Vec3& omega) {
    if (std::fabs(norm(nu) - 1.0) > kUnitTol)
        throw NotUnit("tangent_projection: nu is not a unit vector");
    return cross(nu, omega);
}

Rotation reorthonormalize(const Mat3& m) {
    if (!m.finite() || m.det() <= 0.0)
        throw Degenerate("reorthonormalize: non-positive determinant");
    if (ortho_residual_of(m) >= 0.5)
        throw Degenerate("reorthonormalize: too far from orthonormal");
    // Newton iteration for the orthogonal polar factor, X <- (X + X^-T)/2.
    // Quadratically convergent in this neighborhood.
    Mat3 x = m;
    for (int it = 0; it < 40; ++it) {
        const Mat3 next = (x + inverse(x).transposed()) * 0.5;
        const double delta = norm_inf(next - x);
        x = next;
        if (delta < 1e-15 && ortho_residual_of(x) < 1e-14) break;
    }
    return Rotation(x, Rotation::Unchecked{});
}

Rotation exp_hat(const Vec3& w) {
    const double theta = norm(w);
    const Mat3 k = hat(w);
    Mat3 r;
    if (theta < 1e-8) {
        // 2nd-order series; error ~ theta^3 < 1e-24.
        r = Mat3::identity() + k + (k * k) * 0.5;
    } else {
        const Mat3 kn = k * (1.0 / theta);
        r = Mat3::identity() + kn * std::sin(theta) + (kn * kn) * (1.0 - std::cos(theta));
    }
    return Rotation(r, Rotation::Unchecked{});
}

double fd_exterior_derivative_1form(const OneForm& eta, const Rotation& q,
                                    const Vec3& u, const Vec3& v, double eps) {
    if (!(eps > 0.0))
        throw Error("fd_exterior_derivative_1form: eps must be positive");
    const Mat3& qm = q.matrix();
    auto flow = [&qm](const Vec3& w, double t) {
        return Rotation(qm * exp_hat(w * t).matrix());
    };
    auto d_along = [&](const Vec3& dir, const Vec3& arg) {
        const double fp = eta({flow(dir, eps), arg});
        const double fm = eta({flow(dir, -eps), arg});
        return (fp - fm) / (2.0 * eps);
    };
    // d(eta)(U,V) = U eta(V) - V eta(U) - eta([U,V]), with [X_u,X_v] = X_{u x v}.
    return d_along(u, v) - d_along(v, u) - eta({q, cross(u, v)});
}

} // namespace poisson::so3
