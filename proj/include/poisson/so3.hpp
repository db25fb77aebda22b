#pragma once

#include <functional>

#include "poisson/errors.hpp"
#include "poisson/linalg.hpp"

// Algebra of SO(3): rotations in direction cosines, the hat/vee isomorphism
// between R^3 and skew matrices, spin of a rotation velocity, projection to
// the Poisson sphere, and finite-difference exterior derivatives of 1-forms.

namespace poisson::so3 {

inline constexpr double kOrthoTol = 1e-9;
inline constexpr double kSkewTol = 1e-9;
inline constexpr double kUnitTol = 1e-9;
inline constexpr double kFdFormEps = 1e-3;

/// A matrix Q with Q^T Q = Id (within kOrthoTol) and det Q > 0.
class Rotation {
public:
    /// Validates orthonormality and orientation; throws Degenerate otherwise.
    explicit Rotation(const Mat3& m);

    /// Identity rotation.
    Rotation() : m_(Mat3::identity()) {}

    const Mat3& matrix() const { return m_; }
    double operator()(int r, int c) const { return m_(r, c); }

    /// Max entry of |Q^T Q - Id|.
    double ortho_residual() const;

    static Rotation about_axis(int axis, double angle);

private:
    struct Unchecked {};
    Rotation(const Mat3& m, Unchecked) : m_(m) {}
    Mat3 m_;

    friend Rotation reorthonormalize(const Mat3&);
    friend Rotation exp_hat(const Vec3&);
};

/// Tangent vector to SO(3) in the (rotation, spin) trivialization.
struct TangentSO3 {
    Rotation q;
    Vec3 omega; // spin, i.e. f(Q^-1 Qdot)
};

/// Isomorphism f^-1: (w1,w2,w3) -> [[0,-w3,w2],[w3,0,-w1],[-w2,w1,0]].
/// hat(v) w = v x w.
Mat3 hat(const Vec3& v);

/// Inverse of hat on skew matrices. Throws NotSkew when |m + m^T| exceeds kSkewTol.
Vec3 vee(const Mat3& m);

/// Spin f(Q^-1 Qdot) of a rotation velocity. Throws NotTangent when
/// Q^-1 qdot is not skew within kSkewTol.
Vec3 spin(const Rotation& q, const Mat3& qdot);

/// Projection to the Poisson sphere: the first row of Q (direction cosines
/// of the space-fixed symmetry axis in the body frame).
Vec3 poisson_projection(const Rotation& q);

/// Differential of the Poisson projection in the spin trivialization:
/// (nu, omega) -> nu x omega. Throws NotUnit when |nu| != 1 within kUnitTol.
Vec3 tangent_projection(const Vec3& nu, const Vec3& omega);

/// Closest rotation in Frobenius norm (orthogonal polar factor).
/// Requires det m > 0 and |m^T m - Id|_inf < 0.5; throws Degenerate otherwise.
Rotation reorthonormalize(const Mat3& m);

/// Rodrigues exponential of hat(w).
Rotation exp_hat(const Vec3& w);

/// A 1-form on SO(3), evaluated on tangent vectors in spin trivialization.
using OneForm = std::function<double(const TangentSO3&)>;

/// d(eta)(X_u, X_v) at q, where X_u, X_v are the left-invariant fields of
/// spins u, v. Directional derivatives by central differences of size eps
/// along t -> q exp(t hat(u)); the bracket term uses [X_u, X_v] = X_{u x v}.
/// Truncation error O(eps^2).
double fd_exterior_derivative_1form(const OneForm& eta, const Rotation& q,
                                    const Vec3& u, const Vec3& v,
                                    double eps = kFdFormEps);

} // namespace poisson::so3
