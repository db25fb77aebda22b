#pragma once

#include <cmath>
#include <random>

#include "poisson/linalg.hpp"
#include "poisson/so3.hpp"

// Shared test utilities and independent oracles. Everything here is kept
// separate from the library code paths it is used to check.

namespace testutil {

using poisson::Mat3;
using poisson::Vec3;

inline Vec3 random_unit(std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        Vec3 v{n(rng), n(rng), n(rng)};
        const double len = norm(v);
        if (len > 0.1) return v / len;
    }
}

inline Vec3 random_vec(std::mt19937& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng), n(rng)};
}

inline Vec3 random_tangent(std::mt19937& rng, const Vec3& nu) {
    while (true) {
        Vec3 v = random_vec(rng);
        v = v - nu * dot(nu, v);
        if (norm(v) > 0.1) return v / norm(v);
    }
}

inline poisson::so3::Rotation random_rotation(std::mt19937& rng) {
    return poisson::so3::exp_hat(random_vec(rng, 1.2));
}

// ---- independent polar-decomposition oracle ----------------------------
// Eigen-decomposition of a symmetric 3x3 by cyclic Jacobi, used to build
// (M^T M)^{-1/2} and hence the polar factor without the library's Newton
// iteration.

struct JacobiEig {
    Vec3 values;
    Mat3 vectors; // columns are eigenvectors
};

inline JacobiEig jacobi_eig(Mat3 a) {
    Mat3 v = Mat3::identity();
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Mat3 rot = Mat3::identity();
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = rot.transposed() * a * rot;
                v = v * rot;
            }
    }
    return {{a(0, 0), a(1, 1), a(2, 2)}, v};
}

/// Polar factor of m via (m^T m)^{-1/2}.
inline Mat3 polar_factor_oracle(const Mat3& m) {
    const JacobiEig eig = jacobi_eig(m.transposed() * m);
    Mat3 inv_sqrt;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (int k = 0; k < 3; ++k)
                sum += eig.vectors(i, k) * eig.vectors(j, k) / std::sqrt(eig.values[k]);
            inv_sqrt(i, j) = sum;
        }
    return m * inv_sqrt;
}

} // namespace testutil
