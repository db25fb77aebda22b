#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small fixed-size linear algebra used throughout the library.
// Everything is a plain value type; no dynamic allocation.

namespace poisson {

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    Vec3() = default;
    Vec3(double x1, double x2, double x3) : v{x1, x2, x3} {}

    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
    Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
    Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
    Vec3 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
    Vec3 operator/(double s) const { return {v[0] / s, v[1] / s, v[2] / s}; }
    Vec3& operator+=(const Vec3& o) {
        v[0] += o.v[0]; v[1] += o.v[1]; v[2] += o.v[2];
        return *this;
    }

    bool finite() const {
        return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
    }
};

inline Vec3 operator*(double s, const Vec3& a) { return a * s; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec3& a) {
    return std::max({std::fabs(a[0]), std::fabs(a[1]), std::fabs(a[2])});
}

/// 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    Mat3() = default;

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 r;
        for (int j = 0; j < 3; ++j) {
            r(0, j) = r0[j];
            r(1, j) = r1[j];
            r(2, j) = r2[j];
        }
        return r;
    }

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

    Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
    Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
        return r;
    }

    Vec3 operator*(const Vec3& x) const {
        return {(*this)(0, 0) * x[0] + (*this)(0, 1) * x[1] + (*this)(0, 2) * x[2],
                (*this)(1, 0) * x[0] + (*this)(1, 1) * x[1] + (*this)(1, 2) * x[2],
                (*this)(2, 0) * x[0] + (*this)(2, 1) * x[1] + (*this)(2, 2) * x[2]};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
               (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
               (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
    }

    bool finite() const {
        for (double x : m)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

inline Mat3 operator*(double s, const Mat3& a) { return a * s; }

/// Max absolute entry.
inline double norm_inf(const Mat3& a) {
    double r = 0.0;
    for (double x : a.m) r = std::max(r, std::fabs(x));
    return r;
}

/// Inverse via adjugate; caller guarantees det != 0.
inline Mat3 inverse(const Mat3& a) {
    Mat3 r;
    const double d = a.det();
    r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
    return r;
}

struct Vec2 {
    std::array<double, 2> v{0.0, 0.0};

    Vec2() = default;
    Vec2(double x1, double x2) : v{x1, x2} {}

    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    Vec2 operator+(const Vec2& o) const { return {v[0] + o.v[0], v[1] + o.v[1]}; }
    Vec2 operator-(const Vec2& o) const { return {v[0] - o.v[0], v[1] - o.v[1]}; }
    Vec2 operator*(double s) const { return {v[0] * s, v[1] * s}; }
    Vec2 operator/(double s) const { return {v[0] / s, v[1] / s}; }
};

inline Vec2 operator*(double s, const Vec2& a) { return a * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

/// Signed area of the pair (a, b) in chart coordinates: det[a b].
inline double det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Symmetric 2x2 matrix (used for chart metrics).
struct Mat2 {
    // row-major
    std::array<double, 4> m{};

    Mat2() = default;
    Mat2(double a11, double a12, double a21, double a22) : m{a11, a12, a21, a22} {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    Mat2 operator+(const Mat2& o) const {
        return {m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]};
    }
    Mat2 operator*(double s) const { return {m[0] * s, m[1] * s, m[2] * s, m[3] * s}; }

    Vec2 operator*(const Vec2& x) const {
        return {m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]};
    }

    double det() const { return m[0] * m[3] - m[1] * m[2]; }
    double trace() const { return m[0] + m[3]; }
};

inline Mat2 operator*(double s, const Mat2& a) { return a * s; }

inline Mat2 inverse(const Mat2& a) {
    const double d = a.det();
    return {a(1, 1) / d, -a(0, 1) / d, -a(1, 0) / d, a(0, 0) / d};
}

/// Quadratic form x . (A y).
inline double quad(const Mat2& a, const Vec2& x, const Vec2& y) { return dot(x, a * y); }

} // namespace poisson
