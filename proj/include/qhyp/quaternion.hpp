#pragma once

#include <cmath>
#include <complex>

#include "qhyp/errors.hpp"

namespace qhyp {

/// Quaternion q = w + x*i + y*j + z*k over doubles.
///
/// This is the scalar ring of the whole library. Multiplication is the
/// Hamilton product and is not commutative; everywhere else in the library
/// scalars act on vectors from the right, so factor order matters.
struct Quaternion {
    double w = 0.0;  ///< real part
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(double real) : w(real) {}  // reals embed in H

    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    /// |q - 1|, the distance to the identity scalar.
    double dist_to_one() const {
        return std::sqrt((w - 1.0) * (w - 1.0) + x * x + y * y + z * z);
    }

    Quaternion inverse() const {
        const double n2 = norm_sq();
        if (n2 < 1e-300) throw ZeroQuaternion("inverse of (near-)zero quaternion");
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        w += r.w;
        x += r.x;
        y += r.y;
        z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        w -= r.w;
        x -= r.x;
        y -= r.y;
        z -= r.z;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, double s) {
    return {p.w * s, p.x * s, p.y * s, p.z * s};
}
constexpr Quaternion operator*(double s, const Quaternion& p) { return p * s; }

inline double abs(const Quaternion& q) { return q.norm(); }

/// The unique complex number m*exp(i*beta) with beta in [0, pi] conjugate to
/// a given quaternion. Every quaternion is similar (u q u^{-1}) to exactly one
/// such value, so (modulus, angle) is a complete similarity invariant.
struct ComplexRep {
    double modulus = 0.0;  ///< m >= 0
    double angle = 0.0;    ///< beta in [0, pi]

    std::complex<double> value() const { return std::polar(modulus, angle); }

    /// |m e^{i beta} - 1|, again a similarity invariant.
    double dist_to_one() const {
        return std::hypot(modulus * std::cos(angle) - 1.0, modulus * std::sin(angle));
    }
};

/// Similarity-class representative of q. The angle is computed via
/// atan2(|imag part|, w) for stability near 0 and pi.
inline ComplexRep similarity_class(const Quaternion& q) {
    const double n = q.norm();
    if (n < 1e-300) throw ZeroQuaternion("similarity_class of zero quaternion");
    return {n, std::atan2(q.imag_norm(), q.w)};
}

/// arccosh guarded against arguments dipping just below 1 by roundoff.
inline double acosh_clamped(double v) {
    if (v < 1.0) {
        if (v < 1.0 - 1e-12) throw InternalError("acosh argument below domain");
        return 0.0;
    }
    return std::acosh(v);
}

}  // namespace qhyp
