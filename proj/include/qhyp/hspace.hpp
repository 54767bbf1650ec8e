#pragma once

#include <cmath>

#include "qhyp/qmat.hpp"

namespace qhyp {

/// Indefinite Hermitian form <z,w> = w* J z on H^{n,1}:
///   conj(w_1) z_1 + ... + conj(w_{n-1}) z_{n-1}
///     - (conj(w_n) z_{n+1} + conj(w_{n+1}) z_n).
/// Conjugate-symmetric, and herm(z*l, w*m) = conj(m) * herm(z, w) * l.
inline Quaternion herm(const QVector& z, const QVector& w) {
    if (z.size() != w.size()) throw DimensionMismatch("herm: vector sizes differ");
    const int s = z.size();
    if (s < 2) throw DimensionMismatch("herm: need at least 2 entries");
    Quaternion r{};
    for (int i = 0; i + 2 < s; ++i) r += w.e[i].conj() * z.e[i];
    r -= w.e[s - 2].conj() * z.e[s - 1];
    r -= w.e[s - 1].conj() * z.e[s - 2];
    return r;
}

inline double lift_scale(const QVector& v) { return v.max_entry_norm(); }

/// Scale-free tolerance for the null test of a lift.
inline double null_tolerance(const QVector& v) {
    const double s = lift_scale(v);
    return 1e-9 * s * s;
}

enum class PointKind { Interior, Boundary };

/// A point of the closed domain, carried by an explicit (never auto-normalized)
/// lift. All public outputs computed from a ProjPoint are lift-independent.
struct ProjPoint {
    QVector lift;
    PointKind kind = PointKind::Boundary;
};

/// Classifies a lift by the sign of <z,z>. Interior for <z,z> < -tol,
/// Boundary for |<z,z>| <= tol; lifts with <z,z> > tol are outside the
/// closure of the domain and rejected.
inline ProjPoint classify_point(const QVector& z) {
    if (lift_scale(z) == 0.0) throw ZeroVector("classify_point: zero lift");
    const double tol = null_tolerance(z);
    const double v = herm(z, z).w;  // the form is real on the diagonal
    if (v > tol) throw PositiveVector("classify_point: <z,z> > 0");
    return {z, v < -tol ? PointKind::Interior : PointKind::Boundary};
}

/// Fixed lift (0,...,0,1)^t of the origin boundary point.
inline ProjPoint point_origin(int n) {
    return {QVector::basis(n + 1, n), PointKind::Boundary};
}

/// Fixed lift (0,...,0,1,0)^t of the boundary point at infinity.
inline ProjPoint point_infinity(int n) {
    return {QVector::basis(n + 1, n - 1), PointKind::Boundary};
}

/// Projective equality: b = a * lambda for some nonzero quaternion lambda.
inline bool projectively_equal(const QVector& a, const QVector& b, double tol = 1e-8) {
    const double sa = lift_scale(a), sb = lift_scale(b);
    if (sa == 0.0 || sb == 0.0) throw ZeroVector("projectively_equal: zero lift");
    int pivot = 0;
    for (int i = 1; i < a.size(); ++i)
        if (a.e[i].norm() > a.e[pivot].norm()) pivot = i;
    const Quaternion lambda = a.e[pivot].inverse() * b.e[pivot];
    double resid = 0.0;
    for (int i = 0; i < a.size(); ++i)
        resid = std::max(resid, (b.e[i] - a.e[i] * lambda).norm());
    return resid <= tol * std::max(sb, sa * lambda.norm());
}

inline bool projectively_equal(const ProjPoint& a, const ProjPoint& b, double tol = 1e-8) {
    return projectively_equal(a.lift, b.lift, tol);
}

/// Bergman distance rho with cosh^2(rho/2) = |<z,w>|^2 / (<z,z><w,w>).
/// Independent of the choice of lifts.
inline double bergman_distance(const ProjPoint& p, const ProjPoint& q) {
    if (p.kind != PointKind::Interior || q.kind != PointKind::Interior)
        throw BoundaryPoint("bergman_distance: both points must be interior");
    const double num = herm(p.lift, q.lift).norm_sq();
    const double den = herm(p.lift, p.lift).w * herm(q.lift, q.lift).w;
    double c2 = num / den;
    if (c2 < 1.0) c2 = 1.0;
    return 2.0 * std::acosh(std::sqrt(c2));
}

}  // namespace qhyp
