#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qhyp/qmat.hpp"

namespace qhyp {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cdouble = std::complex<double>;

/// Decomposition q = a + j*b with complex a, b. With a = w + i x and
/// b = y - i z the map below is multiplicative: for complex c one has
/// j*c = conj(c)*j, hence (a + j b)(a' + j b') = (a a' - conj(b) b') + j (...).
inline std::pair<cdouble, cdouble> complex_pair(const Quaternion& q) {
    return {cdouble(q.w, q.x), cdouble(q.y, -q.z)};
}

inline Quaternion quaternion_from_pair(const cdouble& a, const cdouble& b) {
    return {a.real(), a.imag(), b.real(), -b.imag()};
}

/// Complex image of a quaternion matrix M = P + j Q as the 2s-dimensional
/// block matrix [[P, -conj(Q)], [Q, conj(P)]]. The map is multiplicative and
/// a right eigenvalue class of M corresponds to the eigenvalue pair
/// {lambda, conj(lambda)} of the image.
inline CMat complex_adjoint(const QMat& m) {
    const int s = m.size();
    CMat c(2 * s, 2 * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const auto [p, q] = complex_pair(m.at(i, j));
            c(i, j) = p;
            c(i, j + s) = -std::conj(q);
            c(i + s, j) = q;
            c(i + s, j + s) = std::conj(p);
        }
    return c;
}

/// Vector counterpart: v = x + j y maps to [x; y], and
/// complex_adjoint(M) * embed(v) = embed(M v); right multiplication of v by a
/// complex scalar is plain scalar multiplication of the embedded vector.
inline CVec complex_embed(const QVector& v) {
    const int s = v.size();
    CVec c(2 * s);
    for (int i = 0; i < s; ++i) {
        const auto [x, y] = complex_pair(v.e[i]);
        c(i) = x;
        c(i + s) = y;
    }
    return c;
}

inline QVector quaternion_vector_from(const CVec& c) {
    const int s = static_cast<int>(c.size()) / 2;
    QVector v = QVector::zeros(s);
    for (int i = 0; i < s; ++i) v.e[i] = quaternion_from_pair(c(i), c(i + s));
    return v;
}

struct EigenSystem {
    std::vector<cdouble> values;  ///< all 2s eigenvalues of the complex image
    CMat vectors;                 ///< matching columns
};

inline EigenSystem eigensystem(const QMat& m) {
    Eigen::ComplexEigenSolver<CMat> solver(complex_adjoint(m), true);
    if (solver.info() != Eigen::Success)
        throw InternalError("eigensystem: complex eigensolver failed");
    EigenSystem sys;
    const auto& ev = solver.eigenvalues();
    sys.values.assign(ev.data(), ev.data() + ev.size());
    sys.vectors = solver.eigenvectors();
    return sys;
}

/// Reduces the 2s eigenvalues of the complex image to the s similarity-class
/// representatives (modulus, angle in [0, pi]). The spectrum is closed under
/// conjugation, so representatives come in coincident pairs; pairs are matched
/// greedily by nearest neighbour (distinct classes may share a modulus or an
/// angle, so no single sort key brings partners adjacent) and averaged.
inline std::vector<ComplexRep> class_representatives(const std::vector<cdouble>& values) {
    std::vector<ComplexRep> reps;
    reps.reserve(values.size());
    double scale = 1.0;
    for (const auto& v : values) {
        reps.push_back({std::abs(v), std::atan2(std::abs(v.imag()), v.real())});
        scale = std::max(scale, reps.back().modulus);
    }
    std::vector<char> used(reps.size(), 0);
    std::vector<ComplexRep> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        std::size_t partner = reps.size();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (used[j]) continue;
            const double d = std::hypot(reps[i].modulus - reps[j].modulus,
                                        reps[i].angle - reps[j].angle);
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        if (partner == reps.size() || best > 1e-5 * scale)
            throw InternalError("class_representatives: conjugate pairing failed");
        used[partner] = 1;
        out.push_back({0.5 * (reps[i].modulus + reps[partner].modulus),
                       0.5 * (reps[i].angle + reps[partner].angle)});
    }
    return out;
}

/// Right eigenvector of m for the eigenvalue of the complex image nearest to
/// `target`. The defining relation m*z = z*lambda is verified explicitly.
inline QVector right_eigenvector_near(const QMat& m, const EigenSystem& sys,
                                      const cdouble& target) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(sys.values.size()); ++i)
        if (std::abs(sys.values[i] - target) < std::abs(sys.values[best] - target))
            best = i;
    const cdouble lambda = sys.values[best];
    QVector z = quaternion_vector_from(sys.vectors.col(best));
    const Quaternion lq(lambda.real(), lambda.imag(), 0.0, 0.0);
    const QVector resid = (m * z) - z.scaled(lq);
    const double scale = std::max(1.0, max_entry_norm(m)) * std::max(1e-300, z.euclid_norm());
    if (resid.euclid_norm() > 1e-8 * scale)
        throw InternalError("right_eigenvector_near: residual check failed");
    return z;
}

/// Full right eigenspace for the class of `lambda`: quaternion vectors built
/// from a kernel basis of (complex image - lambda I). Vectors are normalized
/// to unit Euclidean norm.
inline std::vector<QVector> eigenspace_kernel(const QMat& m, const cdouble& lambda,
                                              double tol = 1e-7) {
    CMat a = complex_adjoint(m);
    const int dim = static_cast<int>(a.rows());
    for (int i = 0; i < dim; ++i) a(i, i) -= lambda;
    Eigen::FullPivLU<CMat> lu(a);
    lu.setThreshold(tol);
    const CMat kernel = lu.kernel();
    std::vector<QVector> basis;
    if (lu.dimensionOfKernel() == 0) return basis;
    for (int c = 0; c < kernel.cols(); ++c) {
        CVec col = kernel.col(c);
        const double n = col.norm();
        if (n < 1e-14) continue;
        basis.push_back(quaternion_vector_from(col / n));
    }
    return basis;
}

}  // namespace qhyp
