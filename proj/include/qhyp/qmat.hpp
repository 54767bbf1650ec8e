#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qhyp/quaternion.hpp"

namespace qhyp {

/// Column vector over H. Scalars act on the right: (v.scaled(l))_i = v_i * l.
struct QVector {
    std::vector<Quaternion> e;

    QVector() = default;
    explicit QVector(std::vector<Quaternion> entries) : e(std::move(entries)) {}
    static QVector zeros(int size) { return QVector(std::vector<Quaternion>(size)); }
    /// Standard basis vector e_idx of the given size.
    static QVector basis(int size, int idx) {
        QVector v = zeros(size);
        v.e[idx] = 1.0;
        return v;
    }

    int size() const { return static_cast<int>(e.size()); }

    QVector scaled(const Quaternion& lambda) const {
        QVector r = *this;
        for (auto& q : r.e) q = q * lambda;
        return r;
    }

    double max_entry_norm() const {
        double m = 0.0;
        for (const auto& q : e) m = std::max(m, q.norm());
        return m;
    }

    double euclid_norm() const {
        double s = 0.0;
        for (const auto& q : e) s += q.norm_sq();
        return std::sqrt(s);
    }
};

inline QVector operator+(const QVector& a, const QVector& b) {
    QVector r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] += b.e[i];
    return r;
}
inline QVector operator-(const QVector& a, const QVector& b) {
    QVector r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

/// Square quaternion matrix, row-major, acting on column vectors from the left.
struct QMat {
    int n = 0;  ///< number of rows (= columns)
    std::vector<Quaternion> a;

    QMat() = default;
    explicit QMat(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    static QMat identity(int size) {
        QMat m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int size() const { return n; }

    Quaternion& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Quaternion& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

inline QMat operator*(const QMat& l, const QMat& r) {
    QMat m(l.n);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            Quaternion s{};
            for (int k = 0; k < l.n; ++k) s += l.at(i, k) * r.at(k, j);
            m.at(i, j) = s;
        }
    return m;
}

inline QVector operator*(const QMat& m, const QVector& v) {
    QVector r = QVector::zeros(m.n);
    for (int i = 0; i < m.n; ++i) {
        Quaternion s{};
        for (int k = 0; k < m.n; ++k) s += m.at(i, k) * v.e[k];
        r.e[i] = s;
    }
    return r;
}

inline QMat operator+(const QMat& l, const QMat& r) {
    QMat m = l;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += r.a[i];
    return m;
}
inline QMat operator-(const QMat& l, const QMat& r) {
    QMat m = l;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] -= r.a[i];
    return m;
}

inline QMat conj_transpose(const QMat& m) {
    QMat t(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) t.at(i, j) = m.at(j, i).conj();
    return t;
}

inline double frobenius(const QMat& m) {
    double s = 0.0;
    for (const auto& q : m.a) s += q.norm_sq();
    return std::sqrt(s);
}

inline double max_entry_norm(const QMat& m) {
    double v = 0.0;
    for (const auto& q : m.a) v = std::max(v, q.norm());
    return v;
}

/// Signature matrix of the Hermitian form on H^{n,1}: identity on the first
/// n-1 coordinates and the hyperbolic pairing [[0,-1],[-1,0]] on the last two.
/// size = n + 1 >= 2. Note J^2 = I.
inline QMat j_form_matrix(int size) {
    QMat j(size);
    for (int i = 0; i + 2 < size; ++i) j.at(i, i) = 1.0;
    j.at(size - 2, size - 1) = -1.0;
    j.at(size - 1, size - 2) = -1.0;
    return j;
}

}  // namespace qhyp
