#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qhyp/embedding.hpp"
#include "qhyp/hspace.hpp"
#include "qhyp/spectrum.hpp"

namespace qhyp {

/// Block decomposition of a matrix in Sp(n,1):
///
///     g = [ A      alpha  beta ]      A: (n-1) x (n-1)
///         [ eta    a      b    ]      alpha, beta: (n-1)-columns
///         [ theta  c      d    ]      eta, theta: (n-1)-rows
///
/// so that g^{-1} = [ A*, -theta*, -eta* ; -beta*, conj(d), conj(b) ;
/// -alpha*, conj(c), conj(a) ].
struct SpBlocks {
    QMat A;
    std::vector<Quaternion> alpha, beta;  // columns
    std::vector<Quaternion> eta, theta;   // rows
    Quaternion a, b, c, d;
};

/// A J-unitary quaternion matrix: g* J g = J up to a scale-aware residual.
/// Immutable after validation; products and inverses of validated matrices
/// stay within the class without re-validation.
class SpMatrix {
public:
    static constexpr double kValidationTol = 1e-9;

    /// Accepts m iff ||m* J m - J||_F <= 1e-9 * ||m||_F^2.
    static SpMatrix validate(const QMat& m) {
        if (m.size() < 2) throw DimensionMismatch("SpMatrix: size must be >= 2");
        const double resid = symplectic_residual(m);
        const double scale = frobenius(m);
        if (resid > kValidationTol * scale * scale)
            throw NotSymplectic(resid, "matrix does not preserve the Hermitian form, residual " +
                                           std::to_string(resid));
        return SpMatrix(m);
    }

    static double symplectic_residual(const QMat& m) {
        const QMat j = j_form_matrix(m.size());
        return frobenius(conj_transpose(m) * (j * m) - j);
    }

    const QMat& raw() const { return m_; }
    int size() const { return m_.size(); }
    int n() const { return m_.size() - 1; }

    SpBlocks blocks() const {
        const int s = size();
        const int k = s - 2;  // = n - 1
        SpBlocks b;
        b.A = QMat(k);
        b.alpha.resize(k);
        b.beta.resize(k);
        b.eta.resize(k);
        b.theta.resize(k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) b.A.at(i, j) = m_.at(i, j);
            b.alpha[i] = m_.at(i, s - 2);
            b.beta[i] = m_.at(i, s - 1);
            b.eta[i] = m_.at(s - 2, i);
            b.theta[i] = m_.at(s - 1, i);
        }
        b.a = m_.at(s - 2, s - 2);
        b.b = m_.at(s - 2, s - 1);
        b.c = m_.at(s - 1, s - 2);
        b.d = m_.at(s - 1, s - 1);
        return b;
    }

    /// Inverse by the closed block pattern g^{-1} = J^{-1} g* J (J^2 = I).
    SpMatrix inverse() const {
        const int s = size();
        const int k = s - 2;
        QMat inv(s);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) inv.at(i, j) = m_.at(j, i).conj();
            inv.at(i, s - 2) = -m_.at(s - 1, i).conj();  // -theta*
            inv.at(i, s - 1) = -m_.at(s - 2, i).conj();  // -eta*
            inv.at(s - 2, i) = -m_.at(i, s - 1).conj();  // -beta*
            inv.at(s - 1, i) = -m_.at(i, s - 2).conj();  // -alpha*
        }
        inv.at(s - 2, s - 2) = m_.at(s - 1, s - 1).conj();  // conj(d)
        inv.at(s - 2, s - 1) = m_.at(s - 2, s - 1).conj();  // conj(b)
        inv.at(s - 1, s - 2) = m_.at(s - 1, s - 2).conj();  // conj(c)
        inv.at(s - 1, s - 1) = m_.at(s - 2, s - 2).conj();  // conj(a)
        return SpMatrix(inv);
    }

    /// Residual norms of the twelve block identities equivalent to
    /// g g^{-1} = g^{-1} g = I, in this order:
    ///   0: A A* - alpha beta* - beta alpha* - I
    ///   1: -A theta* + alpha conj(d) + beta conj(c)
    ///   2: -A eta* + alpha conj(b) + beta conj(a)
    ///   3: -eta theta* + a conj(d) + b conj(c) - 1
    ///   4: -eta eta* + a conj(b) + b conj(a)
    ///   5: -theta theta* + c conj(d) + d conj(c)
    ///   6: A* A - theta* eta - eta* theta - I
    ///   7: A* alpha - theta* a - eta* c
    ///   8: A* beta - theta* b - eta* d
    ///   9: -beta* alpha + conj(d) a + conj(b) c - 1
    ///  10: -beta* beta + conj(d) b + conj(b) d
    ///  11: -alpha* alpha + conj(c) a + conj(a) c
    std::array<double, 12> identity_residuals() const {
        const SpBlocks bl = blocks();
        const int k = static_cast<int>(bl.alpha.size());
        std::array<double, 12> out{};

        auto norm_of = [](const Quaternion& q) { return q.norm(); };

        // 0: A A* - alpha beta* - beta alpha* - I
        {
            double s = 0.0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    Quaternion v{};
                    for (int t = 0; t < k; ++t) v += bl.A.at(i, t) * bl.A.at(j, t).conj();
                    v -= bl.alpha[i] * bl.beta[j].conj();
                    v -= bl.beta[i] * bl.alpha[j].conj();
                    if (i == j) v -= 1.0;
                    s += v.norm_sq();
                }
            out[0] = std::sqrt(s);
        }
        // 1, 2: column identities
        {
            double s1 = 0.0, s2 = 0.0;
            for (int i = 0; i < k; ++i) {
                Quaternion v1{}, v2{};
                for (int t = 0; t < k; ++t) {
                    v1 -= bl.A.at(i, t) * bl.theta[t].conj();
                    v2 -= bl.A.at(i, t) * bl.eta[t].conj();
                }
                v1 += bl.alpha[i] * bl.d.conj() + bl.beta[i] * bl.c.conj();
                v2 += bl.alpha[i] * bl.b.conj() + bl.beta[i] * bl.a.conj();
                s1 += v1.norm_sq();
                s2 += v2.norm_sq();
            }
            out[1] = std::sqrt(s1);
            out[2] = std::sqrt(s2);
        }
        // 3, 4, 5: scalar identities in the rows
        {
            Quaternion v3{}, v4{}, v5{};
            for (int t = 0; t < k; ++t) {
                v3 -= bl.eta[t] * bl.theta[t].conj();
                v4 -= bl.eta[t] * bl.eta[t].conj();
                v5 -= bl.theta[t] * bl.theta[t].conj();
            }
            v3 += bl.a * bl.d.conj() + bl.b * bl.c.conj() - Quaternion(1.0);
            v4 += bl.a * bl.b.conj() + bl.b * bl.a.conj();
            v5 += bl.c * bl.d.conj() + bl.d * bl.c.conj();
            out[3] = norm_of(v3);
            out[4] = norm_of(v4);
            out[5] = norm_of(v5);
        }
        // 6: A* A - theta* eta - eta* theta - I
        {
            double s = 0.0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    Quaternion v{};
                    for (int t = 0; t < k; ++t) v += bl.A.at(t, i).conj() * bl.A.at(t, j);
                    v -= bl.theta[i].conj() * bl.eta[j];
                    v -= bl.eta[i].conj() * bl.theta[j];
                    if (i == j) v -= 1.0;
                    s += v.norm_sq();
                }
            out[6] = std::sqrt(s);
        }
        // 7, 8: column identities of the transpose pass
        {
            double s7 = 0.0, s8 = 0.0;
            for (int i = 0; i < k; ++i) {
                Quaternion v7{}, v8{};
                for (int t = 0; t < k; ++t) {
                    v7 += bl.A.at(t, i).conj() * bl.alpha[t];
                    v8 += bl.A.at(t, i).conj() * bl.beta[t];
                }
                v7 -= bl.theta[i].conj() * bl.a + bl.eta[i].conj() * bl.c;
                v8 -= bl.theta[i].conj() * bl.b + bl.eta[i].conj() * bl.d;
                s7 += v7.norm_sq();
                s8 += v8.norm_sq();
            }
            out[7] = std::sqrt(s7);
            out[8] = std::sqrt(s8);
        }
        // 9, 10, 11: scalar identities in the columns
        {
            Quaternion v9{}, v10{}, v11{};
            for (int t = 0; t < k; ++t) {
                v9 -= bl.beta[t].conj() * bl.alpha[t];
                v10 -= bl.beta[t].conj() * bl.beta[t];
                v11 -= bl.alpha[t].conj() * bl.alpha[t];
            }
            v9 += bl.d.conj() * bl.a + bl.b.conj() * bl.c - Quaternion(1.0);
            v10 += bl.d.conj() * bl.b + bl.b.conj() * bl.d;
            v11 += bl.c.conj() * bl.a + bl.a.conj() * bl.c;
            out[9] = norm_of(v9);
            out[10] = norm_of(v10);
            out[11] = norm_of(v11);
        }
        return out;
    }

    /// Matrix power by repeated squaring, k >= 0.
    SpMatrix power(int k) const {
        if (k < 0) throw MalformedInput("power: exponent must be >= 0");
        QMat acc = QMat::identity(size());
        QMat base = m_;
        int e = k;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return SpMatrix(acc);
    }

    friend SpMatrix operator*(const SpMatrix& l, const SpMatrix& r) {
        if (l.size() != r.size()) throw DimensionMismatch("SpMatrix product: sizes differ");
        return SpMatrix(l.m_ * r.m_);
    }

private:
    explicit SpMatrix(QMat m) : m_(std::move(m)) {}
    QMat m_;
};

inline QVector apply(const SpMatrix& g, const QVector& v) { return g.raw() * v; }

/// Image of a point; the kind is preserved because the form is.
inline ProjPoint apply(const SpMatrix& g, const ProjPoint& p) {
    return {g.raw() * p.lift, p.kind};
}

enum class IsometryClass { Elliptic, Parabolic, Loxodromic };

inline const char* to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::Elliptic: return "Elliptic";
        case IsometryClass::Parabolic: return "Parabolic";
        default: return "Loxodromic";
    }
}

struct Classification {
    IsometryClass kind = IsometryClass::Elliptic;
    /// Set when the decision was numerically delicate (spectral radius inside
    /// the tolerance band, or a unit-modulus spectrum without a clear null
    /// direction).
    bool borderline = false;
};

namespace detail {

/// Modulus threshold separating loxodromic from unit-modulus spectra.
constexpr double kEigTol = 1e-7;

/// Hermitian Gram matrix of the indefinite form restricted to the span of the
/// given lifts; its quadratic form in complex coefficients equals
/// herm(sum z_k c_k, sum z_k c_k).
inline CMat form_gram(const std::vector<QVector>& basis) {
    const int d = static_cast<int>(basis.size());
    CMat h(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            h(l, k) = complex_pair(herm(basis[k], basis[l])).first;
    return 0.5 * (h + h.adjoint());  // symmetrize away roundoff
}

/// Smallest eigenvalue of the restricted form; empty basis yields +inf.
inline double min_form_eigenvalue(const std::vector<QVector>& basis) {
    if (basis.empty()) return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<CMat> solver(form_gram(basis));
    if (solver.info() != Eigen::Success)
        throw InternalError("min_form_eigenvalue: Hermitian eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

}  // namespace detail

/// Chen-Greenberg trichotomy by fixed-point location. Loxodromic iff the
/// complex image has spectral radius > 1 + tol; otherwise elliptic iff some
/// unit-modulus eigenspace contains an interior direction (the restricted form
/// has a negative eigenvalue), else parabolic.
inline Classification classify_detail(const SpMatrix& g) {
    const QMat& m = g.raw();
    const QMat id = QMat::identity(m.size());
    if (frobenius(m - id) < 1e-12 || frobenius(m + id) < 1e-12)
        throw NearIdentity("classify: trivial element");

    const EigenSystem sys = eigensystem(m);
    double maxmod = 0.0;
    for (const auto& v : sys.values) maxmod = std::max(maxmod, std::abs(v));
    if (maxmod > 1.0 + detail::kEigTol) return {IsometryClass::Loxodromic, false};
    const bool band = maxmod > 1.0 + 1e-9;

    // Unit-modulus spectrum: inspect each eigenvalue class once.
    std::vector<cdouble> centers;
    for (const auto& v : sys.values) {
        const cdouble rep(v.real(), std::abs(v.imag()));
        bool seen = false;
        for (const auto& c : centers)
            if (std::abs(c - rep) <= 10 * detail::kEigTol) {
                seen = true;
                break;
            }
        if (!seen) centers.push_back(rep);
    }

    bool has_null = false;
    for (const auto& c : centers) {
        const auto basis = eigenspace_kernel(m, c);
        const double lo = detail::min_form_eigenvalue(basis);
        if (lo < -1e-8) return {IsometryClass::Elliptic, band};
        if (lo <= 1e-8) has_null = true;
    }
    return {IsometryClass::Parabolic, band || !has_null};
}

inline IsometryClass classify(const SpMatrix& g) { return classify_detail(g).kind; }

/// Eigen-data of a loxodromic element. `delta` and `mg` are the conjugacy
/// invariants
///   delta = max_i |lambda_i - 1|,
///   mg    = 2 delta + |lambda_n - 1| + |conj(lambda_n)^{-1} - 1|,
/// computed from similarity-class representatives. The fixed points are the
/// null eigenvectors of the expanding / contracting classes.
struct LoxodromicData {
    std::vector<double> angles;  ///< beta_1..beta_{n-1}, ascending
    double beta_n = 0.0;
    double length = 0.0;  ///< l = 2 log|lambda_n| > 0
    double delta = 0.0;
    double mg = 0.0;
    ProjPoint fixed_attract;  ///< boundary fixed point of the expanding class
    ProjPoint fixed_repel;

    AngleProfile profile() const { return {angles, beta_n, length}; }
};

inline LoxodromicData loxodromic_data(const SpMatrix& g) {
    const EigenSystem sys = eigensystem(g.raw());
    std::vector<ComplexRep> reps = class_representatives(sys.values);
    std::sort(reps.begin(), reps.end(),
              [](const ComplexRep& a, const ComplexRep& b) { return a.modulus < b.modulus; });

    const ComplexRep lo_raw = reps.front();
    const ComplexRep hi = reps.back();
    if (hi.modulus <= 1.0 + detail::kEigTol)
        throw NotLoxodromic("loxodromic_data: spectral radius within tolerance of 1");
    // The contracting eigenvalue carries absolute error amplified by the
    // dynamic range of the spectrum; the pairing check scales accordingly and
    // the contracting representative is rebuilt from the expanding one, whose
    // relative accuracy is the best available.
    const double range = hi.modulus * hi.modulus;
    if (std::abs(hi.modulus * lo_raw.modulus - 1.0) > 1e-9 + 1e-12 * range ||
        std::abs(hi.angle - lo_raw.angle) > 1e-7 + 1e-12 * range)
        throw InternalError("loxodromic_data: expanding/contracting classes fail to pair");

    LoxodromicData data;
    data.length = 2.0 * std::log(hi.modulus);
    data.beta_n = hi.angle;
    const ComplexRep lo{std::exp(-0.5 * data.length), data.beta_n};
    for (std::size_t i = 1; i + 1 < reps.size(); ++i) {
        if (std::abs(reps[i].modulus - 1.0) > 1e-6)
            throw InternalError("loxodromic_data: non-unit middle eigenvalue class");
        data.angles.push_back(reps[i].angle);
    }
    std::sort(data.angles.begin(), data.angles.end());

    data.delta = 0.0;
    for (double b : data.angles)
        data.delta = std::max(data.delta, 2.0 * std::sin(0.5 * b));
    data.mg = 2.0 * data.delta + hi.dist_to_one() + lo.dist_to_one();
    if (!(data.mg > 0.0)) throw InternalError("loxodromic_data: invariant must be positive");

    // Cross-check against the closed form of the power invariant at k = 1.
    const double poi1 = mgk(data.profile(), 1);
    if (std::abs(data.mg - poi1) > 1e-10 * std::max(1.0, data.mg))
        throw InternalError("loxodromic_data: closed-form cross-check failed");

    const QVector za =
        right_eigenvector_near(g.raw(), sys, std::polar(hi.modulus, hi.angle));
    const QVector zr = right_eigenvector_near(g.raw(), sys, std::polar(lo.modulus, lo.angle));
    for (const QVector* z : {&za, &zr}) {
        const ProjPoint p = classify_point(*z);
        if (p.kind != PointKind::Boundary)
            throw InternalError("loxodromic_data: fixed point is not on the boundary");
    }
    data.fixed_attract = {za, PointKind::Boundary};
    data.fixed_repel = {zr, PointKind::Boundary};
    return data;
}

}  // namespace qhyp
