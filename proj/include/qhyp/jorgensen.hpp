#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhyp/xratio.hpp"

namespace qhyp {

/// Which discreteness condition a report refers to. Product is the combined
/// condition; CondA..CondD are the four single conditions (each of which
/// implies the product condition).
enum class TestCondition { Product, CondA, CondB, CondC, CondD };

inline const char* to_string(TestCondition c) {
    switch (c) {
        case TestCondition::Product: return "Product";
        case TestCondition::CondA: return "CondA";
        case TestCondition::CondB: return "CondB";
        case TestCondition::CondC: return "CondC";
        default: return "CondD";
    }
}

enum class TestConclusion { ElementaryOrNonDiscrete, Inconclusive };

/// Outcome of one cross-ratio discreteness test: the group generated by the
/// pair is either elementary or not discrete when triggered; nothing is
/// concluded otherwise.
struct TestReport {
    double lhs = 0.0;
    double rhs = 0.0;
    TestCondition condition = TestCondition::Product;
    bool triggered = false;
    TestConclusion conclusion = TestConclusion::Inconclusive;
};

namespace detail {

struct PairContext {
    LoxodromicData data;
    ProjPoint hu, hv;  // images of the fixed points under h
};

inline PairContext pair_context(const SpMatrix& g, const SpMatrix& h) {
    PairContext ctx{loxodromic_data(g), {}, {}};
    if (ctx.data.mg >= 1.0)
        throw MgTooLarge("discreteness test: requires M < 1, got " + std::to_string(ctx.data.mg));
    ctx.hu = apply(h, ctx.data.fixed_attract);
    ctx.hv = apply(h, ctx.data.fixed_repel);
    return ctx;
}

inline TestReport finish(double lhs, double rhs, TestCondition cond) {
    TestReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.condition = cond;
    r.triggered = lhs < rhs;
    r.conclusion =
        r.triggered ? TestConclusion::ElementaryOrNonDiscrete : TestConclusion::Inconclusive;
    return r;
}

}  // namespace detail

/// Product test with u the attracting and v the repelling fixed point of g:
///   |[h(u),u,v,h(v)]|^{1/2} |[h(u),v,u,h(v)]|^{1/2} < (1 - M) / M^2.
/// When g is in diagonal position the left side equals |ad|^{1/2} |bc|^{1/2}
/// of h's corner blocks; that reduction is cross-checked internally.
inline TestReport test_product_condition(const SpMatrix& g, const SpMatrix& h) {
    const auto ctx = detail::pair_context(g, h);
    const ProjPoint &u = ctx.data.fixed_attract, &v = ctx.data.fixed_repel;
    const double x1 = cross_ratio(ctx.hu, u, v, ctx.hv).abs;
    const double x2 = cross_ratio(ctx.hu, v, u, ctx.hv).abs;
    const double lhs = std::sqrt(x1) * std::sqrt(x2);
    const double m = ctx.data.mg;

    const int s = g.size();
    const bool diag = projectively_equal(QVector::basis(s, s - 2), ctx.data.fixed_attract.lift) &&
                      projectively_equal(QVector::basis(s, s - 1), ctx.data.fixed_repel.lift);
    if (diag) {
        const CornerModuli t = corner_moduli(h);
        const double reduced = std::sqrt(t.ad_abs) * std::sqrt(t.bc_abs);
        if (std::abs(lhs - reduced) > 1e-8 * (1.0 + lhs))
            throw InternalError("test_product_condition: diagonal-position reduction mismatch");
    }
    return detail::finish(lhs, (1.0 - m) / (m * m), TestCondition::Product);
}

/// Single-condition tests; for g in diagonal position these reduce to
///   CondA: |bc|^{1/2} < (1-M)/M        CondB: |ad|^{1/2} < (1-M)/M
///   CondC: |bc/ad|^{1/2} < 1-M         CondD: |ad| + |bc| < 2(1-M)/M^2.
inline TestReport test_single_condition(const SpMatrix& g, const SpMatrix& h, TestCondition cond) {
    if (cond == TestCondition::Product) return test_product_condition(g, h);
    const auto ctx = detail::pair_context(g, h);
    const ProjPoint &u = ctx.data.fixed_attract, &v = ctx.data.fixed_repel;
    const double m = ctx.data.mg;
    switch (cond) {
        case TestCondition::CondA:
            return detail::finish(std::sqrt(cross_ratio(ctx.hu, v, u, ctx.hv).abs),
                                  (1.0 - m) / m, cond);
        case TestCondition::CondB:
            return detail::finish(std::sqrt(cross_ratio(ctx.hu, u, v, ctx.hv).abs),
                                  (1.0 - m) / m, cond);
        case TestCondition::CondC:
            return detail::finish(std::sqrt(cross_ratio(u, v, ctx.hu, ctx.hv).abs), 1.0 - m,
                                  cond);
        default:
            return detail::finish(
                cross_ratio(ctx.hu, u, v, ctx.hv).abs + cross_ratio(ctx.hu, v, u, ctx.hv).abs,
                2.0 * (1.0 - m) / (m * m), cond);
    }
}

/// True when the standard boundary pair consists of fixed points of g, i.e.
/// the last two columns are concentrated on their own diagonal slots.
inline bool is_diagonal_position(const SpMatrix& g, double tol = 1e-8) {
    const int s = g.size();
    QVector c1 = QVector::zeros(s), c2 = QVector::zeros(s);
    for (int i = 0; i < s; ++i) {
        c1.e[i] = g.raw().at(i, s - 2);
        c2.e[i] = g.raw().at(i, s - 1);
    }
    return projectively_equal(QVector::basis(s, s - 2), c1, tol) &&
           projectively_equal(QVector::basis(s, s - 1), c2, tol);
}

/// J-unitary change of basis sending the attracting fixed point of g to the
/// point at infinity and the repelling one to the origin. The positive
/// complement is completed by pivoted Gram-Schmidt with the indefinite form.
inline SpMatrix diagonal_position_conjugator(const SpMatrix& g) {
    const LoxodromicData data = loxodromic_data(g);
    const int s = g.size();
    const QVector& p = data.fixed_attract.lift;
    const Quaternion sform = herm(p, data.fixed_repel.lift);
    if (sform.norm() < 1e-14)
        throw InternalError("conjugator: degenerate pairing of fixed points");
    const QVector q = data.fixed_repel.lift.scaled(-1.0 / sform.norm_sq() * sform);
    if ((herm(p, q) + Quaternion(1.0)).norm() > 1e-9)
        throw InternalError("conjugator: pairing normalization failed");

    // Project the standard basis off the span of {p, q}, then orthonormalize
    // n-1 pivots under the (positive definite) restricted form.
    std::vector<QVector> cand;
    for (int i = 0; i < s; ++i) {
        QVector v = QVector::basis(s, i);
        const Quaternion c1 = -herm(v, q), c2 = -herm(v, p);
        v = v - p.scaled(c1) - q.scaled(c2);
        cand.push_back(v);
    }
    std::vector<QVector> ortho;
    for (int round = 0; round < s - 2; ++round) {
        int best = -1;
        double best_norm = -1.0;
        for (int i = 0; i < s; ++i) {
            const double nn = herm(cand[i], cand[i]).w;
            if (nn > best_norm) {
                best_norm = nn;
                best = i;
            }
        }
        if (best < 0 || best_norm < 1e-12)
            throw InternalError("conjugator: positive complement collapsed");
        QVector u = cand[best].scaled(1.0 / std::sqrt(best_norm));
        for (auto& v : cand) v = v - u.scaled(herm(v, u));
        ortho.push_back(u);
    }

    QMat cinv(s);
    for (int col = 0; col < s - 2; ++col)
        for (int i = 0; i < s; ++i) cinv.at(i, col) = ortho[col].e[i];
    for (int i = 0; i < s; ++i) {
        cinv.at(i, s - 2) = p.e[i];
        cinv.at(i, s - 1) = q.e[i];
    }
    return SpMatrix::validate(cinv).inverse();
}

enum class IterationVerdict {
    ContractionToElementaryOrNonDiscrete,
    ElementaryBranch,
    DivergedOrInconclusive
};

inline const char* to_string(IterationVerdict v) {
    switch (v) {
        case IterationVerdict::ContractionToElementaryOrNonDiscrete:
            return "ContractionToElementaryOrNonDiscrete";
        case IterationVerdict::ElementaryBranch: return "ElementaryBranch";
        default: return "DivergedOrInconclusive";
    }
}

struct IterationStep {
    int k = 0;
    double ad_abs = 0.0;          ///< |a_k d_k|
    double bc_abs = 0.0;          ///< |b_k c_k|
    std::optional<double> bound;  ///< (M(1+|b1 c1|^{1/2}))^{k-1} |b1 c1|^{1/2}, k >= 1
};

/// Record of the conjugation iteration h_{k+1} = h_k g h_k^{-1}.
///
/// Verdict semantics (all evidence-level, never a proof):
///  - ElementaryBranch: a corner block product |b_k c_k| vanished numerically
///    at k = 0, or at some k >= 1 while the contraction certificate did not
///    hold ("numerically elementary branch").
///  - ContractionToElementaryOrNonDiscrete: the product condition held at
///    k = 0 and every recorded step satisfied the geometric bound, so
///    |b_k c_k| -> 0.
///  - DivergedOrInconclusive: anything else, including the 1e12 norm guard.
struct IterationTrace {
    std::vector<IterationStep> steps;
    std::vector<SpMatrix> iterates;  ///< h_0 .. h_K
    IterationVerdict verdict = IterationVerdict::DivergedOrInconclusive;
    int max_k = 0;
    double mg = 0.0;
    std::optional<double> rcond_lhs;  ///< |a_0 d_0|^{1/2} |b_0 c_0|^{1/2}
    std::optional<double> rcond_rhs;  ///< (1 - M)/M^2 when M < 1
    bool certificate = false;         ///< product condition held at k = 0
    std::string note;
};

inline IterationTrace iterate(const SpMatrix& g, const SpMatrix& h, int max_k) {
    if (classify(g) != IsometryClass::Loxodromic)
        throw NotLoxodromic("iterate: g must be loxodromic");
    if (!is_diagonal_position(g))
        throw NotDiagonalPosition(
            "iterate: g must fix the standard boundary pair; use iterate_conjugated");
    const LoxodromicData data = loxodromic_data(g);

    IterationTrace tr;
    tr.max_k = max_k;
    tr.mg = data.mg;

    std::vector<double> ad, bc;
    std::optional<IterationVerdict> verdict;
    SpMatrix hk = h;
    for (int k = 0; k <= max_k; ++k) {
        const SpBlocks bl = hk.blocks();
        ad.push_back(bl.a.norm() * bl.d.norm());
        bc.push_back(bl.b.norm() * bl.c.norm());
        tr.iterates.push_back(hk);

        if (k == 0) {
            if (tr.mg < 1.0) {
                tr.rcond_lhs = std::sqrt(ad[0]) * std::sqrt(bc[0]);
                tr.rcond_rhs = (1.0 - tr.mg) / (tr.mg * tr.mg);
                tr.certificate = *tr.rcond_lhs < *tr.rcond_rhs;
            }
            if (bc[0] <= 1e-12 * std::max(1.0, ad[0])) {
                verdict = IterationVerdict::ElementaryBranch;
                tr.note = "corner block product vanishes at k = 0";
                break;
            }
        } else {
            if (bc[k] == 0.0) {
                verdict = IterationVerdict::ElementaryBranch;
                tr.note = "corner block product vanished exactly at k = " + std::to_string(k);
                break;
            }
            if (!tr.certificate && bc[k] <= 1e-12 * std::max(1.0, ad[k])) {
                verdict = IterationVerdict::ElementaryBranch;
                tr.note = "corner block product vanished at k = " + std::to_string(k);
                break;
            }
            if (tr.certificate && bc[k] < 1e-250) {
                verdict = IterationVerdict::ContractionToElementaryOrNonDiscrete;
                tr.note = "contraction drove |b_k c_k| to underflow";
                break;
            }
        }
        if (k == max_k) break;
        SpMatrix next = hk * g * hk.inverse();
        if (frobenius(next.raw()) > 1e12) {
            verdict = IterationVerdict::DivergedOrInconclusive;
            tr.note = "iterate norm exceeded the blow-up guard";
            break;
        }
        hk = next;
    }

    std::optional<double> sbc1;
    if (bc.size() >= 2) sbc1 = std::sqrt(bc[1]);
    for (std::size_t k = 0; k < bc.size(); ++k) {
        IterationStep st;
        st.k = static_cast<int>(k);
        st.ad_abs = ad[k];
        st.bc_abs = bc[k];
        if (k >= 1 && sbc1)
            st.bound = std::pow(tr.mg * (1.0 + *sbc1), static_cast<double>(k) - 1.0) * *sbc1;
        tr.steps.push_back(st);
    }

    if (verdict) {
        tr.verdict = *verdict;
        return tr;
    }
    if (tr.certificate && bc.size() >= 2) {
        bool bounded = tr.mg * (1.0 + *sbc1) < 1.0;
        for (const auto& st : tr.steps) {
            // Steps whose product has sunk to the roundoff floor of the
            // representation no longer carry geometric information.
            if (st.bc_abs <= 1e-20 * std::max(1.0, st.ad_abs)) continue;
            if (st.bound)
                bounded = bounded && std::sqrt(st.bc_abs) <= *st.bound * (1.0 + 1e-9) + 1e-30;
        }
        if (bounded) {
            tr.verdict = IterationVerdict::ContractionToElementaryOrNonDiscrete;
            tr.note = "contraction certificate held at every recorded step";
        } else {
            tr.verdict = IterationVerdict::DivergedOrInconclusive;
            tr.note = "per-step contraction bound violated";
        }
    } else {
        tr.verdict = IterationVerdict::DivergedOrInconclusive;
        if (tr.note.empty()) tr.note = "product condition fails at k = 0";
    }
    return tr;
}

/// Convenience wrapper: conjugates g (and h alongside) into diagonal position
/// first. The trace refers to the conjugated pair.
inline IterationTrace iterate_conjugated(const SpMatrix& g, const SpMatrix& h, int max_k) {
    if (is_diagonal_position(g)) return iterate(g, h, max_k);
    const SpMatrix c = diagonal_position_conjugator(g);
    const SpMatrix ci = c.inverse();
    return iterate(c * g * ci, c * h * ci, max_k);
}

/// Bounded witness sequence f_k = g^{-k} h_{2k} g^k extracted from a
/// contraction trace; its corner blocks tend to zero while the middle entries
/// approach the eigenvalue moduli of g.
inline SpMatrix compact_witness(const SpMatrix& g, const IterationTrace& trace, int k) {
    if (trace.verdict != IterationVerdict::ContractionToElementaryOrNonDiscrete)
        throw InsufficientIterations("compact_witness: requires a contraction trace");
    if (k < 0 || 2 * k >= static_cast<int>(trace.iterates.size()))
        throw InsufficientIterations("compact_witness: trace shorter than 2k steps");
    const SpMatrix gk = g.power(k);
    return gk.inverse() * trace.iterates[static_cast<std::size_t>(2 * k)] * gk;
}

}  // namespace qhyp
