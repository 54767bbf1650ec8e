#pragma once

#include <array>
#include <optional>

#include "qhyp/spgroup.hpp"

namespace qhyp {

/// Quaternionic cross-ratio of four points in the closed domain,
///   [z1, z2, w1, w2] = <w1,z1> <w1,z2>^{-1} <w2,z2> <w2,z1>^{-1}.
/// The quaternion value depends on the choice of lifts (it moves by quaternion
/// conjugation); the absolute value does not and is the stable public output.
struct CrossRatioValue {
    Quaternion value;
    double abs = 0.0;
};

inline CrossRatioValue cross_ratio(const ProjPoint& z1, const ProjPoint& z2,
                                   const ProjPoint& w1, const ProjPoint& w2) {
    const Quaternion p11 = herm(w1.lift, z1.lift);  // <w1, z1>
    const Quaternion p12 = herm(w1.lift, z2.lift);
    const Quaternion p22 = herm(w2.lift, z2.lift);
    const Quaternion p21 = herm(w2.lift, z1.lift);
    const double tol12 = 1e-9 * lift_scale(w1.lift) * lift_scale(z2.lift);
    const double tol21 = 1e-9 * lift_scale(w2.lift) * lift_scale(z1.lift);
    if (p12.norm() <= tol12 || p21.norm() <= tol21)
        throw DegenerateConfiguration("cross_ratio: vanishing denominator pairing");
    CrossRatioValue r;
    r.value = p11 * p12.inverse() * p22 * p21.inverse();
    r.abs = (p11.norm() * p22.norm()) / (p12.norm() * p21.norm());
    return r;
}

/// The three cross-ratio moduli of h against the standard boundary pair,
/// expressed through the corner blocks: (|bc|, |ad|, |bc|/|ad|).
/// The ratio is absent when |ad| vanishes.
struct CornerModuli {
    double bc_abs = 0.0;
    double ad_abs = 0.0;
    std::optional<double> bc_over_ad;

    double ratio_or_throw() const {
        if (!bc_over_ad) throw ADZero("lemma23: |ad| vanishes, ratio undefined");
        return *bc_over_ad;
    }
};

inline CornerModuli corner_moduli(const SpMatrix& h) {
    const SpBlocks b = h.blocks();
    CornerModuli t;
    t.bc_abs = b.b.norm() * b.c.norm();
    t.ad_abs = b.a.norm() * b.d.norm();
    if (t.ad_abs > 1e-12 * (1.0 + t.bc_abs)) t.bc_over_ad = t.bc_abs / t.ad_abs;
    return t;
}

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double margin = 0.0;  ///< rhs - lhs
};

inline InequalityCheck make_check(double lhs, double rhs, double slack = 1e-9) {
    return {lhs, rhs, lhs <= rhs + slack, rhs - lhs};
}

/// The five block inequalities every J-unitary matrix satisfies:
///   |beta* alpha| <= 2 |ad|^{1/2} |bc|^{1/2}
///   |eta theta*|  <= 2 |ad|^{1/2} |bc|^{1/2}
///   |ad|^{1/2} <= |bc|^{1/2} + 1
///   |bc|^{1/2} <= |ad|^{1/2} + 1
///   1 <= |ad|^{1/2} + |bc|^{1/2}
/// A failure on a validated matrix indicates a validation bug, so failures are
/// reported as margins rather than thrown.
struct BlockInequalities {
    std::array<InequalityCheck, 5> checks;
    bool all_hold = false;
};

inline BlockInequalities block_inequalities(const SpMatrix& h) {
    const SpBlocks b = h.blocks();
    const int k = static_cast<int>(b.alpha.size());
    Quaternion beta_alpha{}, eta_theta{};
    for (int i = 0; i < k; ++i) {
        beta_alpha += b.beta[i].conj() * b.alpha[i];
        eta_theta += b.eta[i] * b.theta[i].conj();
    }
    const double sa = std::sqrt(b.a.norm() * b.d.norm());
    const double sb = std::sqrt(b.b.norm() * b.c.norm());
    BlockInequalities r;
    r.checks[0] = make_check(beta_alpha.norm(), 2.0 * sa * sb);
    r.checks[1] = make_check(eta_theta.norm(), 2.0 * sa * sb);
    r.checks[2] = make_check(sa, sb + 1.0);
    r.checks[3] = make_check(sb, sa + 1.0);
    r.checks[4] = make_check(1.0, sa + sb);
    r.all_hold = true;
    for (const auto& c : r.checks) r.all_hold = r.all_hold && c.holds;
    return r;
}

}  // namespace qhyp
