#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qhyp/errors.hpp"
#include "qhyp/quaternion.hpp"

namespace qhyp {

/// Eigen-angle data of a loxodromic conjugacy class: rotation angles of the
/// unit-modulus eigenvalue classes, the angle of the expanding class, and the
/// translation length l = 2 log|lambda_n| > 0.
struct AngleProfile {
    std::vector<double> angles;  ///< beta_1..beta_{n-1} in [0, pi]
    double beta_n = 0.0;         ///< in [0, pi]
    double length = 0.0;         ///< l > 0

    int dim() const { return static_cast<int>(angles.size()) + 1; }
};

/// Closeness invariant of the k-th power as a closed form of the profile:
///   2 sqrt((cosh(kl/2)+1)(cosh(kl/2) - cos(k beta_n)))
///     + max_i 2 sqrt(2 (1 - cos(k beta_i))).
inline double mgk(const AngleProfile& p, std::int64_t k) {
    const double c = std::cosh(0.5 * static_cast<double>(k) * p.length);
    double rot = 0.0;
    for (double b : p.angles)
        rot = std::max(rot, 2.0 * std::sqrt(std::max(0.0, 2.0 * (1.0 - std::cos(k * b)))));
    const double axial =
        2.0 * std::sqrt(std::max(0.0, (c + 1.0) * (c - std::cos(k * p.beta_n))));
    return axial + rot;
}

struct SpectrumSample {
    std::int64_t k = 0;
    double value = 0.0;
};

struct SpectrumResult {
    double T = 0.0;             ///< minimum sampled value
    std::int64_t argmin_k = 1;  ///< smallest minimizing k
    std::vector<SpectrumSample> samples;
};

/// Exhaustive scan of mgk over 1 <= k <= k_max, ties broken by smallest k.
/// Sound pruning: 2 sinh(kl/2) lower-bounds mgk and is increasing in k, so the
/// scan stops once that floor alone exceeds the current best.
inline SpectrumResult minimize_T(const AngleProfile& p, std::int64_t k_max = 1000000) {
    SpectrumResult res;
    res.T = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= k_max; ++k) {
        if (2.0 * std::sinh(0.5 * k * p.length) > res.T) break;
        const double v = mgk(p, k);
        res.samples.push_back({k, v});
        if (v < res.T) {
            res.T = v;
            res.argmin_k = k;
        }
    }
    return res;
}

/// Smallest k <= N^n with cos(k beta_i) >= cos(2 pi / N) for every i; existence
/// is guaranteed by the pigeonhole argument on the n-torus. The certificate is
/// re-verified before returning.
inline std::int64_t pigeonhole_k(const std::vector<double>& angles, int N) {
    if (N < 2) throw MalformedInput("pigeonhole_k: N must be >= 2");
    const int n = static_cast<int>(angles.size());
    if (n < 1) throw MalformedInput("pigeonhole_k: need at least one angle");
    std::int64_t limit = 1;
    for (int i = 0; i < n; ++i) {
        limit *= N;
        if (limit > 1000000000LL)
            throw MalformedInput("pigeonhole_k: N^n too large to enumerate");
    }
    const double bound = std::cos(2.0 * M_PI / N);
    for (std::int64_t k = 1; k <= limit; ++k) {
        bool ok = true;
        for (double b : angles)
            if (std::cos(k * b) < bound) {
                ok = false;
                break;
            }
        if (ok) return k;
    }
    throw InternalError("pigeonhole_k: no admissible k <= N^n found");
}

/// Angle-free bound on min_k M_{g^k}, as a function of the translation length:
///   R_N = 2 sqrt((cosh(N^n l/2)+1)(cosh(N^n l/2) - cos(2pi/N)))
///           + 2 sqrt(2 (1 - cos(2pi/N))).
inline double r_n_bound(double l, int N, int n) {
    if (N < 2) throw MalformedInput("r_n_bound: N must be >= 2");
    if (n < 1) throw MalformedInput("r_n_bound: n must be >= 1");
    const double c = std::cosh(0.5 * std::pow(static_cast<double>(N), n) * l);
    const double cosn = std::cos(2.0 * M_PI / N);
    return 2.0 * std::sqrt((c + 1.0) * (c - cosn)) +
           2.0 * std::sqrt(2.0 * (1.0 - cosn));
}

/// Continuous-x version of the same bound.
inline double h_of_xl(double x, double l, int n) {
    const double c = std::cosh(0.5 * std::pow(x, n) * l);
    const double cosx = std::cos(2.0 * M_PI / x);
    return 2.0 * std::sqrt((c + 1.0) * (c - cosx)) +
           2.0 * std::sqrt(2.0 * (1.0 - cosx));
}

inline double collar_threshold() { return std::sqrt(3.0) - 1.0; }

/// Smallest x with h(x, 0) = sqrt(3) - 1, i.e. 2 pi / arccos((14 + sqrt 3)/16).
inline double x0_constant() {
    return 2.0 * M_PI / std::acos((14.0 + std::sqrt(3.0)) / 16.0);
}

/// Solves h(x, l) = sqrt(3) - 1 for l at fixed x >= x0:
///   l(x) = (2/x^n) arccosh((sqrt(13 - 2 sqrt 3 - 6 c + c^2
///            - 4 (sqrt 3 - 1) sqrt(2(1-c))) - 1 + c) / 2),   c = cos(2pi/x).
inline double l_of_x(double x, int n) {
    const double c = std::cos(2.0 * M_PI / x);
    const double root2c = std::sqrt(2.0 * (1.0 - c));
    // h(x, l) >= h(x, 0) = 4 sqrt(2(1-c)); below threshold no l exists.
    if (4.0 * root2c > collar_threshold() + 1e-15)
        throw BelowThreshold("l_of_x: x below x0, no admissible length");
    const double s3 = std::sqrt(3.0);
    const double rad = 13.0 - 2.0 * s3 - 6.0 * c + c * c - 4.0 * (s3 - 1.0) * root2c;
    const double arg = 0.5 * (std::sqrt(std::max(0.0, rad)) - 1.0 + c);
    return 2.0 / std::pow(x, n) * acosh_clamped(arg);
}

/// Tabulation of (x, l(x)) for plotting; the curve is not asserted monotone.
inline std::vector<std::pair<double, double>> curve_samples(int n, double x_min,
                                                            double x_max, double step) {
    if (step <= 0.0) throw MalformedInput("curve_samples: step must be positive");
    std::vector<std::pair<double, double>> out;
    for (double x = x_min; x <= x_max + 1e-12; x += step) out.push_back({x, l_of_x(x, n)});
    return out;
}

/// Canonical tube data for a closeness invariant m: cosh(2r) = 2(1-m)/m^2.
/// Only defined for m < sqrt(3) - 1 (at the threshold the radius degenerates
/// to zero).
struct CollarResult {
    double mg = 0.0;      ///< invariant the radius was computed from
    double cosh2r = 0.0;  ///< 2(1-mg)/mg^2
    double r = 0.0;       ///< tube radius, r > 0
};

inline CollarResult collar_from_m(double m) {
    if (!(m > 0.0)) throw MgTooLarge("collar radius: invariant must be positive");
    if (m >= collar_threshold())
        throw MgTooLarge("collar radius: invariant >= sqrt(3) - 1, no tube guaranteed");
    CollarResult res;
    res.mg = m;
    res.cosh2r = 2.0 * (1.0 - m) / (m * m);
    res.r = 0.5 * acosh_clamped(res.cosh2r);
    return res;
}

/// Collar radius from the translation length alone via the pigeonhole bound.
inline CollarResult length_only_collar(double l, int n, int N) {
    const double r = r_n_bound(l, N, n);
    if (r >= collar_threshold())
        throw ConditionFailed(r, "length_only_collar: R_N >= sqrt(3) - 1");
    return collar_from_m(r);
}

}  // namespace qhyp
