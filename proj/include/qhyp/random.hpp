#pragma once

#include <random>

#include "qhyp/spgroup.hpp"

namespace qhyp {

/// Deterministic generators used by the property suites. Random J-unitary
/// matrices are built as products of three exactly-symplectic factor types:
/// diagonal elements, the involution swapping the last two coordinates, and
/// plane rotations in the positive block.
namespace rnd {

inline Quaternion unit_quaternion(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Quaternion q{g(rng), g(rng), g(rng), g(rng)};
    const double n = q.norm();
    if (n < 1e-6) return {1.0, 0.0, 0.0, 0.0};
    return q * (1.0 / n);
}

/// Purely imaginary unit quaternion.
inline Quaternion unit_imaginary(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Quaternion q{0.0, g(rng), g(rng), g(rng)};
    const double n = q.norm();
    if (n < 1e-6) return Quaternion::unit_i();
    return q * (1.0 / n);
}

/// diag(mu_1, ..., mu_{n-1}, lambda, conj(lambda)^{-1}) with unit mu_i and
/// |lambda| = e^{l/2}. l = 0 gives an elliptic diagonal; l > 0 a loxodromic.
inline SpMatrix diagonal(int n, const std::vector<Quaternion>& mu, const Quaternion& lambda) {
    QMat m(n + 1);
    for (int i = 0; i + 2 < n + 1; ++i) m.at(i, i) = mu[i];
    m.at(n - 1, n - 1) = lambda;
    m.at(n, n) = lambda.conj().inverse();
    return SpMatrix::validate(m);
}

inline SpMatrix random_diagonal(int n, std::mt19937_64& rng, double max_half_length = 0.5) {
    std::uniform_real_distribution<double> u(-max_half_length, max_half_length);
    std::vector<Quaternion> mu(static_cast<std::size_t>(std::max(0, n - 1)));
    for (auto& q : mu) q = unit_quaternion(rng);
    const Quaternion lambda = std::exp(u(rng)) * unit_quaternion(rng);
    return diagonal(n, mu, lambda);
}

/// The involution exchanging the last two coordinates (a = d = 0, b = c = 1).
inline SpMatrix swap_last_two(int n) {
    QMat m = QMat::identity(n + 1);
    m.at(n - 1, n - 1) = 0.0;
    m.at(n, n) = 0.0;
    m.at(n - 1, n) = 1.0;
    m.at(n, n - 1) = 1.0;
    return SpMatrix::validate(m);
}

/// Real plane rotation in positive-block coordinates (i, j), i < j < n-1.
inline SpMatrix plane_rotation(int n, int i, int j, double angle) {
    QMat m = QMat::identity(n + 1);
    m.at(i, i) = std::cos(angle);
    m.at(j, j) = std::cos(angle);
    m.at(i, j) = -std::sin(angle);
    m.at(j, i) = std::sin(angle);
    return SpMatrix::validate(m);
}

/// Unipotent translation fixing only the point at infinity: adds t * z_{n+1}
/// to z_n, valid for purely imaginary t.
inline SpMatrix vertical_translation(int n, const Quaternion& t) {
    QMat m = QMat::identity(n + 1);
    m.at(n - 1, n) = t;
    return SpMatrix::validate(m);
}

/// Lower counterpart fixing only the origin.
inline SpMatrix vertical_translation_lower(int n, const Quaternion& t) {
    QMat m = QMat::identity(n + 1);
    m.at(n, n - 1) = t;
    return SpMatrix::validate(m);
}

/// Heisenberg translation fixing infinity: z_i += tau_i z_{n+1} on the
/// positive block, z_n += tau* z + (|tau|^2/2 + v) z_{n+1} with v imaginary.
/// Populates the mixed blocks that diagonals, swaps and rotations leave zero.
inline SpMatrix heisenberg_translation(int n, const std::vector<Quaternion>& tau,
                                       const Quaternion& v) {
    QMat m = QMat::identity(n + 1);
    double tau2 = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        m.at(i, n) = tau[i];             // beta block
        m.at(n - 1, i) = tau[i].conj();  // eta block
        tau2 += tau[i].norm_sq();
    }
    m.at(n - 1, n) = Quaternion(0.5 * tau2) + v;
    return SpMatrix::validate(m);
}

/// Product of `factors` random exact generators. Diagonals, the swap, plane
/// rotations and Heisenberg translations together reach elements with every
/// block populated.
inline SpMatrix random_sp(int n, std::mt19937_64& rng, int factors = 5,
                          double max_half_length = 0.5) {
    std::uniform_int_distribution<int> kind(0, n >= 3 ? 4 : 3);
    std::uniform_real_distribution<double> shear(0.1, 0.8);
    SpMatrix g = random_diagonal(n, rng, max_half_length);
    for (int f = 1; f < factors; ++f) {
        switch (kind(rng)) {
            case 0: g = g * random_diagonal(n, rng, max_half_length); break;
            case 1: g = g * swap_last_two(n); break;
            case 2: g = g * vertical_translation(n, shear(rng) * unit_imaginary(rng)); break;
            case 3: {
                std::vector<Quaternion> tau(static_cast<std::size_t>(std::max(0, n - 1)));
                for (auto& q : tau) {
                    q = shear(rng) * unit_quaternion(rng);
                }
                g = g * heisenberg_translation(n, tau, shear(rng) * unit_imaginary(rng));
                break;
            }
            default: {
                std::uniform_int_distribution<int> idx(0, n - 2);
                int i = idx(rng), j = idx(rng);
                if (i == j) j = (j + 1) % (n - 1);
                std::uniform_real_distribution<double> a(0.0, 2.0 * M_PI);
                g = g * plane_rotation(n, std::min(i, j), std::max(i, j), a(rng));
            }
        }
    }
    return g;
}

/// Loxodromic with prescribed profile, conjugated away from diagonal position.
inline SpMatrix random_loxodromic(int n, std::mt19937_64& rng, double min_length = 0.02,
                                  double max_length = 0.4) {
    std::uniform_real_distribution<double> lu(min_length, max_length);
    std::uniform_real_distribution<double> au(0.0, M_PI);
    std::vector<Quaternion> mu(static_cast<std::size_t>(std::max(0, n - 1)));
    for (auto& q : mu) {
        const double beta = au(rng);
        q = Quaternion(std::cos(beta), 0, 0, 0) + std::sin(beta) * unit_imaginary(rng);
    }
    const double l = lu(rng), beta_n = au(rng);
    const Quaternion lam =
        std::exp(0.5 * l) * (Quaternion(std::cos(beta_n)) + std::sin(beta_n) * unit_imaginary(rng));
    const SpMatrix d = diagonal(n, mu, lam);
    const SpMatrix c = random_sp(n, rng, 4, 0.3);
    return c * d * c.inverse();
}

}  // namespace rnd
}  // namespace qhyp
