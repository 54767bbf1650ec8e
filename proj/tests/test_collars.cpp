#include <doctest.h>

#include <random>

#include "qhyp/collars.hpp"
#include "qhyp/random.hpp"

using namespace qhyp;

namespace {

std::mt19937_64 rng(60606);

SpMatrix std_loxodromic(int n, double l) {
    std::vector<Quaternion> mu(static_cast<std::size_t>(std::max(0, n - 1)), Quaternion(1.0));
    return rnd::diagonal(n, mu, Quaternion(std::exp(l / 2)));
}

SpMatrix loxodromic_with_m(int n, double m) {
    return std_loxodromic(n, 2.0 * std::asinh(m / 2.0));
}

Geodesic standard_axis(int n) {
    return geodesic_from_endpoints(point_origin(n), point_infinity(n));
}

}  // namespace

TEST_CASE("geodesic through the standard pair") {
    const Geodesic g = standard_axis(2);
    // the fixed lifts already satisfy herm(p, q) = -1
    CHECK((g.p - point_origin(2).lift).euclid_norm() == 0.0);
    CHECK((g.q - point_infinity(2).lift).euclid_norm() == 0.0);
    CHECK((herm(g.p, g.q) + Quaternion(1.0)).norm() == 0.0);

    SUBCASE("arc length") {
        CHECK(bergman_distance(geodesic_point(g, 0.0), geodesic_point(g, 3.0)) ==
              doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("points are interior with constant form value") {
        for (double t : {-8.0, -1.0, 0.0, 2.5, 9.0}) {
            const QVector lift = geodesic_point_lift(g, t);
            CHECK(herm(lift, lift).w == doctest::Approx(-2.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("normalization from arbitrary boundary lifts") {
    for (int t = 0; t < 30; ++t) {
        const SpMatrix h = rnd::random_sp(2, rng);
        const ProjPoint u = apply(h, point_origin(2));
        const ProjPoint v = apply(h, point_infinity(2));
        const Geodesic g = geodesic_from_endpoints(u, v);
        CHECK((herm(g.p, g.q) + Quaternion(1.0)).norm() < 1e-10);
        std::uniform_real_distribution<double> su(-6.0, 6.0);
        const double a = su(rng), b = su(rng);
        CHECK(bergman_distance(geodesic_point(g, a), geodesic_point(g, b)) ==
              doctest::Approx(std::abs(a - b)).epsilon(1e-9));
    }
}

TEST_CASE("geodesic endpoint errors") {
    const ProjPoint o = point_origin(2);
    CHECK_THROWS_AS(geodesic_from_endpoints(o, o), CoincidentEndpoints);
    QVector interior = QVector::basis(3, 2);
    interior.e[1] = 1.0;
    CHECK_THROWS_AS(geodesic_from_endpoints(classify_point(interior), o), NotBoundaryPoint);
}

TEST_CASE("distance lower bound basics") {
    const Geodesic g = standard_axis(2);
    SUBCASE("coincident geodesics: sum is 1, bound 0") {
        const DistanceBound b = geodesic_distance_lower_bound(g, g);
        CHECK(b.cosh_bound == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(b.value == 0.0);
        CHECK_FALSE(b.degenerate);
    }
    SUBCASE("image under the swap is the same geodesic") {
        const Geodesic img = apply(rnd::swap_last_two(2), g);
        const DistanceBound b = geodesic_distance_lower_bound(g, img);
        CHECK(b.cosh_bound == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(b.value == 0.0);
    }
    SUBCASE("bound equals |ad| + |bc| for an image geodesic") {
        for (int t = 0; t < 50; ++t) {
            const SpMatrix h = rnd::random_sp(2, rng);
            const CornerModuli triple = corner_moduli(h);
            const DistanceBound b = geodesic_distance_lower_bound(g, apply(h, g));
            if (b.degenerate) {
                // one of the corner blocks must vanish for a shared endpoint
                CHECK(triple.bc_abs * triple.ad_abs < 1e-10);
                continue;
            }
            CHECK(b.cosh_bound ==
                  doctest::Approx(triple.ad_abs + triple.bc_abs).epsilon(1e-9));
        }
    }
}

TEST_CASE("bound is dominated by the true distance") {
    // grid-refined infimum of cosh(rho) >= |ad| + |bc| - 1e-6
    const Geodesic g = standard_axis(2);
    for (int t = 0; t < 20; ++t) {
        const SpMatrix h = rnd::random_sp(2, rng, 4);
        const Geodesic img = apply(h, g);
        const DistanceBound b = geodesic_distance_lower_bound(g, img);
        if (b.degenerate) continue;
        const double oracle = geodesic_distance_oracle(g, img);
        CHECK(std::cosh(oracle) >= b.cosh_bound - 1e-6);
    }
}

TEST_CASE("bound is equivariant under the group action") {
    const Geodesic g1 = standard_axis(2);
    const Geodesic g2 = apply(rnd::random_sp(2, rng, 4), g1);
    const DistanceBound base = geodesic_distance_lower_bound(g1, g2);
    for (int t = 0; t < 20; ++t) {
        const SpMatrix k = rnd::random_sp(2, rng, 4);
        const DistanceBound moved = geodesic_distance_lower_bound(apply(k, g1), apply(k, g2));
        CHECK(moved.cosh_bound == doctest::Approx(base.cosh_bound).epsilon(1e-8));
    }
}

TEST_CASE("canonical collar radii") {
    SUBCASE("threshold rejected") {
        CHECK_THROWS_AS(collar_from_m(collar_threshold()), MgTooLarge);
        CHECK_THROWS_AS(canonical_collar(loxodromic_with_m(2, 0.8)), MgTooLarge);
    }
    SUBCASE("M = 0.1") {
        const CollarResult c = canonical_collar(loxodromic_with_m(2, 0.1));
        CHECK(c.cosh2r == doctest::Approx(180.0).epsilon(1e-12));
        CHECK(c.r == doctest::Approx(0.5 * std::log(180.0 + std::sqrt(180.0 * 180.0 - 1.0)))
                         .epsilon(1e-12));
        CHECK(c.r == doctest::Approx(2.944).epsilon(2e-3));
    }
    SUBCASE("24th power of the rotating example") {
        QMat m(3);
        m.at(0, 0) = {std::cos(M_PI / 4), std::sin(M_PI / 4), 0, 0};
        m.at(1, 1) = std::exp(0.5e-3) * Quaternion{std::cos(M_PI / 3), std::sin(M_PI / 3), 0, 0};
        m.at(2, 2) = std::exp(-0.5e-3) * Quaternion{std::cos(M_PI / 3), std::sin(M_PI / 3), 0, 0};
        const SpMatrix g24 = SpMatrix::validate(m).power(24);
        const CollarResult c = canonical_collar(g24);
        const double mg = 2.0 * std::sinh(0.012);
        CHECK(c.mg == doctest::Approx(mg).epsilon(1e-9));
        CHECK(c.cosh2r == doctest::Approx(2.0 * (1.0 - mg) / (mg * mg)).epsilon(1e-12));
        CHECK(c.cosh2r == doctest::Approx(3389.3).epsilon(5e-4));
    }
    SUBCASE("depends only on the conjugacy class") {
        const SpMatrix g = loxodromic_with_m(2, 0.1);
        for (int t = 0; t < 10; ++t) {
            const SpMatrix k = rnd::random_sp(2, rng, 4);
            const CollarResult c = canonical_collar(k * g * k.inverse());
            CHECK(c.r == doctest::Approx(canonical_collar(g).r).epsilon(1e-8));
        }
    }
}

TEST_CASE("product-to-sum inequality for tube radii") {
    std::uniform_real_distribution<double> u(1e-3, 5.0);
    for (int t = 0; t < 1000; ++t) {
        const double r1 = u(rng), r2 = u(rng);
        const double lhs = std::cosh(r1 + r2);
        CHECK(std::cosh(2 * r1) * std::cosh(2 * r2) >= lhs * lhs - 1e-12);
    }
    // equality iff r1 = r2
    const double r = u(rng);
    CHECK(std::cosh(2 * r) * std::cosh(2 * r) ==
          doctest::Approx(std::pow(std::cosh(r + r), 2)).epsilon(1e-12));
}

TEST_CASE("disjointness report") {
    SUBCASE("shared axis rejected") {
        const SpMatrix g = loxodromic_with_m(2, 0.1);
        CHECK_THROWS_AS(disjointness_check(g, g.power(2)), DegenerateConfiguration);
        // conjugation-invariance of the axis: same rejection after moving both
        const SpMatrix k = rnd::random_sp(2, rng, 4);
        CHECK_THROWS_AS(
            disjointness_check(k * g * k.inverse(), k * g.power(2) * k.inverse()),
            DegenerateConfiguration);
    }
    SUBCASE("two diagonals conjugated apart") {
        const SpMatrix g = loxodromic_with_m(2, 0.08);
        std::vector<Quaternion> tau{Quaternion(2.0)};
        const SpMatrix mover = rnd::heisenberg_translation(2, tau, Quaternion::unit_i());
        const SpMatrix h = mover * loxodromic_with_m(2, 0.05) * mover.inverse();
        const DisjointnessReport rep = disjointness_check(g, h);
        CHECK(rep.collar_g.mg == doctest::Approx(0.08).epsilon(1e-10));
        CHECK(rep.collar_h.mg == doctest::Approx(0.05).epsilon(1e-10));
        CHECK(rep.am_gm.holds);
        CHECK(rep.closeness_step.holds);
        CHECK(rep.cosh_identity.holds);
        CHECK(rep.tubes_disjoint == (rep.distance_bound >= rep.collar_g.r + rep.collar_h.r - 1e-12));
        // ordering is by invariant, regardless of argument order
        const DisjointnessReport swapped = disjointness_check(h, g);
        CHECK(swapped.collar_g.mg == doctest::Approx(rep.collar_g.mg).epsilon(1e-12));
        CHECK(swapped.cross_ratio_sum == doctest::Approx(rep.cross_ratio_sum).epsilon(1e-9));
    }
    SUBCASE("axes moved far apart give positively disjoint tubes") {
        const SpMatrix g = loxodromic_with_m(2, 0.08);
        // move both endpoints away from the standard pair, far down the cusp
        std::vector<Quaternion> tau{Quaternion(60.0)};
        const SpMatrix mover = rnd::heisenberg_translation(2, tau, Quaternion::unit_i()) *
                               rnd::vertical_translation_lower(2, Quaternion::unit_j());
        const SpMatrix h = mover * loxodromic_with_m(2, 0.05) * mover.inverse();
        const DisjointnessReport rep = disjointness_check(g, h);
        CHECK(rep.tubes_disjoint);
        CHECK(rep.distance_bound >= rep.collar_g.r + rep.collar_h.r);
        // The unconditional links of the chain hold; the discreteness step is
        // allowed to fail here (two near-identity loxodromics with distinct
        // axes cannot share a discrete non-elementary group, and the report
        // exposes exactly that link).
        CHECK(rep.am_gm.holds);
        CHECK(rep.closeness_step.holds);
        CHECK(rep.cosh_identity.holds);
        CHECK(rep.jorgensen_step.holds == (rep.jorgensen_step.lhs <= rep.jorgensen_step.rhs + 1e-9));
    }
}

TEST_CASE("tube invariance harness") {
    const SpMatrix g = loxodromic_with_m(2, 0.05);

    SUBCASE("single generator: everything preserves the axis") {
        const TubeCheckReport rep = tube_invariance_harness({g}, 0, 4);
        CHECK(rep.pass);
        CHECK(rep.checked == 0);
        CHECK(rep.skipped_axis == rep.distinct_elements);
    }
    SUBCASE("generator plus swap: still vacuous") {
        const TubeCheckReport rep = tube_invariance_harness({g, rnd::swap_last_two(2)}, 0, 4);
        CHECK(rep.pass);
        CHECK(rep.checked == 0);
        CHECK(rep.skipped_axis > 0);
    }
    SUBCASE("a contraction pair produces violations") {
        // h nearly commutes with g, so h(axis) is close to the axis while the
        // canonical tube is wide: precise invariance must fail.
        const SpMatrix h = rnd::vertical_translation(2, 0.01 * Quaternion::unit_i()) *
                           rnd::vertical_translation_lower(2, 0.01 * Quaternion::unit_j());
        const TubeCheckReport rep = tube_invariance_harness({g, h}, 0, 3);
        CHECK_FALSE(rep.pass);
        CHECK(rep.checked > 0);
        CHECK_FALSE(rep.violations.empty());
        CHECK(rep.violations.front().oracle_distance < rep.required_distance);
    }
}
