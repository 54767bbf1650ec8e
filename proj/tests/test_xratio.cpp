#include <doctest.h>

#include <random>

#include "qhyp/random.hpp"
#include "qhyp/xratio.hpp"

using namespace qhyp;

namespace {

std::mt19937_64 rng(5150);

Quaternion nonzero_rq() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Quaternion q{u(rng), u(rng), u(rng), u(rng)};
    while (q.norm() < 1e-2) q = {u(rng), u(rng), u(rng), u(rng)};
    return q;
}

/// Random boundary point as the image of the origin under a random element.
ProjPoint random_boundary(int n) {
    return apply(rnd::random_sp(n, rng), point_origin(n));
}

}  // namespace

TEST_CASE("standard-pair cross-ratios reduce to the corner blocks") {
    const int n = 2;
    const ProjPoint o = point_origin(n), inf = point_infinity(n);

    SUBCASE("swap matrix: |[h(inf), o, inf, h(o)]| = |bc| = 1") {
        const SpMatrix h = rnd::swap_last_two(n);
        const ProjPoint hi = apply(h, inf), ho = apply(h, o);
        CHECK(cross_ratio(hi, o, inf, ho).abs == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("diagonal: |[h(inf), inf, o, h(o)]| = |ad| = 1") {
        std::vector<Quaternion> mu{rnd::unit_quaternion(rng)};
        const SpMatrix h = rnd::diagonal(n, mu, Quaternion(std::exp(0.4)));
        const ProjPoint hi = apply(h, inf), ho = apply(h, o);
        CHECK(cross_ratio(hi, inf, o, ho).abs == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("random h: all three reductions") {
        for (int dim : {1, 2, 3}) {
            const ProjPoint od = point_origin(dim), infd = point_infinity(dim);
            for (int t = 0; t < 60; ++t) {
                const SpMatrix h = rnd::random_sp(dim, rng);
                const CornerModuli triple = corner_moduli(h);
                const ProjPoint hi = apply(h, infd), ho = apply(h, od);
                if (triple.bc_abs < 1e-12 || triple.ad_abs < 1e-12) continue;
                CHECK(cross_ratio(hi, od, infd, ho).abs ==
                      doctest::Approx(triple.bc_abs).epsilon(1e-10));
                CHECK(cross_ratio(hi, infd, od, ho).abs ==
                      doctest::Approx(triple.ad_abs).epsilon(1e-10));
                CHECK(cross_ratio(infd, od, hi, ho).abs ==
                      doctest::Approx(triple.ratio_or_throw()).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("lemma23 corner cases") {
    const CornerModuli id = corner_moduli(SpMatrix::validate(QMat::identity(3)));
    CHECK(id.bc_abs == 0.0);
    CHECK(id.ad_abs == 1.0);
    CHECK(id.ratio_or_throw() == 0.0);

    const CornerModuli sw = corner_moduli(rnd::swap_last_two(2));
    CHECK(sw.bc_abs == 1.0);
    CHECK(sw.ad_abs == 0.0);
    CHECK_FALSE(sw.bc_over_ad.has_value());
    CHECK_THROWS_AS(sw.ratio_or_throw(), ADZero);
}

TEST_CASE("cross-ratio absolute value is lift independent") {
    const int n = 2;
    int tested = 0;
    while (tested < 200) {
        const ProjPoint z1 = random_boundary(n), z2 = random_boundary(n);
        const ProjPoint w1 = random_boundary(n), w2 = random_boundary(n);
        double base;
        try {
            base = cross_ratio(z1, z2, w1, w2).abs;
        } catch (const DegenerateConfiguration&) {
            continue;
        }
        const auto rescale = [&](const ProjPoint& p) {
            return ProjPoint{p.lift.scaled(nonzero_rq()), p.kind};
        };
        const double again =
            cross_ratio(rescale(z1), rescale(z2), rescale(w1), rescale(w2)).abs;
        CHECK(std::abs(again - base) < 1e-10 * std::max(1.0, base));
        ++tested;
    }
}

TEST_CASE("value moves by quaternion conjugation under lift rescaling") {
    const int n = 2;
    int tested = 0;
    while (tested < 50) {
        const ProjPoint z1 = random_boundary(n), z2 = random_boundary(n);
        const ProjPoint w1 = random_boundary(n), w2 = random_boundary(n);
        CrossRatioValue base;
        try {
            base = cross_ratio(z1, z2, w1, w2);
        } catch (const DegenerateConfiguration&) {
            continue;
        }
        const Quaternion lambda = nonzero_rq();
        const ProjPoint z1r{z1.lift.scaled(lambda), z1.kind};
        const CrossRatioValue moved = cross_ratio(z1r, z2, w1, w2);
        CHECK(moved.abs == doctest::Approx(base.abs).epsilon(1e-10));
        CHECK(moved.value.w == doctest::Approx(base.value.w).epsilon(1e-9));
        // and it is exactly the conjugate by conj(lambda)
        const Quaternion expect = lambda.conj() * base.value * lambda.conj().inverse();
        CHECK((moved.value - expect).norm() < 1e-9 * std::max(1.0, expect.norm()));
        ++tested;
    }
}

TEST_CASE("degenerate configurations are rejected") {
    const int n = 2;
    const ProjPoint o = point_origin(n), inf = point_infinity(n);
    // <w1, z2> = <o, o> = 0 vanishes
    CHECK_THROWS_AS(cross_ratio(inf, o, o, inf), DegenerateConfiguration);
}

TEST_CASE("block inequalities") {
    SUBCASE("identity margins") {
        const BlockInequalities r = block_inequalities(SpMatrix::validate(QMat::identity(4)));
        CHECK(r.all_hold);
        CHECK(r.checks[0].lhs == 0.0);  // |beta* alpha| <= 0
        CHECK(r.checks[0].rhs == 0.0);
        CHECK(r.checks[2].lhs == 1.0);  // |ad|^{1/2} = 1 <= 0 + 1
        CHECK(r.checks[2].rhs == 1.0);
        CHECK(r.checks[3].margin == doctest::Approx(2.0));  // 0 <= 1 + 1
        CHECK(r.checks[4].lhs == 1.0);                      // tight
        CHECK(r.checks[4].rhs == 1.0);
    }
    SUBCASE("swap matrix is tight in the third inequality") {
        const BlockInequalities r = block_inequalities(rnd::swap_last_two(2));
        CHECK(r.all_hold);
        CHECK(r.checks[3].lhs == 1.0);  // |bc|^{1/2} = 1 <= 0 + 1
        CHECK(r.checks[3].rhs == 1.0);
        CHECK(r.checks[4].rhs == 1.0);  // 1 <= |ad|^{1/2} + |bc|^{1/2} = 1
    }
    SUBCASE("hold on random elements of Sp(2,1) and Sp(3,1)") {
        for (int n : {2, 3})
            for (int t = 0; t < 500; ++t) {
                const BlockInequalities r = block_inequalities(rnd::random_sp(n, rng));
                CHECK(r.all_hold);
                for (const auto& c : r.checks) CHECK(c.margin >= -1e-9);
            }
    }
}
