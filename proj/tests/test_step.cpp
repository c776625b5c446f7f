#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "wtf/step.hpp"
#include "wtf/wavepacket.hpp"

using namespace wtf;
using testing::Rng;

namespace {

const QuadExt kOne = QuadExt::integer(1);

// Independent evaluation on the finest mesh: sample each finest cell.
QuadExt brute_integral(const StepFunction& f, int fine_k) {
    QuadExt s;
    long long cellcount = 1;
    for (int i = 0; i < f.M() - fine_k; ++i) cellcount *= 2;
    for (long long i = 0; i < cellcount; ++i) {
        DyadicRational x = DyadicInterval{fine_k, i}.center();
        s += f.value_at(x).mul_pow2(fine_k);
    }
    return s;
}

int finest_scale(const StepFunction& f) {
    int k = f.M();
    for (const auto& c : f.cells()) k = std::min(k, c.iv.k);
    return k;
}

}  // namespace

TEST_CASE("interval relation basics") {
    DyadicInterval unit{0, 0};
    CHECK(interval_relation(unit, unit) == IntervalRelation::Equal);
    CHECK(interval_relation({-1, 0}, unit) == IntervalRelation::AInsideB);
    CHECK(interval_relation({-1, 0}, {-1, 1}) == IntervalRelation::Disjoint);
    CHECK(interval_relation(unit, {-1, 1}) == IntervalRelation::BInsideA);
}

TEST_CASE("nesting law: dyadic intervals never partially overlap") {
    Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        DyadicInterval a{static_cast<int>(rng.range(-4, 4)), rng.range(0, 15)};
        DyadicInterval b{static_cast<int>(rng.range(-4, 4)), rng.range(0, 15)};
        // independent check with endpoint arithmetic
        DyadicRational a0 = a.start(), a1 = a.end(), b0 = b.start(), b1 = b.end();
        bool meet = a0 < b1 && b0 < a1;
        auto rel = interval_relation(a, b);
        if (!meet) {
            CHECK(rel == IntervalRelation::Disjoint);
        } else if (a0 == b0 && a1 == b1) {
            CHECK(rel == IntervalRelation::Equal);
        } else if (a0 >= b0 && a1 <= b1) {
            CHECK(rel == IntervalRelation::AInsideB);
        } else {
            CHECK((b0 >= a0 && b1 <= a1));
            CHECK(rel == IntervalRelation::BInsideA);
        }
    }
}

TEST_CASE("dyadic cover is exact and greedy") {
    auto cover = dyadic_cover(DyadicRational(BigInt(1), 2), DyadicRational::integer(2));
    // [1/4, 2) = [1/4,1/2) + [1/2,1) + [1,2)
    REQUIRE(cover.size() == 3);
    CHECK(cover[0] == DyadicInterval{-2, 1});
    CHECK(cover[1] == DyadicInterval{-1, 1});
    CHECK(cover[2] == DyadicInterval{0, 1});
}

TEST_CASE("step combine: indicator product and additive inverse") {
    StepFunction a = StepFunction::indicator(1, {0, 0});        // chi_[0,1)
    StepFunction b = StepFunction::indicator(1, {-1, 1});       // chi_[1/2,1)
    CHECK(step_combine(a, b, CombineOp::Multiply) == b);
    StepFunction minus = step_scale(a, QuadExt::integer(-1));
    CHECK(step_combine(a, minus, CombineOp::Add).is_zero());
}

TEST_CASE("step combine: sqrt2 squares to 2") {
    StepFunction f = StepFunction::constant_on(1, {-2, 0}, QuadExt::sqrt2());
    StepFunction sq = step_combine(f, f, CombineOp::Multiply);
    CHECK(sq == StepFunction::constant_on(1, {-2, 0}, QuadExt::integer(2)));
}

TEST_CASE("mismatched grids are rejected") {
    StepFunction a = StepFunction::indicator(1, {0, 0});
    StepFunction b = StepFunction::indicator(2, {0, 0});
    CHECK_THROWS_AS(step_combine(a, b, CombineOp::Add), PreconditionError);
}

TEST_CASE("canonical form merges sibling cells") {
    StepFunction f = StepFunction::from_cells(
        2, {{{-1, 0}, kOne}, {{-1, 1}, kOne}, {{-1, 2}, kOne}, {{-1, 3}, kOne}});
    REQUIRE(f.cells().size() == 1);
    CHECK(f.cells()[0].iv == DyadicInterval{1, 0});
    CHECK(f == StepFunction::indicator(2, {1, 0}));
}

TEST_CASE("integrate and inner products") {
    StepFunction one = StepFunction::indicator(0, {0, 0});
    CHECK(integrate(one) == kOne);
    CHECK(inner_product(walsh_function(0), walsh_function(1)).is_zero());
    StepFunction f = StepFunction::constant_on(1, {-1, 0}, QuadExt::sqrt2());
    CHECK(integrate(f) == QuadExt(BigInt(0), BigInt(1), 1));  // sqrt2 / 2
}

TEST_CASE("integrate/inner_product agree with brute-force mesh evaluation") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        int m = 2 + static_cast<int>(rng.below(2));
        StepFunction f = testing::random_step(rng, m);
        StepFunction g = testing::random_step(rng, m);
        int fine = std::min(finest_scale(f), finest_scale(g));
        CHECK(integrate(f) == brute_integral(f, fine));
        CHECK(inner_product(f, g) == brute_integral(f * g, fine));
        CHECK(inner_product(f, g) == inner_product(g, f));
        // bilinearity
        CHECK(inner_product(f + g, g) == inner_product(f, g) + inner_product(g, g));
    }
}

TEST_CASE("restriction") {
    StepFunction f = StepFunction::indicator(2, {1, 0});  // [0,2)
    CHECK(step_restrict(f, {0, 1}) == StepFunction::indicator(2, {0, 1}));
    CHECK(step_restrict(f, {0, 3}).is_zero());
    CHECK(integrate(f, {1, 0}) == QuadExt::integer(2));
}

TEST_CASE("lp norms") {
    StepFunction ind = StepFunction::indicator(1, {0, 0});
    for (double p : {0.5, 1.0, 2.0, 3.0})
        CHECK(lp_norm(ind, p) == doctest::Approx(1.0));
    CHECK(lp_norm(ind, INFINITY) == doctest::Approx(1.0));

    // packet normalization: sqrt2 * w_1(2x) on [0,1/2)
    StepFunction packet = StepFunction::from_cells(
        1, {{{-2, 0}, QuadExt::sqrt2()}, {{-2, 1}, -QuadExt::sqrt2()}});
    CHECK(l2_norm_squared(packet) == kOne);
    CHECK(lp_norm(packet, 2) == doctest::Approx(1.0));

    CHECK_THROWS_AS(lp_norm(ind, 0.0), PreconditionError);
}

TEST_CASE("weak l1 norm picks the best level") {
    // f = 2 on [0,1/4), 1 on [1/4,1): levels 2*(1/4) and 1*1
    StepFunction f = StepFunction::from_cells(
        0, {{{-2, 0}, QuadExt::integer(2)},
            {{-2, 1}, kOne},
            {{-1, 1}, kOne}});
    CHECK(weak_l1_squared(f) == kOne);
    CHECK(weak_l1_norm(f) == doctest::Approx(1.0));
    // sqrt variant: h = f^2 has levels 4 and 1, sqrt levels 2 and 1
    CHECK(weak_l1_sqrt_squared(f * f) == kOne);
}

TEST_CASE("dyadic maximal: examples") {
    StepFunction one = StepFunction::indicator(0, {0, 0});
    CHECK(dyadic_maximal(one) == one);

    StepFunction half = StepFunction::indicator(1, {-1, 0});  // chi_[0,1/2) on [0,2)
    StepFunction mf = dyadic_maximal(half);
    CHECK(mf.value_at(DyadicRational(BigInt(3), 2)) == QuadExt(BigInt(1), BigInt(0), 1));
    CHECK(mf.value_at(DyadicRational(BigInt(1), 2)) == kOne);
    CHECK(mf.value_at(DyadicRational(BigInt(3), 1)) == QuadExt(BigInt(1), BigInt(0), 2));

    CHECK(dyadic_maximal(StepFunction::zero(2)).is_zero());
}

TEST_CASE("dyadic maximal matches exhaustive interval enumeration") {
    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        int m = 2 + static_cast<int>(rng.below(3));  // M ≤ 4
        StepFunction f = testing::random_step(rng, m);
        StepFunction mf = dyadic_maximal(f);
        StepFunction absf = step_abs(f);
        // brute force: per finest cell, max of averages over all dyadic intervals
        long long fine = 1LL << (2 * m);
        for (long long i = 0; i < fine; ++i) {
            DyadicRational x = DyadicInterval{-m, i}.center();
            QuadExt best;
            for (int k = -m; k <= m; ++k) {
                long long idx = i >> (k + m);
                QuadExt avg = integrate(absf, {k, idx}).mul_pow2(-k);
                best = max(best, avg);
            }
            CHECK(mf.value_at(x) == best);
        }
    }
}

TEST_CASE("chi_value_in handles off-support zeros") {
    // N = 3/2 on [0,1), unset (= 0) on [1,2)
    StepFunction n = StepFunction::constant_on(1, {0, 0}, QuadExt(BigInt(3), BigInt(0), 1));
    CHECK(chi_value_in(n, {0, 1}) == StepFunction::indicator(1, {0, 0}));  // [1,2) ni 3/2
    CHECK(chi_value_in(n, {0, 0}) == StepFunction::indicator(1, {0, 1}));  // [0,1) ni 0
    CHECK(chi_value_in(n, {1, 1}).is_zero());
}

TEST_CASE("regions and exceptional sets") {
    // E = [0,1) inside [0,2), C = 2: M chi_E <= 1 < 2|E|, so Omega is empty
    Region e = Region::indicator(1, {0, 0});
    Region omega = exceptional_set({e}, DyadicRational::integer(2));
    CHECK(omega.is_zero());
    CHECK(major_subset(e, omega) == e);

    Region empty = Region::zero(1);
    CHECK(exceptional_set({empty}, DyadicRational::integer(2)).is_zero());

    // E = [0,1/2) on the M=1 grid, C = 1/2: threshold 1/4, check cellwise
    Region e2 = Region::indicator(1, {-1, 0});
    Region omega2 = exceptional_set({e2}, DyadicRational(BigInt(1), 1));
    StepFunction mf = dyadic_maximal(e2);
    QuadExt thr = QuadExt(BigInt(1), BigInt(0), 2);
    for (long long i = 0; i < 4; ++i) {
        DyadicRational x = DyadicInterval{-1, i}.center();
        CHECK((omega2.value_at(x) == kOne) == (mf.value_at(x) > thr));
    }
}

TEST_CASE("major subset failure raises") {
    Region e = Region::indicator(1, {-1, 0});
    Region omega = Region::indicator(1, {0, 0});  // covers E entirely
    CHECK_THROWS_AS(major_subset(e, omega), MajorSubsetError);
}

TEST_CASE("region algebra") {
    Region a = Region::indicator(1, {-1, 0});
    Region b = Region::indicator(1, {-1, 1});
    CHECK(region_union(a, b) == Region::indicator(1, {0, 0}));
    CHECK(region_intersect(a, b).is_zero());
    CHECK(region_diff(region_union(a, b), b) == a);
    CHECK(region_measure(region_complement(a)) == DyadicRational(BigInt(3), 1));
    CHECK(is_region(a));
    CHECK(!is_region(step_scale(a, QuadExt::integer(2))));
}
