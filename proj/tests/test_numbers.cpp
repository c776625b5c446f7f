#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "wtf/numbers.hpp"

#include <cmath>

using namespace wtf;

TEST_CASE("dyadic rational canonical form and arithmetic") {
    DyadicRational half(BigInt(1), 1);
    DyadicRational quarter(BigInt(1), 2);
    CHECK(half + quarter == DyadicRational(BigInt(3), 2));
    CHECK(half * quarter == DyadicRational(BigInt(1), 3));
    CHECK((half - half).is_zero());
    CHECK((half - half).exp() == 0);

    DyadicRational four(BigInt(8), 1);  // 8/2 normalizes to 4 = 1/2^-2
    CHECK(four.num() == 1);
    CHECK(four.exp() == -2);
    CHECK(four == DyadicRational::integer(4));
    CHECK(half < DyadicRational::integer(1));
    CHECK(half.mul_pow2(1) == DyadicRational::integer(1));
}

TEST_CASE("quadext ring operations are exact") {
    QuadExt r2 = QuadExt::sqrt2();
    CHECK(r2 * r2 == QuadExt::integer(2));
    QuadExt x(BigInt(1), BigInt(1), 0);          // 1 + sqrt2
    QuadExt y(BigInt(1), BigInt(-1), 0);         // 1 - sqrt2
    CHECK(x * y == QuadExt::integer(-1));        // 1 - 2
    CHECK(x + y == QuadExt::integer(2));
    CHECK((x - x).is_zero());
    CHECK(x.square() == QuadExt(BigInt(3), BigInt(2), 0));

    // canonical form reduces both-even pairs
    QuadExt z(BigInt(2), BigInt(4), 3);
    CHECK(z.a() == 1);
    CHECK(z.b() == 2);
    CHECK(z.m() == 2);
}

TEST_CASE("pow2_half") {
    CHECK(QuadExt::pow2_half(0) == QuadExt::integer(1));
    CHECK(QuadExt::pow2_half(2) == QuadExt::integer(2));
    CHECK(QuadExt::pow2_half(1) == QuadExt::sqrt2());
    CHECK(QuadExt::pow2_half(-1) == QuadExt(BigInt(0), BigInt(1), 1));  // sqrt2/2
    CHECK(QuadExt::pow2_half(3) * QuadExt::pow2_half(-3) == QuadExt::integer(1));
    for (int k = -7; k <= 7; ++k)
        CHECK(QuadExt::pow2_half(k) * QuadExt::pow2_half(k) ==
              (k >= 0 ? QuadExt(BigInt(1) << k, BigInt(0), 0) : QuadExt(BigInt(1), BigInt(0), -k)));
}

TEST_CASE("sign decision agrees with float evaluation on random values") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        BigInt a(rng.range(-1000, 1000));
        BigInt b(rng.range(-1000, 1000));
        QuadExt v(a, b, static_cast<int>(rng.below(5)));
        double approx = v.to_double();
        // floats are reliable away from zero; exact zero only when a = b = 0
        if (std::abs(approx) > 1e-9) CHECK(v.sign() == (approx > 0 ? 1 : -1));
        if (a == 0 && b == 0) CHECK(v.sign() == 0);
    }
}

TEST_CASE("quadext ordering and abs") {
    QuadExt w(BigInt(3), BigInt(-2), 0);  // 3 - 2 sqrt2 ~ 0.17
    CHECK(w.sign() == 1);
    QuadExt v(BigInt(-3), BigInt(2), 0);
    CHECK(v.sign() == -1);
    CHECK(v.abs() == w);
    CHECK(v < w);
    CHECK(max(v, w) == w);
    QuadExt tiny(BigInt(-239), BigInt(169), 0);  // 169 sqrt2 - 239 ~ 0.0029
    CHECK(tiny.sign() == 1);
}

TEST_CASE("dyadic conversion") {
    QuadExt d(BigInt(3), BigInt(0), 1);
    CHECK(d.is_rational());
    CHECK(d.to_dyadic() == DyadicRational(BigInt(3), 1));
    CHECK_THROWS_AS(QuadExt::sqrt2().to_dyadic(), PreconditionError);
    CHECK(QuadExt::dyadic(DyadicRational(BigInt(5), 2)) == QuadExt(BigInt(5), BigInt(0), 2));
}
