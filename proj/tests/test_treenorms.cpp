#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "oracles.hpp"
#include "wtf/treenorms.hpp"

using namespace wtf;
using testing::Rng;

namespace {

const QuadExt kOne = QuadExt::integer(1);

CoefficientSequence random_coeffs(Rng& rng, const QuartileCollection& coll, int j) {
    CoefficientSequence seq;
    for (const auto& q : coll.members)
        seq.set(q, j, QuadExt(BigInt(rng.range(-3, 3)), BigInt(rng.range(-1, 1)), 1));
    return seq;
}

QuartileCollection small_random(Rng& rng, const AmbientGrid& grid, size_t maxn) {
    QuartileCollection coll = testing::random_quartiles(rng, grid, maxn);
    while (coll.members.size() > maxn) coll.members.pop_back();
    return coll;
}

}  // namespace

TEST_CASE("max weight antichain: basics") {
    auto r = max_weight_antichain({{}, {}}, AntichainMode::Brute);
    CHECK(r.value.is_zero());
    CHECK(r.witness.empty());
    auto r2 = max_weight_antichain({{}, {}}, AntichainMode::MinCut);
    CHECK(r2.value.is_zero());

    // chain of three nested tiles, weights 1, 4, 9: best singleton wins
    AntichainProblem chain;
    chain.items = {Rect{{0, 0}, {0, 0}}, Rect{{1, 0}, {-1, 0}}, Rect{{2, 0}, {-2, 0}}};
    chain.weights = {QuadExt::integer(1), QuadExt::integer(4), QuadExt::integer(9)};
    for (auto mode : {AntichainMode::Brute, AntichainMode::MinCut}) {
        auto rc = max_weight_antichain(chain, mode);
        CHECK(rc.value == QuadExt::integer(9));
        REQUIRE(rc.witness.size() == 1);
        CHECK(rc.witness[0] == 2);
    }

    AntichainProblem neg;
    neg.items = {Rect{{0, 0}, {0, 0}}};
    neg.weights = {QuadExt::integer(-1)};
    CHECK_THROWS_AS(max_weight_antichain(neg, AntichainMode::Brute), PreconditionError);
}

TEST_CASE("max weight antichain: brute equals mincut on random posets") {
    Rng rng(101);
    AmbientGrid grid{3};
    auto tiles = enumerate_tiles(grid);
    for (int trial = 0; trial < 200; ++trial) {
        AntichainProblem prob;
        size_t n = 1 + rng.below(14);
        for (size_t i = 0; i < n; ++i) {
            prob.items.push_back(tiles[rng.below(tiles.size())].rect());
            prob.weights.push_back(
                QuadExt(BigInt(rng.range(0, 6)), BigInt(rng.range(0, 2)), 1));
        }
        auto rb = max_weight_antichain(prob, AntichainMode::Brute);
        auto rm = max_weight_antichain(prob, AntichainMode::MinCut);
        CHECK(rb.value == rm.value);
    }
}

TEST_CASE("maximal tree: examples and filter oracle") {
    AmbientGrid grid{3};
    QuartileCollection empty{grid, {}};
    Quartile top{0, 0, 0};
    CHECK(maximal_tree(top, empty, 1).members.empty());

    QuartileCollection with_top{grid, {top}};
    Tree t = maximal_tree(top, with_top, 2);
    REQUIRE(t.members.size() == 1);
    CHECK(t.members[0] == top);
    CHECK(is_valid_tree(t));

    Rng rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        QuartileCollection coll = testing::random_quartiles(rng, grid, 20);
        auto tops = enumerate_quartiles(grid).members;
        const Quartile& cand = tops[rng.below(tops.size())];
        int i = static_cast<int>(rng.range(1, 3));
        Tree got = maximal_tree(cand, coll, i);
        std::vector<Quartile> expect;
        for (const auto& p : coll.members)
            if (tile_le(p.subtile(i).rect(), cand.subtile(i).rect())) expect.push_back(p);
        CHECK(got.members == expect);
    }
}

TEST_CASE("size: single quartile and empty collection") {
    AmbientGrid grid{3};
    QuartileCollection empty{grid, {}};
    CHECK(size_squared(CoefficientSequence(), empty, 1).is_zero());

    Quartile q{1, 2, 0};
    QuartileCollection one{grid, {q}};
    CoefficientSequence seq;
    seq.set(q, 3, QuadExt::integer(3));
    // best top is the quartile itself: 9 / |I| = 9 / (1/2)
    CHECK(size_squared(seq, one, 3) == QuadExt::integer(18));
}

TEST_CASE("size and energy match the exhaustive oracles") {
    Rng rng(109);
    AmbientGrid grid{3};
    for (int trial = 0; trial < 30; ++trial) {
        QuartileCollection coll = small_random(rng, grid, 9);
        int j = static_cast<int>(rng.range(1, 3));
        CoefficientSequence seq = random_coeffs(rng, coll, j);
        CHECK(size_squared(seq, coll, j) == testing::oracle_size_squared(seq, coll, j));
        QuadExt fast = energy_squared(seq, coll, j);
        CHECK(fast == testing::oracle_energy_squared(seq, coll, j));
        CHECK(fast == energy_squared(seq, coll, j, AntichainMode::Brute));
    }
}

TEST_CASE("energy: disjoint family sums, chains pick the max") {
    AmbientGrid grid{3};
    // two quartiles with disjoint time intervals: energies add
    QuartileCollection coll{grid, {{0, 0, 0}, {0, 1, 0}}};
    CoefficientSequence seq;
    seq.set(coll.members[0], 1, QuadExt::integer(2));
    seq.set(coll.members[1], 1, QuadExt::integer(3));
    CHECK(energy_squared(seq, coll, 1) == QuadExt::integer(13));
}

TEST_CASE("b-size and b-energy: zero, single quartile, oracle") {
    AmbientGrid grid{3};
    QuartileCollection one{grid, {{1, 0, 0}}};
    StepFunction zero = StepFunction::zero(3);
    StepFunction n0 = StepFunction::zero(3);
    CHECK(b_size(zero, n0, one).is_zero());
    CHECK(b_energy(zero, n0, one).is_zero());

    // G = chi_{I_P}, N inside omega_{P1} u omega_{P2} on all of I_P
    Quartile q{1, 0, 0};  // I = [0,1/2), omega = [0,8), omega_12 = [0,4)
    StepFunction g = StepFunction::indicator(3, q.time());
    StepFunction n = StepFunction::zero(3);  // N = 0 lies in omega_{P1} = [0,2)
    CHECK(b_energy(g, n, one) == QuadExt(BigInt(1), BigInt(0), 1));  // |I_P| = 1/2

    Rng rng(113);
    for (int trial = 0; trial < 12; ++trial) {
        QuartileCollection coll = small_random(rng, grid, 7);
        StepFunction gg = testing::random_step(rng, 3);
        StepFunction nn = testing::random_choice_function(rng, 3);
        CHECK(b_size(gg, nn, coll) == testing::oracle_b_size(gg, nn, coll));
        QuadExt fast = b_energy(gg, nn, coll);
        CHECK(fast == testing::oracle_b_energy(gg, nn, coll));
        CHECK(fast == b_energy(gg, nn, coll, AntichainMode::Brute));
    }
}

TEST_CASE("prime size and energy: zero, oracle") {
    AmbientGrid grid{2};
    QuartileCollection qcoll{grid, {{0, 0, 0}}};
    QuartileCollection pcoll{grid, {{-2, 0, 1}}};
    StepFunction zero = StepFunction::zero(2);
    StepFunction n = StepFunction::zero(2);
    CHECK(size_prime(zero, zero, n, qcoll, pcoll).is_zero());
    CHECK(energy_prime(zero, zero, n, qcoll, pcoll).is_zero());

    Rng rng(127);
    AmbientGrid g3{3};
    for (int trial = 0; trial < 8; ++trial) {
        QuartileCollection qc = small_random(rng, g3, 6);
        QuartileCollection pc = small_random(rng, g3, 6);
        StepFunction f1 = testing::random_step(rng, 3);
        StepFunction f3 = testing::random_step(rng, 3);
        StepFunction nn = testing::random_choice_function(rng, 3);
        CHECK(size_prime(f1, f3, nn, qc, pc) == testing::oracle_size_prime(f1, f3, nn, qc, pc));
        QuadExt fast = energy_prime(f1, f3, nn, qc, pc);
        CHECK(fast == testing::oracle_energy_prime(f1, f3, nn, qc, pc));
        CHECK(fast == energy_prime(f1, f3, nn, qc, pc, AntichainMode::Brute));
    }
}

TEST_CASE("tilde tree: examples and filter oracle") {
    AmbientGrid grid{3};
    QuartileCollection pcoll = enumerate_quartiles(grid);
    CHECK(tilde_tree({}, pcoll).empty());

    // single member: exactly the quartiles with the same 2-subtile
    Quartile q{0, 0, 0};
    auto tilde = tilde_tree({q}, pcoll);
    REQUIRE(tilde.size() == 1);
    CHECK(tilde[0] == q);

    Rng rng(131);
    for (int trial = 0; trial < 10; ++trial) {
        QuartileCollection qc = small_random(rng, grid, 6);
        QuartileCollection pc = testing::random_quartiles(rng, grid, 20);
        auto got = tilde_tree(qc.members, pc);
        std::vector<Quartile> expect;
        for (const auto& p : pc.members) {
            bool lower = false, upper = false;
            for (const auto& m : qc.members) {
                if (tile_le(m.subtile(2).rect(), p.subtile(2).rect())) lower = true;
                if (tile_le(p.subtile(2).rect(), m.subtile(2).rect())) upper = true;
            }
            if (lower && upper) expect.push_back(p);
        }
        CHECK(got == expect);
    }
}

TEST_CASE("double-prime: single-quartile trees vanish (frequency quarters are disjoint)") {
    AmbientGrid grid{2};
    QuartileCollection qcoll{grid, {{0, 0, 0}}};
    QuartileCollection pcoll{grid, {{0, 0, 0}}};  // P2 = Q2, lands in the tilde set
    Rng rng(137);
    StepFunction g = testing::random_step(rng, 2);
    StepFunction h = testing::random_step(rng, 2);
    CHECK(dp_tree_function(qcoll.members, g, h, pcoll).is_zero());
    CHECK(size_doubleprime(g, h, qcoll, pcoll, TreeSupMode::Exhaustive).is_zero());
    CHECK(size_doubleprime(g, h, qcoll, pcoll, TreeSupMode::MaximalTree).is_zero());
    CHECK(energy_doubleprime_squared(g, h, qcoll, pcoll, TreeSupMode::Exhaustive).is_zero());
}

TEST_CASE("double-prime: hand-computed two-scale tree at M = 3") {
    AmbientGrid grid{3};
    Quartile qfine{1, 0, 0};    // I=[0,1/2), omega=[0,8)
    Quartile qcoarse{-1, 0, 1};  // I=[0,2), omega=[2,4)
    QuartileCollection qcoll{grid, {qfine, qcoarse}};
    QuartileCollection pcoll{grid, {qfine}};  // P2 = Qfine2 sandwiches between the two

    StepFunction g = wave_packet(qcoarse.subtile(1), 3);
    StepFunction h = wave_packet(qfine.subtile(1), 3);
    StepFunction f = dp_tree_function(qcoll.members, g, h, pcoll);
    CHECK(l1_norm_exact(f) == QuadExt(BigInt(1), BigInt(0), 1));  // 1/2
    CHECK(l2_norm_squared(f) == QuadExt(BigInt(1), BigInt(0), 1));

    // top must contain I = [0,2), so the sup value is (1/2) / 2 = 1/4
    QuadExt quarter(BigInt(1), BigInt(0), 2);
    CHECK(size_doubleprime(g, h, qcoll, pcoll, TreeSupMode::Exhaustive) == quarter);
    CHECK(size_doubleprime(g, h, qcoll, pcoll, TreeSupMode::MaximalTree) == quarter);
    QuadExt half(BigInt(1), BigInt(0), 1);
    CHECK(energy_doubleprime_squared(g, h, qcoll, pcoll, TreeSupMode::Exhaustive) == half);
    CHECK(energy_doubleprime_squared(g, h, qcoll, pcoll, TreeSupMode::MaximalTree) == half);
}

TEST_CASE("double-prime: exhaustive dominates maximal-tree mode") {
    Rng rng(139);
    AmbientGrid grid{3};
    int nonzero = 0;
    for (int trial = 0; trial < 10; ++trial) {
        QuartileCollection qc = small_random(rng, grid, 7);
        QuartileCollection pc = small_random(rng, grid, 10);
        StepFunction g = testing::random_step(rng, 3);
        StepFunction h = testing::random_step(rng, 3);
        QuadExt s_ex = size_doubleprime(g, h, qc, pc, TreeSupMode::Exhaustive);
        QuadExt s_mx = size_doubleprime(g, h, qc, pc, TreeSupMode::MaximalTree);
        CHECK(s_mx <= s_ex);
        QuadExt e_ex = energy_doubleprime_squared(g, h, qc, pc, TreeSupMode::Exhaustive);
        QuadExt e_mx = energy_doubleprime_squared(g, h, qc, pc, TreeSupMode::MaximalTree);
        CHECK(e_mx <= e_ex);
        if (!s_ex.is_zero()) ++nonzero;
    }
    CHECK(nonzero > 0);  // the battery is not vacuous
}

TEST_CASE("monotonicity: enlarging the collection never decreases size or energy") {
    Rng rng(149);
    AmbientGrid grid{3};
    for (int trial = 0; trial < 10; ++trial) {
        QuartileCollection big = small_random(rng, grid, 10);
        if (big.members.empty()) continue;
        QuartileCollection small{grid, {}};
        for (const auto& q : big.members)
            if (rng.chance(1, 2)) small.members.push_back(q);
        int j = static_cast<int>(rng.range(1, 3));
        CoefficientSequence seq = random_coeffs(rng, big, j);
        CHECK(size_squared(seq, small, j) <= size_squared(seq, big, j));
        CHECK(energy_squared(seq, small, j) <= energy_squared(seq, big, j));
        StepFunction gg = testing::random_step(rng, 3);
        StepFunction nn = testing::random_choice_function(rng, 3);
        CHECK(b_size(gg, nn, small) <= b_size(gg, nn, big));
        CHECK(b_energy(gg, nn, small) <= b_energy(gg, nn, big));
    }
}

TEST_CASE("bessel: energy of packet coefficients is at most the L2 norm") {
    Rng rng(151);
    AmbientGrid grid{3};
    for (int trial = 0; trial < 40; ++trial) {
        QuartileCollection coll = testing::random_quartiles(rng, grid, 24);
        StepFunction f = testing::random_step(rng, 3);
        int j = static_cast<int>(rng.range(1, 3));
        CoefficientSequence seq = analyze(f, coll, {j});
        CHECK(energy_squared(seq, coll, j) <= l2_norm_squared(f));
    }
}

TEST_CASE("b-energy of X(E) functions is at most the L1 norm") {
    Rng rng(157);
    AmbientGrid grid{3};
    for (int trial = 0; trial < 30; ++trial) {
        QuartileCollection coll = testing::random_quartiles(rng, grid, 24);
        Region e = testing::random_region(rng, 3);
        StepFunction g = testing::random_sign_function(rng, e);
        StepFunction n = testing::random_choice_function(rng, 3);
        CHECK(b_energy(g, n, coll) <= l1_norm_exact(g));
    }
}
