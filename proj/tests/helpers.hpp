#pragma once

#include "wtf/step.hpp"
#include "wtf/tiles.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wtf::testing {

// Deterministic RNG; avoids std distributions, which vary across platforms.
struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(seed * 0x9e3779b97f4a7c15ULL + 1) {}

    uint64_t next() { return g(); }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    long long range(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }
};

// Random step function with cells on the finest mesh, values (a+b*sqrt2)/2^m.
inline StepFunction random_step(Rng& rng, int m_grid, unsigned density_num = 1,
                                unsigned density_den = 2, bool with_sqrt2 = true) {
    std::vector<StepCell> cells;
    long long fine = 1LL << (2 * m_grid);
    for (long long i = 0; i < fine; ++i) {
        if (!rng.chance(density_num, density_den)) continue;
        BigInt a(rng.range(-4, 4));
        BigInt b = with_sqrt2 ? BigInt(rng.range(-2, 2)) : BigInt(0);
        cells.push_back({{-m_grid, i}, QuadExt(a, b, static_cast<int>(rng.below(3)))});
    }
    return StepFunction::from_cells(m_grid, std::move(cells));
}

// Random {-1,0,+1}-valued function supported on the region e.
inline StepFunction random_sign_function(Rng& rng, const Region& e) {
    std::vector<StepCell> cells;
    for (const auto& cell : e.cells()) {
        long long v = rng.range(-1, 1);
        if (v != 0) cells.push_back({cell.iv, QuadExt::integer(v)});
    }
    return StepFunction::from_cells(e.M(), std::move(cells));
}

// Random union of finest-mesh cells, each kept with probability num/den.
inline Region random_region(Rng& rng, int m_grid, unsigned num = 1, unsigned den = 4) {
    std::vector<StepCell> cells;
    long long fine = 1LL << (2 * m_grid);
    for (long long i = 0; i < fine; ++i)
        if (rng.chance(num, den)) cells.push_back({{-m_grid, i}, QuadExt::integer(1)});
    return Region::from_cells(m_grid, std::move(cells));
}

// Random choice function: finest-mesh cells with values in [0, 2^M).
inline StepFunction random_choice_function(Rng& rng, int m_grid) {
    std::vector<StepCell> cells;
    long long fine = 1LL << (2 * m_grid);
    for (long long i = 0; i < fine; ++i) {
        long long j = static_cast<long long>(rng.below(1ULL << (2 * m_grid)));
        if (j != 0) cells.push_back({{-m_grid, i}, QuadExt(BigInt(j), BigInt(0), m_grid)});
    }
    return StepFunction::from_cells(m_grid, std::move(cells));
}

inline QuartileCollection random_quartiles(Rng& rng, const AmbientGrid& grid, size_t target) {
    QuartileCollection all = enumerate_quartiles(grid);
    QuartileCollection out{grid, {}};
    if (all.members.empty()) return out;
    for (const auto& q : all.members)
        if (rng.chance(target, all.members.size())) out.members.push_back(q);
    return out;
}

inline BitileCollection random_bitiles(Rng& rng, const AmbientGrid& grid, size_t target) {
    BitileCollection all = enumerate_bitiles(grid);
    BitileCollection out{grid, {}};
    for (const auto& b : all.members)
        if (rng.chance(target, all.members.size())) out.members.push_back(b);
    return out;
}

}  // namespace wtf::testing
