#pragma once

#include "wtf/numbers.hpp"

#include <cstdint>
#include <tuple>
#include <vector>

namespace wtf {

enum class IntervalRelation { Equal, AInsideB, BInsideA, Disjoint };

/// Half-open dyadic interval [n*2^k, (n+1)*2^k).
struct DyadicInterval {
    int k = 0;           // length 2^k
    long long n = 0;     // start index

    DyadicRational start() const { return DyadicRational(BigInt(n), -k); }
    DyadicRational end() const { return DyadicRational(BigInt(n) + 1, -k); }
    DyadicRational length() const { return DyadicRational(BigInt(1), -k); }
    DyadicRational center() const { return DyadicRational(2 * BigInt(n) + 1, -k + 1); }

    DyadicInterval left_child() const { return {k - 1, 2 * n}; }
    DyadicInterval right_child() const { return {k - 1, 2 * n + 1}; }
    DyadicInterval parent() const { return {k + 1, n >= 0 ? n / 2 : (n - 1) / 2}; }

    bool contains_value(const DyadicRational& x) const { return x >= start() && x < end(); }
    bool contains_value(const QuadExt& x) const {
        return x >= QuadExt::dyadic(start()) && x < QuadExt::dyadic(end());
    }

    friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
        return a.k == b.k && a.n == b.n;
    }
    friend bool operator!=(const DyadicInterval& a, const DyadicInterval& b) { return !(a == b); }
    friend bool operator<(const DyadicInterval& a, const DyadicInterval& b) {
        return std::tie(a.k, a.n) < std::tie(b.k, b.n);
    }
};

namespace detail {
inline long long floor_shr(long long n, int s) {
    if (s >= 63) return n < 0 ? -1 : 0;
    return n >> s;  // arithmetic shift: floor division by 2^s
}
}  // namespace detail

/// Exactly one of: equal, A strictly inside B, B strictly inside A, disjoint.
/// Dyadic intervals can never partially overlap.
inline IntervalRelation interval_relation(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.k == b.k) return a.n == b.n ? IntervalRelation::Equal : IntervalRelation::Disjoint;
    if (a.k < b.k)
        return detail::floor_shr(a.n, b.k - a.k) == b.n ? IntervalRelation::AInsideB
                                                        : IntervalRelation::Disjoint;
    return detail::floor_shr(b.n, a.k - b.k) == a.n ? IntervalRelation::BInsideA
                                                    : IntervalRelation::Disjoint;
}

inline bool interval_contains(const DyadicInterval& outer, const DyadicInterval& inner) {
    auto r = interval_relation(inner, outer);
    return r == IntervalRelation::Equal || r == IntervalRelation::AInsideB;
}

inline bool interval_strictly_contains(const DyadicInterval& outer, const DyadicInterval& inner) {
    return interval_relation(inner, outer) == IntervalRelation::AInsideB;
}

inline bool intervals_disjoint(const DyadicInterval& a, const DyadicInterval& b) {
    return interval_relation(a, b) == IntervalRelation::Disjoint;
}

/// Greedy cover of [a, b) by maximal dyadic intervals, left to right.
std::vector<DyadicInterval> dyadic_cover(const DyadicRational& a, const DyadicRational& b);

/// Finite spatial/frequency domain [0, 2^M) with the admissible tile scales.
struct AmbientGrid {
    int M = 4;

    DyadicInterval domain() const { return {M, 0}; }
    /// Quartile spatial-scale parameter k: |I| = 2^-k, |omega| = 2^{k+2}.
    int quartile_k_min() const { return -M; }
    int quartile_k_max() const { return M - 2; }
    int bitile_k_max() const { return M - 1; }
    int tile_k_max() const { return M; }

    friend bool operator==(const AmbientGrid& a, const AmbientGrid& b) { return a.M == b.M; }
    friend bool operator!=(const AmbientGrid& a, const AmbientGrid& b) { return a.M != b.M; }
};

}  // namespace wtf
