#pragma once

#include "wtf/interval.hpp"

#include <tuple>
#include <vector>

namespace wtf {

/// Dyadic rectangle I x omega in the time-frequency plane.
struct Rect {
    DyadicInterval I;
    DyadicInterval omega;

    friend bool operator==(const Rect& a, const Rect& b) {
        return a.I == b.I && a.omega == b.omega;
    }
    friend bool operator!=(const Rect& a, const Rect& b) { return !(a == b); }
};

/// Area-one tile [2^-k n, 2^-k (n+1)) x [2^k l, 2^k (l+1)).
struct Tile {
    int k = 0;
    long long n = 0;
    long long l = 0;

    DyadicInterval time() const { return {-k, n}; }
    DyadicInterval freq() const { return {k, l}; }
    Rect rect() const { return {time(), freq()}; }

    friend bool operator==(const Tile& a, const Tile& b) {
        return a.k == b.k && a.n == b.n && a.l == b.l;
    }
    friend bool operator<(const Tile& a, const Tile& b) {
        return std::tie(a.k, a.n, a.l) < std::tie(b.k, b.n, b.l);
    }
};

/// Area-two bitile [2^-k n, 2^-k (n+1)) x [2^{k+1} l, 2^{k+1} (l+1)).
struct Bitile {
    int k = 0;
    long long n = 0;
    long long l = 0;

    DyadicInterval time() const { return {-k, n}; }
    DyadicInterval freq() const { return {k + 1, l}; }
    Rect rect() const { return {time(), freq()}; }

    /// Frequency halves: subtile 1 is the lower one.
    Tile subtile(int j) const { return {k, n, 2 * l + (j - 1)}; }

    friend bool operator==(const Bitile& a, const Bitile& b) {
        return a.k == b.k && a.n == b.n && a.l == b.l;
    }
    friend bool operator<(const Bitile& a, const Bitile& b) {
        return std::tie(a.k, a.n, a.l) < std::tie(b.k, b.n, b.l);
    }
};

/// Area-four quartile [2^-k n, 2^-k (n+1)) x [2^{k+2} l, 2^{k+2} (l+1)).
struct Quartile {
    int k = 0;
    long long n = 0;
    long long l = 0;

    DyadicInterval time() const { return {-k, n}; }
    DyadicInterval freq() const { return {k + 2, l}; }
    Rect rect() const { return {time(), freq()}; }

    /// Frequency quarters 1..3, lowest first; the fourth quarter is unused.
    Tile subtile(int j) const { return {k, n, 4 * l + (j - 1)}; }
    /// P12 = P1 union P2, the lower half.
    Bitile subbitile() const { return {k, n, 2 * l}; }

    friend bool operator==(const Quartile& a, const Quartile& b) {
        return a.k == b.k && a.n == b.n && a.l == b.l;
    }
    friend bool operator!=(const Quartile& a, const Quartile& b) { return !(a == b); }
    friend bool operator<(const Quartile& a, const Quartile& b) {
        return std::tie(a.k, a.n, a.l) < std::tie(b.k, b.n, b.l);
    }
};

struct QuartileCollection {
    AmbientGrid grid;
    std::vector<Quartile> members;
};

struct BitileCollection {
    AmbientGrid grid;
    std::vector<Bitile> members;
};

enum class TileOrder { Less, Equal, Greater, Incomparable };

/// P' < P iff I_{P'} strictly inside I_P and omega_P inside omega_{P'}.
TileOrder tile_order(const Rect& a, const Rect& b);

inline bool tile_le(const Rect& a, const Rect& b) {
    auto o = tile_order(a, b);
    return o == TileOrder::Less || o == TileOrder::Equal;
}
inline bool tile_lt(const Rect& a, const Rect& b) { return tile_order(a, b) == TileOrder::Less; }

bool tiles_disjoint(const Rect& a, const Rect& b);

/// The implication: P'_i <= P_i  =>  P'_j and P_j disjoint (i != j).
bool check_lacunar(const Quartile& p, const Quartile& pp, int i, int j);

/// { P in coll : P_i <= Q_j for some Q in d }. Requires the tiles Q_j, Q in d,
/// to be pairwise disjoint.
std::vector<Quartile> biest_restriction(const QuartileCollection& coll,
                                        const std::vector<Quartile>& d, int i, int j);

/// For every pair (P, Q) with P_i and Q_j intersecting:
/// omega_{Q_j} inside omega_{P_i} iff P belongs to the restriction.
bool biest_check(const QuartileCollection& coll, const std::vector<Quartile>& d, int i, int j);

QuartileCollection enumerate_quartiles(const AmbientGrid& grid);
BitileCollection enumerate_bitiles(const AmbientGrid& grid);
std::vector<Tile> enumerate_tiles(const AmbientGrid& grid);

bool quartile_in_grid(const AmbientGrid& grid, const Quartile& q);

}  // namespace wtf
