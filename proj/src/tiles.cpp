#include "wtf/tiles.hpp"

#include <set>

namespace wtf {

TileOrder tile_order(const Rect& a, const Rect& b) {
    if (a == b) return TileOrder::Equal;
    if (interval_strictly_contains(b.I, a.I) && interval_contains(a.omega, b.omega))
        return TileOrder::Less;
    if (interval_strictly_contains(a.I, b.I) && interval_contains(b.omega, a.omega))
        return TileOrder::Greater;
    return TileOrder::Incomparable;
}

bool tiles_disjoint(const Rect& a, const Rect& b) {
    return intervals_disjoint(a.I, b.I) || intervals_disjoint(a.omega, b.omega);
}

bool check_lacunar(const Quartile& p, const Quartile& pp, int i, int j) {
    if (i == j || i < 1 || i > 3 || j < 1 || j > 3)
        throw PreconditionError("check_lacunar: indices must be distinct in {1,2,3}");
    if (!tile_le(pp.subtile(i).rect(), p.subtile(i).rect())) return true;
    return tiles_disjoint(pp.subtile(j).rect(), p.subtile(j).rect());
}

std::vector<Quartile> biest_restriction(const QuartileCollection& coll,
                                        const std::vector<Quartile>& d, int i, int j) {
    for (size_t a = 0; a < d.size(); ++a)
        for (size_t b = a + 1; b < d.size(); ++b)
            if (!tiles_disjoint(d[a].subtile(j).rect(), d[b].subtile(j).rect()))
                throw PreconditionError("biest_restriction: j-tiles of D are not disjoint");
    std::vector<Quartile> out;
    for (const auto& p : coll.members)
        for (const auto& q : d)
            if (tile_le(p.subtile(i).rect(), q.subtile(j).rect())) {
                out.push_back(p);
                break;
            }
    return out;
}

bool biest_check(const QuartileCollection& coll, const std::vector<Quartile>& d, int i, int j) {
    auto restricted = biest_restriction(coll, d, i, j);
    std::set<Quartile> in_rest(restricted.begin(), restricted.end());
    for (const auto& p : coll.members)
        for (const auto& q : d) {
            Rect pi = p.subtile(i).rect(), qj = q.subtile(j).rect();
            if (tiles_disjoint(pi, qj)) continue;
            bool freq_in = interval_contains(pi.omega, qj.omega);
            if (freq_in != (in_rest.count(p) > 0)) return false;
        }
    return true;
}

QuartileCollection enumerate_quartiles(const AmbientGrid& grid) {
    QuartileCollection coll{grid, {}};
    for (int k = grid.quartile_k_min(); k <= grid.quartile_k_max(); ++k) {
        long long nspace = 1LL << (grid.M + k);
        long long nfreq = 1LL << (grid.M - k - 2);
        for (long long n = 0; n < nspace; ++n)
            for (long long l = 0; l < nfreq; ++l) coll.members.push_back({k, n, l});
    }
    return coll;
}

BitileCollection enumerate_bitiles(const AmbientGrid& grid) {
    BitileCollection coll{grid, {}};
    for (int k = grid.quartile_k_min(); k <= grid.bitile_k_max(); ++k) {
        long long nspace = 1LL << (grid.M + k);
        long long nfreq = 1LL << (grid.M - k - 1);
        for (long long n = 0; n < nspace; ++n)
            for (long long l = 0; l < nfreq; ++l) coll.members.push_back({k, n, l});
    }
    return coll;
}

std::vector<Tile> enumerate_tiles(const AmbientGrid& grid) {
    std::vector<Tile> out;
    for (int k = grid.quartile_k_min(); k <= grid.tile_k_max(); ++k) {
        long long nspace = 1LL << (grid.M + k);
        long long nfreq = 1LL << (grid.M - k);
        for (long long n = 0; n < nspace; ++n)
            for (long long l = 0; l < nfreq; ++l) out.push_back({k, n, l});
    }
    return out;
}

bool quartile_in_grid(const AmbientGrid& grid, const Quartile& q) {
    if (q.k < grid.quartile_k_min() || q.k > grid.quartile_k_max()) return false;
    return q.n >= 0 && q.n < (1LL << (grid.M + q.k)) && q.l >= 0 &&
           q.l < (1LL << (grid.M - q.k - 2));
}

}  // namespace wtf
