#pragma once

#include "wtf/step.hpp"
#include "wtf/tiles.hpp"

#include <map>
#include <set>
#include <utility>

namespace wtf {

/// Coefficients indexed by (quartile, subtile index); missing key means 0.
class CoefficientSequence {
public:
    using Key = std::pair<Quartile, int>;

    void set(const Quartile& q, int j, QuadExt v) {
        if (v.is_zero())
            entries_.erase({q, j});
        else
            entries_[{q, j}] = std::move(v);
    }
    QuadExt get(const Quartile& q, int j) const {
        auto it = entries_.find({q, j});
        return it == entries_.end() ? QuadExt() : it->second;
    }
    const std::map<Key, QuadExt>& entries() const { return entries_; }

private:
    std::map<Key, QuadExt> entries_;
};

/// l-th Walsh function: w_0 = chi_[0,1), w_2l = w_l(2x) + w_l(2x-1),
/// w_{2l+1} = w_l(2x) - w_l(2x-1). Supported on [0,1), values +-1.
StepFunction walsh_function(long long l, int M = 0);

/// L2-normalized Walsh wave packet of an area-one tile:
/// phi_P(x) = 2^{k/2} w_l(2^k x - n). Memoized per (M, tile).
StepFunction wave_packet(const Tile& p, int M);

/// Exact coefficients <f, phi_{P_j}> for every member and every requested j.
CoefficientSequence analyze(const StepFunction& f, const QuartileCollection& coll,
                            const std::set<int>& which = {1, 2, 3});

}  // namespace wtf
