#pragma once

#include "wtf/numbers.hpp"
#include "wtf/tiles.hpp"

#include <cstddef>
#include <vector>

namespace wtf {

/// Max-weight antichain instance: pick pairwise-disjoint (equivalently,
/// pairwise-incomparable) rectangles maximizing the weight sum.
struct AntichainProblem {
    std::vector<Rect> items;
    std::vector<QuadExt> weights;  // nonnegative, aligned with items
};

enum class AntichainMode { Brute, MinCut };

struct AntichainResult {
    QuadExt value;
    std::vector<size_t> witness;  // item indices, pairwise disjoint
};

/// Brute mode: branch-and-bound over subsets (exact, items <= 24 or so).
/// MinCut mode: exact polynomial solver via the minimum-flow formulation of
/// the weighted antichain LP; both modes agree.
AntichainResult max_weight_antichain(const AntichainProblem& prob,
                                     AntichainMode mode = AntichainMode::MinCut);

}  // namespace wtf
