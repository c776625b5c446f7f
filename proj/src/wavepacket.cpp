#include "wtf/wavepacket.hpp"

#include <mutex>
#include <vector>

namespace wtf {

namespace {

// Sign pattern of w_l on equal cells of [0,1): w_{2l} = [s, s], w_{2l+1} = [s, -s].
std::vector<int> walsh_signs(long long l) {
    if (l == 0) return {1};
    std::vector<int> half = walsh_signs(l / 2);
    std::vector<int> out(half.begin(), half.end());
    int flip = (l % 2 == 0) ? 1 : -1;
    for (int s : half) out.push_back(flip * s);
    return out;
}

}  // namespace

StepFunction walsh_function(long long l, int M) {
    if (l < 0) throw PreconditionError("walsh_function: l must be nonnegative");
    if (M < 0) throw PreconditionError("walsh_function: M must be nonnegative");
    std::vector<int> signs = walsh_signs(l);
    int depth = 0;
    while ((1LL << depth) < static_cast<long long>(signs.size())) ++depth;
    std::vector<StepCell> cells;
    for (size_t i = 0; i < signs.size(); ++i)
        cells.push_back({{-depth, static_cast<long long>(i)}, QuadExt::integer(signs[i])});
    return StepFunction::from_cells(M, std::move(cells));
}

StepFunction wave_packet(const Tile& p, int M) {
    struct Key {
        int M;
        Tile t;
        bool operator<(const Key& o) const {
            return std::tie(M, t) < std::tie(o.M, o.t);
        }
    };
    static std::map<Key, StepFunction> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({M, p});
        if (it != cache.end()) return it->second;
    }
    // phi_P = 2^{k/2} w_l(2^k x - n) on I_P = [2^-k n, 2^-k (n+1))
    std::vector<int> signs = walsh_signs(p.l);
    int depth = 0;
    while ((1LL << depth) < static_cast<long long>(signs.size())) ++depth;
    QuadExt amp = QuadExt::pow2_half(p.k);
    int cell_k = -p.k - depth;  // |I_P| / #cells
    std::vector<StepCell> cells;
    for (size_t i = 0; i < signs.size(); ++i) {
        QuadExt v = signs[i] == 1 ? amp : -amp;
        cells.push_back({{cell_k, p.n * (1LL << depth) + static_cast<long long>(i)}, v});
    }
    StepFunction f = StepFunction::from_cells(M, std::move(cells));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(Key{M, p}, std::move(f)).first->second;
}

CoefficientSequence analyze(const StepFunction& f, const QuartileCollection& coll,
                            const std::set<int>& which) {
    CoefficientSequence seq;
    for (const auto& q : coll.members)
        for (int j : which)
            seq.set(q, j, inner_product(f, wave_packet(q.subtile(j), f.M())));
    return seq;
}

}  // namespace wtf
