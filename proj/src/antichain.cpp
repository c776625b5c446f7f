#include "wtf/antichain.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace wtf {

namespace {

// ---- brute force: max-weight independent set in the disjointness graph ----

struct BruteState {
    const AntichainProblem* prob;
    std::vector<uint32_t> conflict;  // conflict[i]: items not disjoint from i
    QuadExt best;
    uint32_t best_set = 0;
};

void brute_rec(BruteState& st, size_t i, uint32_t chosen, uint32_t banned, const QuadExt& acc,
               const QuadExt& remaining) {
    size_t n = st.prob->items.size();
    if (acc > st.best) {
        st.best = acc;
        st.best_set = chosen;
    }
    if (i == n || !((acc + remaining) > st.best)) return;
    QuadExt rest = remaining - st.prob->weights[i];
    if (!(banned & (1u << i)))
        brute_rec(st, i + 1, chosen | (1u << i), banned | st.conflict[i],
                  acc + st.prob->weights[i], rest);
    brute_rec(st, i + 1, chosen, banned, acc, rest);
}

AntichainResult solve_brute(const AntichainProblem& prob) {
    size_t n = prob.items.size();
    if (n > 24) throw PreconditionError("max_weight_antichain: brute mode limited to 24 items");
    BruteState st;
    st.prob = &prob;
    st.conflict.assign(n, 0);
    QuadExt total;
    for (size_t i = 0; i < n; ++i) {
        total += prob.weights[i];
        for (size_t j = 0; j < n; ++j)
            if (i != j && !tiles_disjoint(prob.items[i], prob.items[j]))
                st.conflict[i] |= 1u << j;
    }
    brute_rec(st, 0, 0, 0, QuadExt(), total);
    AntichainResult res;
    res.value = st.best;
    for (size_t i = 0; i < n; ++i)
        if (st.best_set & (1u << i)) res.witness.push_back(i);
    return res;
}

// ---- min cut: minimum flow with lower bounds on the comparability DAG ----
//
// Chains become s -> x_in -> x_out -> ... -> t paths; the split edge of x
// carries demand w_x. The minimum feasible flow equals the LP value of the
// max-weight antichain, and the tight split edges across the final residual
// cut form a witness.

struct Arc {
    int to;
    bool unbounded;
    QuadExt resid;
    size_t rev;
};

struct FlowGraph {
    std::vector<std::vector<Arc>> adj;

    void add(int u, int v, const QuadExt& cap, bool unbounded) {
        adj[u].push_back({v, unbounded, cap, adj[v].size()});
        adj[v].push_back({u, false, QuadExt(), adj[u].size() - 1});
    }
    bool has_resid(const Arc& a) const { return a.unbounded || a.resid.sign() > 0; }
};

// Dinic; exact capacities are fine, the phase bound is structural.
QuadExt dinic(FlowGraph& g, int s, int t) {
    QuadExt total;
    int n = static_cast<int>(g.adj.size());
    std::vector<int> level(n), it(n);
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const Arc& a : g.adj[u])
                if (level[a.to] < 0 && g.has_resid(a)) {
                    level[a.to] = level[u] + 1;
                    q.push(a.to);
                }
        }
        return level[t] >= 0;
    };
    std::function<QuadExt(int, const QuadExt&, bool)> dfs =
        [&](int u, const QuadExt& pushed, bool have_cap) -> QuadExt {
        if (u == t) return pushed;
        for (int& i = it[u]; i < static_cast<int>(g.adj[u].size()); ++i) {
            Arc& a = g.adj[u][i];
            if (!g.has_resid(a) || level[a.to] != level[u] + 1) continue;
            QuadExt next = pushed;
            bool next_have = have_cap;
            if (!a.unbounded) {
                next = have_cap ? min(pushed, a.resid) : a.resid;
                next_have = true;
            }
            QuadExt got = dfs(a.to, next, next_have);
            if (got.sign() > 0) {
                if (!a.unbounded) a.resid -= got;
                g.adj[a.to][a.rev].resid += got;
                return got;
            }
        }
        return QuadExt();
    };
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        while (true) {
            QuadExt pushed = dfs(s, QuadExt(), false);
            if (pushed.sign() <= 0) break;
            total += pushed;
        }
    }
    return total;
}

AntichainResult solve_mincut(const AntichainProblem& prob) {
    size_t n = prob.items.size();
    int s = 0, t = 1;
    auto x_in = [](size_t i) { return static_cast<int>(2 + 2 * i); };
    auto x_out = [](size_t i) { return static_cast<int>(3 + 2 * i); };

    // Residual graph of the feasible flow routing w_i along s -> i_in -> i_out -> t.
    // Reducing from t back to s: an original edge (u,v) with flow f and demand d
    // yields a bounded arc (v,u) of capacity f - d plus an unbounded arc (u,v).
    FlowGraph g;
    g.adj.resize(2 + 2 * n);
    QuadExt total;
    for (size_t i = 0; i < n; ++i) {
        total += prob.weights[i];
        g.add(x_in(i), s, prob.weights[i], false);   // undo s -> x_in
        g.add(s, x_in(i), QuadExt(), true);
        g.add(x_out(i), x_in(i), QuadExt(), false);  // split edge is tight
        g.add(x_in(i), x_out(i), QuadExt(), true);
        g.add(t, x_out(i), prob.weights[i], false);  // undo x_out -> t
        g.add(x_out(i), t, QuadExt(), true);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Rect &a = prob.items[i], &b = prob.items[j];
            if (tiles_disjoint(a, b)) continue;
            if (tile_lt(a, b) || (a == b && i < j)) g.add(x_out(i), x_in(j), QuadExt(), true);
        }

    QuadExt reduced = dinic(g, t, s);

    std::vector<char> reach(g.adj.size(), 0);
    std::queue<int> q;
    reach[t] = 1;
    q.push(t);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const Arc& a : g.adj[u])
            if (!reach[a.to] && g.has_resid(a)) {
                reach[a.to] = 1;
                q.push(a.to);
            }
    }
    AntichainResult res;
    res.value = total - reduced;
    QuadExt check;
    for (size_t i = 0; i < n; ++i)
        if (reach[x_out(i)] && !reach[x_in(i)]) {
            res.witness.push_back(i);
            check += prob.weights[i];
        }
    if (check != res.value)
        throw std::logic_error("max_weight_antichain: witness does not match min flow value");
    return res;
}

}  // namespace

AntichainResult max_weight_antichain(const AntichainProblem& prob, AntichainMode mode) {
    if (prob.items.size() != prob.weights.size())
        throw PreconditionError("max_weight_antichain: items/weights size mismatch");
    for (const auto& w : prob.weights)
        if (w.sign() < 0) throw PreconditionError("max_weight_antichain: negative weight");
    AntichainResult res = mode == AntichainMode::Brute ? solve_brute(prob) : solve_mincut(prob);
    for (size_t a = 0; a < res.witness.size(); ++a)
        for (size_t b = a + 1; b < res.witness.size(); ++b)
            if (!tiles_disjoint(prob.items[res.witness[a]], prob.items[res.witness[b]]))
                throw std::logic_error("max_weight_antichain: witness not an antichain");
    return res;
}

}  // namespace wtf
