#include "wtf/decompose.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace wtf {

namespace {

DyadicRational pow2_rat(int t) { return DyadicRational(BigInt(1), -t); }

void remove_members(QuartileCollection& coll, const std::vector<Quartile>& gone) {
    std::set<Quartile> dead(gone.begin(), gone.end());
    std::erase_if(coll.members, [&](const Quartile& q) { return dead.count(q) > 0; });
}

DyadicRational forest_length(const std::vector<SelectedTree>& forest) {
    DyadicRational s;
    for (const auto& t : forest) s = s + t.top_time.length();
    return s;
}

void fill_tree_cert(DecompCertificate& cert, const std::vector<SelectedTree>& forest,
                    long long c0, int kappa, int n) {
    cert.tree_length_sum = forest_length(forest);
    cert.tree_length_bound = DyadicRational::integer(c0) * pow2_rat(kappa * n);
    cert.trees_ok = cert.tree_length_sum <= cert.tree_length_bound;
}

// Deterministic tie-breaking by (scale, spatial index, frequency index).
bool lex_before(const Quartile& a, const Quartile& b) {
    return std::tie(a.k, a.n, a.l) < std::tie(b.k, b.n, b.l);
}

}  // namespace

DecompositionResult decomp_size(const QuartileCollection& coll, int j, const StepFunction& f,
                                int n, const QuadExt& e_squared, long long c0) {
    if (j < 1 || j > 3) throw PreconditionError("decomp_size: index out of range");
    CoefficientSequence seq = analyze(f, coll, {j});
    QuadExt pre = size_squared(seq, coll, j);
    if (pre > e_squared.mul_pow2(-2 * n))
        throw PreconditionError("decomp_size: size exceeds 2^-n energy");
    QuadExt thresh2 = e_squared.mul_pow2(-2 * n - 2);

    DecompositionResult res;
    res.n = n;
    res.remainder = coll;
    auto tops = enumerate_quartiles(coll.grid).members;

    for (int i = 1; i <= 3; ++i) {
        if (i == j) continue;
        while (true) {
            std::vector<Quartile> violators;
            for (const auto& top : tops) {
                QuadExt sum;
                for (const auto& q : res.remainder.members)
                    if (tile_le(q.subtile(i).rect(), top.subtile(i).rect()))
                        sum += seq.get(q, j).square();
                if (sum > thresh2.mul_pow2(-top.k)) violators.push_back(top);
            }
            if (violators.empty()) break;
            // prefer the extremal frequency center: minimal when i comes after
            // j in the subtile ordering, maximal otherwise
            bool want_min = i > j;
            const Quartile* sel = &violators[0];
            for (const auto& v : violators) {
                int cmp = compare(v.freq().center(), sel->freq().center());
                if ((want_min && cmp < 0) || (!want_min && cmp > 0) ||
                    (cmp == 0 && lex_before(v, *sel)))
                    sel = &v;
            }
            Tree ti = maximal_tree(*sel, res.remainder, i);
            remove_members(res.remainder, ti.members);
            res.forest.push_back({sel->time(), sel->freq(), i, ti.members});
            Tree tj = maximal_tree(*sel, res.remainder, j);
            if (!tj.members.empty()) {
                remove_members(res.remainder, tj.members);
                res.forest.push_back({sel->time(), sel->freq(), j, tj.members});
            }
        }
    }

    DecompCertificate& cert = res.certified;
    cert.squared = true;
    cert.remainder_measure = size_squared(seq, res.remainder, j);
    cert.threshold = thresh2;
    cert.size_ok = cert.remainder_measure <= cert.threshold;
    fill_tree_cert(cert, res.forest, c0, 2, n);
    return res;
}

namespace {

// Shared selection for the witness-bitile decompositions: find the heavy
// members, take the maximal witnesses, and peel the trees under them.
DecompositionResult witness_decomp(
    const QuartileCollection& coll, int n, const QuadExt& e_linear, long long c0,
    const std::function<QuadExt(const Rect&)>& average,
    const std::function<std::vector<Rect>(const Quartile&)>& candidate_tops,
    const std::function<QuadExt(const QuartileCollection&)>& measure_size) {
    QuadExt pre = measure_size(coll);
    if (pre > e_linear.mul_pow2(-n))
        throw PreconditionError("decomposition: size exceeds 2^-n energy");
    QuadExt thresh = e_linear.mul_pow2(-n - 1);

    DecompositionResult res;
    res.n = n;
    res.remainder = coll;

    // best witness per heavy member
    std::vector<Rect> witnesses;
    for (const auto& q : coll.members) {
        std::vector<Rect> cands = candidate_tops(q);
        const Rect* best = nullptr;
        QuadExt best_avg;
        for (const auto& w : cands) {
            QuadExt avg = average(w);
            if (avg > thresh && (best == nullptr || avg > best_avg)) {
                best = &w;
                best_avg = avg;
            }
        }
        if (best) witnesses.push_back(*best);
    }
    // keep the maximal witnesses; they are pairwise disjoint bitiles
    std::vector<Rect> maximal;
    for (const auto& w : witnesses) {
        bool dominated = false;
        for (const auto& v : witnesses)
            if (!(v == w) && tile_lt(w, v)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            bool dup = false;
            for (const auto& m : maximal) dup = dup || m == w;
            if (!dup) maximal.push_back(w);
        }
    }
    std::sort(maximal.begin(), maximal.end(), [](const Rect& a, const Rect& b) {
        return std::tie(a.I.k, a.I.n, a.omega.n) < std::tie(b.I.k, b.I.n, b.omega.n);
    });
    for (const auto& w : maximal) {
        std::vector<Quartile> members;
        for (const auto& q : res.remainder.members)
            if (tile_le(q.subbitile().rect(), w)) members.push_back(q);
        if (members.empty()) continue;
        remove_members(res.remainder, members);
        res.forest.push_back({w.I, w.omega, 0, members});
    }

    DecompCertificate& cert = res.certified;
    cert.squared = false;
    cert.remainder_measure = measure_size(res.remainder);
    cert.threshold = thresh;
    cert.size_ok = cert.remainder_measure <= cert.threshold;
    fill_tree_cert(cert, res.forest, c0, 1, n);
    return res;
}

}  // namespace

DecompositionResult decomp_bsize(const QuartileCollection& coll, const StepFunction& g,
                                 const StepFunction& nfun, int n, const QuadExt& e_linear,
                                 long long c0) {
    BSizeEvaluator eval(g, nfun);
    auto bitiles = enumerate_bitiles(coll.grid).members;
    std::vector<Rect> rects;
    for (const auto& b : bitiles) rects.push_back(b.rect());
    return witness_decomp(
        coll, n, e_linear, c0, [&](const Rect& r) { return eval.average(r); },
        [&](const Quartile& q) {
            std::vector<Rect> out;
            for (const auto& r : rects)
                if (tile_lt(q.subbitile().rect(), r)) out.push_back(r);
            return out;
        },
        [&](const QuartileCollection& c) { return b_size(g, nfun, c); });
}

DecompositionResult decomp_prime(const QuartileCollection& qcoll,
                                 const QuartileCollection& pcoll, const StepFunction& f1,
                                 const StepFunction& f3, const StepFunction& nfun, int n,
                                 const QuadExt& e_linear, long long c0) {
    PrimeSizeEvaluator eval(f1, f3, nfun, pcoll);
    auto quartiles = enumerate_quartiles(qcoll.grid).members;
    std::vector<Rect> rects;
    for (const auto& q : quartiles) rects.push_back(q.subbitile().rect());
    return witness_decomp(
        qcoll, n, e_linear, c0, [&](const Rect& r) { return eval.average(r); },
        [&](const Quartile& q) {
            std::vector<Rect> out;
            for (const auto& r : rects)
                if (tile_lt(q.subbitile().rect(), r)) out.push_back(r);
            return out;
        },
        [&](const QuartileCollection& c) { return size_prime(f1, f3, nfun, c, pcoll); });
}

namespace {

int scale_parity(const Quartile& q) { return ((q.k % 2) + 2) % 2; }

// Strict in-collection tree value driving the double-prime selection:
// max over tops Q0 in the collection and i in {2,3} of
// ||F_{ {Q : Q_i < Q0_i} }||_1 / |I_{Q0}|, per parity class when split.
QuadExt dp_strict_size(const StepFunction& g, const StepFunction& h,
                       const QuartileCollection& qcoll, const QuartileCollection& pcoll,
                       bool parity_split) {
    QuadExt best;
    for (int parity = 0; parity < (parity_split ? 2 : 1); ++parity) {
        QuartileCollection fam{qcoll.grid, {}};
        for (const auto& q : qcoll.members)
            if (!parity_split || scale_parity(q) == parity) fam.members.push_back(q);
        for (const auto& q0 : fam.members)
            for (int i = 2; i <= 3; ++i) {
                std::vector<Quartile> strict;
                for (const auto& q : fam.members)
                    if (tile_lt(q.subtile(i).rect(), q0.subtile(i).rect())) strict.push_back(q);
                if (strict.empty()) continue;
                QuadExt l1 = l1_norm_exact(dp_tree_function(strict, g, h, pcoll));
                best = max(best, l1.mul_pow2(q0.k));
            }
    }
    return best;
}

}  // namespace

DecompositionResult decomp_doubleprime(const QuartileCollection& qcoll,
                                       const QuartileCollection& pcoll, const StepFunction& g,
                                       const StepFunction& h, int n, const QuadExt& e_squared,
                                       long long c0, bool parity_split) {
    QuadExt pre = dp_strict_size(g, h, qcoll, pcoll, parity_split);
    if (pre.square() > e_squared.mul_pow2(-2 * n))
        throw PreconditionError("decomp_doubleprime: size exceeds 2^-n energy");

    DecompositionResult res;
    res.n = n;
    res.remainder.grid = qcoll.grid;
    res.certified.squared = false;

    // Selected tree bookkeeping for the geometric assertions, keyed (parity, i).
    struct SelGroup {
        std::vector<std::vector<Quartile>> member_sets;
        std::vector<std::vector<Quartile>> tilde_sets;
    };
    std::map<std::pair<int, int>, SelGroup> groups;

    if (e_squared.is_zero()) {
        res.remainder = qcoll;
    } else {
        for (int parity = 0; parity < (parity_split ? 2 : 1); ++parity) {
            QuartileCollection work{qcoll.grid, {}};
            for (const auto& q : qcoll.members)
                if (!parity_split || scale_parity(q) == parity) work.members.push_back(q);

            for (int i = 2; i <= 3; ++i) {
                while (true) {
                    // tops obeying the selection inequality
                    std::vector<Quartile> cands;
                    std::map<Quartile, std::vector<Quartile>> cand_tree;
                    for (const auto& q0 : work.members) {
                        std::vector<Quartile> strict;
                        for (const auto& q : work.members)
                            if (tile_lt(q.subtile(i).rect(), q0.subtile(i).rect()))
                                strict.push_back(q);
                        if (strict.empty()) continue;
                        QuadExt l1 = l1_norm_exact(dp_tree_function(strict, g, h, pcoll));
                        // squared compare of ||F||_1 >= 2^{-n-3/2} E |I_{Q0}|
                        QuadExt rhs = e_squared.mul_pow2(-2 * n - 3 + 2 * q0.k);
                        if (l1.square() >= rhs) {
                            cands.push_back(q0);
                            cand_tree[q0] = strict;
                        }
                    }
                    if (cands.empty()) break;
                    // Q0_i maximal in the tile order, then minimal frequency
                    // center, then lexicographic
                    std::vector<Quartile> maximal;
                    for (const auto& c : cands) {
                        bool dominated = false;
                        for (const auto& d : cands)
                            if (tile_lt(c.subtile(i).rect(), d.subtile(i).rect()))
                                dominated = true;
                        if (!dominated) maximal.push_back(c);
                    }
                    const Quartile* sel = &maximal[0];
                    for (const auto& c : maximal) {
                        int cmp = compare(c.freq().center(), sel->freq().center());
                        if (cmp < 0 || (cmp == 0 && lex_before(c, *sel))) sel = &c;
                    }
                    Quartile q0 = *sel;
                    std::vector<Quartile> itree = cand_tree[q0];
                    remove_members(work, itree);
                    res.forest.push_back({q0.time(), q0.freq(), i, itree});
                    auto& grp = groups[{parity, i}];
                    grp.member_sets.push_back(itree);
                    grp.tilde_sets.push_back(tilde_tree(itree, pcoll));
                    // companion 1-tree with the same top
                    std::vector<Quartile> onetree;
                    for (const auto& q : work.members)
                        if (tile_lt(q.subtile(1).rect(), q0.subtile(1).rect()))
                            onetree.push_back(q);
                    if (!onetree.empty()) {
                        remove_members(work, onetree);
                        res.forest.push_back({q0.time(), q0.freq(), 1, onetree});
                    }
                }
            }
            for (const auto& q : work.members) res.remainder.members.push_back(q);
        }
        std::sort(res.remainder.members.begin(), res.remainder.members.end());
    }

    // key geometric observation: within each group the first subtiles of the
    // selected trees, and of their tilde sets, are pairwise disjoint
    bool disjoint_ok = true;
    for (const auto& [key, grp] : groups) {
        (void)key;
        std::vector<Quartile> all_members, all_tilde;
        for (size_t a = 0; a < grp.member_sets.size(); ++a) {
            all_members.insert(all_members.end(), grp.member_sets[a].begin(),
                               grp.member_sets[a].end());
            for (size_t b = a + 1; b < grp.tilde_sets.size(); ++b)
                for (const auto& x : grp.tilde_sets[a])
                    for (const auto& y : grp.tilde_sets[b])
                        if (x == y) disjoint_ok = false;
            all_tilde.insert(all_tilde.end(), grp.tilde_sets[a].begin(),
                             grp.tilde_sets[a].end());
        }
        for (size_t a = 0; a < all_members.size() && disjoint_ok; ++a)
            for (size_t b = a + 1; b < all_members.size(); ++b)
                if (!tiles_disjoint(all_members[a].subtile(1).rect(),
                                    all_members[b].subtile(1).rect()))
                    disjoint_ok = false;
        std::sort(all_tilde.begin(), all_tilde.end());
        all_tilde.erase(std::unique(all_tilde.begin(), all_tilde.end()), all_tilde.end());
        for (size_t a = 0; a < all_tilde.size() && disjoint_ok; ++a)
            for (size_t b = a + 1; b < all_tilde.size(); ++b)
                if (!tiles_disjoint(all_tilde[a].subtile(1).rect(),
                                    all_tilde[b].subtile(1).rect()))
                    disjoint_ok = false;
    }

    DecompCertificate& cert = res.certified;
    cert.disjointness_ok = disjoint_ok;
    cert.remainder_measure = dp_strict_size(g, h, res.remainder, pcoll, parity_split);
    cert.threshold = QuadExt();  // linear 2^{-n-1} E, compared via squares
    cert.size_ok = cert.remainder_measure.square() <= e_squared.mul_pow2(-2 * n - 2);
    cert.secondary_measure =
        size_doubleprime(g, h, res.remainder, pcoll, TreeSupMode::MaximalTree);
    cert.secondary_ok = cert.secondary_measure.square() <= e_squared.mul_pow2(-2 * n - 2);
    fill_tree_cert(cert, res.forest, c0, 2, n);
    return res;
}

namespace {

struct PartitionHooks {
    bool squared;  // measures and energy are squared quantities
    std::function<QuadExt(const QuartileCollection&)> measure;
    std::function<DecompositionResult(const QuartileCollection&, int)> decompose;
    QuadExt energy;
    int kappa;
    long long c0;
};

int largest_valid_n(const QuadExt& s, const QuadExt& e, bool squared) {
    // largest n with s <= e * 2^{-n} (squared quantities compare with 4^{-n})
    int step = squared ? 2 : 1;
    int n = 0;
    if (s <= e.mul_pow2(-step * n)) {
        while (s <= e.mul_pow2(-step * (n + 1))) ++n;
    } else {
        while (s > e.mul_pow2(-step * n)) --n;
    }
    return n;
}

PartitionResult partition_driver(const QuartileCollection& input, const PartitionHooks& hooks) {
    PartitionResult out;
    if (input.members.empty()) return out;
    QuadExt s_global = hooks.measure(input);

    QuartileCollection rest = input;
    bool have_prev = false;
    int prev_n = 0;
    while (!rest.members.empty()) {
        QuadExt s = hooks.measure(rest);
        if (s.is_zero()) {
            // terminal level: cover the zero-size remainder by singleton trees
            PartitionLevel lvl;
            lvl.members = rest;
            for (const auto& q : rest.members)
                lvl.forest.push_back({q.time(), q.freq(), 0, {q}});
            lvl.tree_length_sum = forest_length(lvl.forest);
            int n = have_prev ? prev_n + 1 : 0;
            while (DyadicRational::integer(hooks.c0) * pow2_rat(hooks.kappa * n) <
                   lvl.tree_length_sum)
                ++n;
            lvl.n = n;
            lvl.tree_length_bound =
                DyadicRational::integer(hooks.c0) * pow2_rat(hooks.kappa * n);
            lvl.trees_ok = lvl.tree_length_sum <= lvl.tree_length_bound;
            lvl.level_measure = QuadExt();
            lvl.level_bound =
                min(hooks.energy.mul_pow2(-(hooks.squared ? 2 : 1) * n), s_global);
            lvl.level_ok = true;
            out.levels.push_back(std::move(lvl));
            return out;
        }
        if (hooks.energy.is_zero())
            throw PreconditionError("full_partition: zero reference energy with positive size");
        int n = largest_valid_n(s, hooks.energy, hooks.squared);
        if (have_prev && n <= prev_n)
            throw std::logic_error("full_partition: level index failed to advance");
        DecompositionResult dr = hooks.decompose(rest, n);
        PartitionLevel lvl;
        lvl.n = n;
        lvl.forest = dr.forest;
        lvl.members.grid = rest.grid;
        for (const auto& t : dr.forest)
            lvl.members.members.insert(lvl.members.members.end(), t.members.begin(),
                                       t.members.end());
        std::sort(lvl.members.members.begin(), lvl.members.members.end());
        lvl.level_measure = hooks.measure(lvl.members);
        lvl.level_bound = min(hooks.energy.mul_pow2(-(hooks.squared ? 2 : 1) * n), s_global);
        lvl.level_ok = lvl.level_measure <= lvl.level_bound;
        lvl.tree_length_sum = dr.certified.tree_length_sum;
        lvl.tree_length_bound = dr.certified.tree_length_bound;
        lvl.trees_ok = dr.certified.trees_ok;
        out.levels.push_back(std::move(lvl));
        rest = dr.remainder;
        prev_n = n;
        have_prev = true;
    }
    return out;
}

}  // namespace

PartitionResult full_partition_size(const QuartileCollection& coll, int j, const StepFunction& f,
                                    long long c0) {
    CoefficientSequence seq = analyze(f, coll, {j});
    PartitionHooks hooks;
    hooks.squared = true;
    hooks.measure = [seq, j](const QuartileCollection& c) { return size_squared(seq, c, j); };
    hooks.energy = energy_squared(seq, coll, j);
    hooks.kappa = 2;
    hooks.c0 = c0;
    QuadExt e = hooks.energy;
    hooks.decompose = [&coll, j, &f, e, c0](const QuartileCollection& c, int n) {
        (void)coll;
        return decomp_size(c, j, f, n, e, c0);
    };
    return partition_driver(coll, hooks);
}

PartitionResult full_partition_bsize(const QuartileCollection& coll, const StepFunction& g,
                                     const StepFunction& nfun, long long c0) {
    PartitionHooks hooks;
    hooks.squared = false;
    hooks.measure = [&g, &nfun](const QuartileCollection& c) { return b_size(g, nfun, c); };
    hooks.energy = b_energy(g, nfun, coll);
    hooks.kappa = 1;
    hooks.c0 = c0;
    QuadExt e = hooks.energy;
    hooks.decompose = [&g, &nfun, e, c0](const QuartileCollection& c, int n) {
        return decomp_bsize(c, g, nfun, n, e, c0);
    };
    return partition_driver(coll, hooks);
}

PartitionResult full_partition_prime(const QuartileCollection& qcoll,
                                     const QuartileCollection& pcoll, const StepFunction& f1,
                                     const StepFunction& f3, const StepFunction& nfun,
                                     long long c0) {
    PartitionHooks hooks;
    hooks.squared = false;
    hooks.measure = [&](const QuartileCollection& c) {
        return size_prime(f1, f3, nfun, c, pcoll);
    };
    hooks.energy = energy_prime(f1, f3, nfun, qcoll, pcoll);
    hooks.kappa = 1;
    hooks.c0 = c0;
    QuadExt e = hooks.energy;
    hooks.decompose = [&pcoll, &f1, &f3, &nfun, e, c0](const QuartileCollection& c, int n) {
        return decomp_prime(c, pcoll, f1, f3, nfun, n, e, c0);
    };
    return partition_driver(qcoll, hooks);
}

PartitionResult full_partition_doubleprime(const QuartileCollection& qcoll,
                                           const QuartileCollection& pcoll,
                                           const StepFunction& g, const StepFunction& h,
                                           long long c0, bool parity_split) {
    PartitionHooks hooks;
    hooks.squared = true;
    hooks.measure = [&g, &h, &pcoll, parity_split](const QuartileCollection& c) {
        return dp_strict_size(g, h, c, pcoll, parity_split).square();
    };
    hooks.energy = energy_doubleprime_squared(g, h, qcoll, pcoll, TreeSupMode::MaximalTree);
    hooks.kappa = 2;
    hooks.c0 = c0;
    QuadExt e2 = hooks.energy;
    hooks.decompose = [&pcoll, &g, &h, e2, c0, parity_split](const QuartileCollection& c,
                                                             int n) {
        return decomp_doubleprime(c, pcoll, g, h, n, e2, c0, parity_split);
    };
    return partition_driver(qcoll, hooks);
}

}  // namespace wtf
