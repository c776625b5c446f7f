#include "wtf/treenorms.hpp"

#include <algorithm>
#include <map>

namespace wtf {

Tree maximal_tree(const Quartile& top, const QuartileCollection& coll, int i) {
    if (i < 1 || i > 3) throw PreconditionError("maximal_tree: tree index out of range");
    Tree t{top, i, {}};
    for (const auto& p : coll.members)
        if (tile_le(p.subtile(i).rect(), top.subtile(i).rect())) t.members.push_back(p);
    return t;
}

bool is_valid_tree(const Tree& t) {
    for (const auto& p : t.members)
        if (!tile_le(p.subtile(t.type_i).rect(), t.top.subtile(t.type_i).rect())) return false;
    return true;
}

QuadExt size_squared(const CoefficientSequence& seq, const QuartileCollection& coll, int j) {
    if (j < 1 || j > 3) throw PreconditionError("size_squared: index out of range");
    std::vector<QuadExt> asq;
    asq.reserve(coll.members.size());
    for (const auto& p : coll.members) asq.push_back(seq.get(p, j).square());
    QuadExt best;
    for (const auto& top : enumerate_quartiles(coll.grid).members) {
        for (int i = 1; i <= 3; ++i) {
            if (i == j) continue;
            QuadExt sum;
            for (size_t idx = 0; idx < coll.members.size(); ++idx)
                if (tile_le(coll.members[idx].subtile(i).rect(), top.subtile(i).rect()))
                    sum += asq[idx];
            best = max(best, sum.mul_pow2(top.k));  // divide by |I_top| = 2^{-k}
        }
    }
    return best;
}

QuadExt energy_squared(const CoefficientSequence& seq, const QuartileCollection& coll, int j,
                       AntichainMode mode) {
    if (j < 1 || j > 3) throw PreconditionError("energy_squared: index out of range");
    AntichainProblem prob;
    for (const auto& p : coll.members) {
        prob.items.push_back(p.subtile(j).rect());
        prob.weights.push_back(seq.get(p, j).square());
    }
    return max_weight_antichain(prob, mode).value;
}

BSizeEvaluator::BSizeEvaluator(const StepFunction& g, const StepFunction& n)
    : absg_(step_abs(g)), n_(n) {}

const StepFunction& BSizeEvaluator::chi(const DyadicInterval& omega) {
    auto it = chi_.find(omega);
    if (it != chi_.end()) return it->second;
    return chi_.emplace(omega, chi_value_in(n_, omega)).first->second;
}

QuadExt BSizeEvaluator::integral(const Rect& bitile_rect) {
    return integrate(absg_ * chi(bitile_rect.omega), bitile_rect.I);
}

QuadExt BSizeEvaluator::average(const Rect& bitile_rect) {
    return integral(bitile_rect).mul_pow2(-bitile_rect.I.k);
}

QuadExt b_size(const StepFunction& g, const StepFunction& n, const QuartileCollection& coll) {
    BSizeEvaluator eval(g, n);
    QuadExt best;
    for (const auto& bt : enumerate_bitiles(coll.grid).members) {
        Rect br = bt.rect();
        bool qualifies = false;
        for (const auto& q : coll.members)
            if (tile_lt(q.subbitile().rect(), br)) {
                qualifies = true;
                break;
            }
        if (!qualifies) continue;
        best = max(best, eval.average(br));
    }
    return best;
}

QuadExt b_energy(const StepFunction& g, const StepFunction& n, const QuartileCollection& coll,
                 AntichainMode mode) {
    BSizeEvaluator eval(g, n);
    AntichainProblem prob;
    for (const auto& q : coll.members) {
        Rect br = q.subbitile().rect();
        prob.items.push_back(br);
        prob.weights.push_back(eval.integral(br));
    }
    return max_weight_antichain(prob, mode).value;
}

PrimeSizeEvaluator::PrimeSizeEvaluator(const StepFunction& f1, const StepFunction& f3,
                                       const StepFunction& n, const QuartileCollection& pcoll)
    : f1_(f1), f3_(f3), n_(n), pcoll_(pcoll) {}

const StepFunction& PrimeSizeEvaluator::cc(const DyadicInterval& window) {
    auto it = cc_.find(window);
    if (it != cc_.end()) return it->second;
    BitileCollection filtered{pcoll_.grid, {}};
    for (const auto& p : pcoll_.members)
        if (interval_contains(p.subtile(2).freq(), window))
            filtered.members.push_back(p.subbitile());
    return cc_.emplace(window, carleson_apply(filtered, f1_, n_)).first->second;
}

const StepFunction& PrimeSizeEvaluator::chi(const DyadicInterval& omega) {
    auto it = chi_.find(omega);
    if (it != chi_.end()) return it->second;
    return chi_.emplace(omega, chi_value_in(n_, omega)).first->second;
}

// omega of the rectangle is the sub-bitile interval; its lower half drives Cc
StepFunction PrimeSizeEvaluator::integrand(const Rect& bitile_rect) {
    return step_abs(cc(bitile_rect.omega.left_child()) * f3_) * chi(bitile_rect.omega);
}

QuadExt PrimeSizeEvaluator::integral(const Rect& bitile_rect) {
    return integrate(integrand(bitile_rect), bitile_rect.I);
}

QuadExt PrimeSizeEvaluator::average(const Rect& bitile_rect) {
    return integral(bitile_rect).mul_pow2(-bitile_rect.I.k);
}

QuadExt size_prime(const StepFunction& f1, const StepFunction& f3, const StepFunction& n,
                   const QuartileCollection& qcoll, const QuartileCollection& pcoll) {
    PrimeSizeEvaluator integrand(f1, f3, n, pcoll);
    QuadExt best;
    for (const auto& qp : enumerate_quartiles(qcoll.grid).members) {
        Rect br = qp.subbitile().rect();
        bool qualifies = false;
        for (const auto& q : qcoll.members)
            if (tile_lt(q.subbitile().rect(), br)) {
                qualifies = true;
                break;
            }
        if (!qualifies) continue;
        best = max(best, integrand.average(br));
    }
    return best;
}

QuadExt energy_prime(const StepFunction& f1, const StepFunction& f3, const StepFunction& n,
                     const QuartileCollection& qcoll, const QuartileCollection& pcoll,
                     AntichainMode mode) {
    PrimeSizeEvaluator integrand(f1, f3, n, pcoll);
    AntichainProblem prob;
    for (const auto& q : qcoll.members) {
        Rect br = q.subbitile().rect();
        prob.items.push_back(br);
        prob.weights.push_back(integrand.integral(br));
    }
    return max_weight_antichain(prob, mode).value;
}

std::vector<Quartile> tilde_tree(const std::vector<Quartile>& members,
                                 const QuartileCollection& pcoll) {
    std::vector<Quartile> out;
    for (const auto& p : pcoll.members) {
        Rect p2 = p.subtile(2).rect();
        bool lower = false, upper = false;
        for (const auto& q : members) {
            Rect q2 = q.subtile(2).rect();
            lower = lower || tile_le(q2, p2);
            upper = upper || tile_le(p2, q2);
            if (lower && upper) break;
        }
        if (lower && upper) out.push_back(p);
    }
    return out;
}

StepFunction dp_tree_function(const std::vector<Quartile>& members, const StepFunction& g,
                              const StepFunction& h, const QuartileCollection& pcoll) {
    int m = g.M();
    std::vector<Quartile> tilde = tilde_tree(members, pcoll);
    StepFunction out = StepFunction::zero(m);
    for (const auto& q : members) {
        StepFunction phi_q = wave_packet(q.subtile(1), m);
        QuadExt cg = inner_product(g, phi_q);
        if (cg.is_zero()) continue;
        StepFunction inner_sum = StepFunction::zero(m);
        for (const auto& p : tilde) {
            if (!interval_contains(p.subtile(2).freq(), q.subtile(1).freq())) continue;
            StepFunction phi_p = wave_packet(p.subtile(1), m);
            QuadExt ch = inner_product(h, phi_p);
            if (!ch.is_zero()) inner_sum = inner_sum + step_scale(phi_p, ch);
        }
        if (inner_sum.is_zero()) continue;
        out = out + step_scale(phi_q * inner_sum, cg);
    }
    return out;
}

namespace {

// Mask-based engine for the exhaustive double-prime sups (collections <= 16/64).
struct DpExhaustive {
    const QuartileCollection& qcoll;
    const QuartileCollection& pcoll;
    const StepFunction& g;
    const StepFunction& h;
    std::vector<Quartile> tops;
    // per member and tree index i in {2,3}: bitmask over candidate tops
    std::vector<std::array<std::vector<uint64_t>, 2>> top_ok;
    std::vector<uint64_t> le2, ge2;  // masks over pcoll per q member

    DpExhaustive(const QuartileCollection& qc, const QuartileCollection& pc,
                 const StepFunction& gg, const StepFunction& hh)
        : qcoll(qc), pcoll(pc), g(gg), h(hh) {
        if (qcoll.members.size() > 16)
            throw PreconditionError("double-prime exhaustive mode: collection capped at 16");
        if (pcoll.members.size() > 64)
            throw PreconditionError("double-prime exhaustive mode: pcoll capped at 64");
        tops = enumerate_quartiles(qcoll.grid).members;
        size_t words = (tops.size() + 63) / 64;
        top_ok.resize(qcoll.members.size());
        for (size_t qi = 0; qi < qcoll.members.size(); ++qi)
            for (int ii = 0; ii < 2; ++ii) {
                top_ok[qi][ii].assign(words, 0);
                for (size_t ti = 0; ti < tops.size(); ++ti)
                    if (tile_le(qcoll.members[qi].subtile(ii + 2).rect(),
                                tops[ti].subtile(ii + 2).rect()))
                        top_ok[qi][ii][ti / 64] |= 1ULL << (ti % 64);
            }
        le2.assign(qcoll.members.size(), 0);
        ge2.assign(qcoll.members.size(), 0);
        for (size_t qi = 0; qi < qcoll.members.size(); ++qi) {
            Rect q2 = qcoll.members[qi].subtile(2).rect();
            for (size_t pi = 0; pi < pcoll.members.size(); ++pi) {
                Rect p2 = pcoll.members[pi].subtile(2).rect();
                if (tile_le(q2, p2)) le2[qi] |= 1ULL << pi;
                if (tile_le(p2, q2)) ge2[qi] |= 1ULL << pi;
            }
        }
    }

    // best (largest) top scale k among tops valid for every member of the set;
    // returns false if no common top exists for either tree index
    bool best_top_k(uint32_t set, int& k_out) const {
        bool found = false;
        int best_k = 0;
        size_t words = top_ok.empty() ? 0 : top_ok[0][0].size();
        for (int ii = 0; ii < 2; ++ii) {
            std::vector<uint64_t> acc(words, ~0ULL);
            for (size_t qi = 0; qi < qcoll.members.size(); ++qi)
                if (set & (1u << qi))
                    for (size_t w = 0; w < words; ++w) acc[w] &= top_ok[qi][ii][w];
            for (size_t ti = 0; ti < tops.size(); ++ti)
                if (acc[ti / 64] & (1ULL << (ti % 64)))
                    if (!found || tops[ti].k > best_k) {
                        found = true;
                        best_k = tops[ti].k;
                    }
        }
        if (found) k_out = best_k;
        return found;
    }

    uint64_t tilde_mask(uint32_t set) const {
        uint64_t lo = 0, hi = 0;
        for (size_t qi = 0; qi < qcoll.members.size(); ++qi)
            if (set & (1u << qi)) {
                lo |= le2[qi];
                hi |= ge2[qi];
            }
        return lo & hi;
    }

    StepFunction tree_function(uint32_t set) const {
        std::vector<Quartile> members;
        for (size_t qi = 0; qi < qcoll.members.size(); ++qi)
            if (set & (1u << qi)) members.push_back(qcoll.members[qi]);
        return dp_tree_function(members, g, h, pcoll);
    }
};

struct DpCandidate {
    uint32_t members;
    uint64_t tilde;
    QuadExt weight;  // squared L2 norm
};

void packing_rec(const std::vector<DpCandidate>& cands, const std::vector<QuadExt>& suffix,
                 size_t i, uint32_t used_m, uint64_t used_t, const QuadExt& acc, QuadExt& best) {
    if (acc > best) best = acc;
    if (i == cands.size() || !((acc + suffix[i]) > best)) return;
    const DpCandidate& c = cands[i];
    if (!(c.members & used_m) && !(c.tilde & used_t))
        packing_rec(cands, suffix, i + 1, used_m | c.members, used_t | c.tilde, acc + c.weight,
                    best);
    packing_rec(cands, suffix, i + 1, used_m, used_t, acc, best);
}

}  // namespace

QuadExt size_doubleprime(const StepFunction& g, const StepFunction& h,
                         const QuartileCollection& qcoll, const QuartileCollection& pcoll,
                         TreeSupMode mode) {
    QuadExt best;
    if (mode == TreeSupMode::Exhaustive) {
        DpExhaustive eng(qcoll, pcoll, g, h);
        uint32_t full = (1u << qcoll.members.size()) - 1;
        for (uint32_t set = 1; set <= full && full; ++set) {
            int k;
            if (!eng.best_top_k(set, k)) continue;
            QuadExt l1 = l1_norm_exact(eng.tree_function(set));
            best = max(best, l1.mul_pow2(k));
        }
        return best;
    }
    std::map<std::vector<Quartile>, QuadExt> l1_memo;
    for (const auto& top : enumerate_quartiles(qcoll.grid).members) {
        for (int i = 2; i <= 3; ++i) {
            Tree t = maximal_tree(top, qcoll, i);
            if (t.members.empty()) continue;
            auto it = l1_memo.find(t.members);
            if (it == l1_memo.end())
                it = l1_memo.emplace(t.members,
                                     l1_norm_exact(dp_tree_function(t.members, g, h, pcoll)))
                         .first;
            best = max(best, it->second.mul_pow2(top.k));
        }
    }
    return best;
}

QuadExt energy_doubleprime_squared(const StepFunction& g, const StepFunction& h,
                                   const QuartileCollection& qcoll,
                                   const QuartileCollection& pcoll, TreeSupMode mode) {
    if (mode == TreeSupMode::Exhaustive) {
        DpExhaustive eng(qcoll, pcoll, g, h);
        uint32_t full = (1u << qcoll.members.size()) - 1;
        std::vector<DpCandidate> cands;
        for (uint32_t set = 1; set <= full && full; ++set) {
            int k;
            if (!eng.best_top_k(set, k)) continue;
            QuadExt w = l2_norm_squared(eng.tree_function(set));
            if (w.is_zero()) continue;
            cands.push_back({set, eng.tilde_mask(set), w});
        }
        std::sort(cands.begin(), cands.end(),
                  [](const DpCandidate& a, const DpCandidate& b) { return b.weight < a.weight; });
        std::vector<QuadExt> suffix(cands.size() + 1);
        for (size_t i = cands.size(); i-- > 0;) suffix[i] = suffix[i + 1] + cands[i].weight;
        QuadExt best;
        packing_rec(cands, suffix, 0, 0, 0, QuadExt(), best);
        return best;
    }
    // greedy over maximal trees: a certified lower bound
    struct GreedyCand {
        std::vector<Quartile> members;
        std::vector<Quartile> tilde;
        QuadExt weight;
    };
    std::vector<GreedyCand> cands;
    std::map<std::vector<Quartile>, size_t> seen;
    for (const auto& top : enumerate_quartiles(qcoll.grid).members)
        for (int i = 2; i <= 3; ++i) {
            Tree t = maximal_tree(top, qcoll, i);
            if (t.members.empty() || seen.count(t.members)) continue;
            seen[t.members] = cands.size();
            QuadExt w = l2_norm_squared(dp_tree_function(t.members, g, h, pcoll));
            if (w.is_zero()) continue;
            cands.push_back({t.members, tilde_tree(t.members, pcoll), w});
        }
    std::sort(cands.begin(), cands.end(),
              [](const GreedyCand& a, const GreedyCand& b) { return b.weight < a.weight; });
    auto disjoint = [](const std::vector<Quartile>& a, const std::vector<Quartile>& b) {
        for (const auto& x : a)
            for (const auto& y : b)
                if (x == y) return false;
        return true;
    };
    QuadExt total;
    std::vector<Quartile> used_m, used_t;
    for (const auto& c : cands) {
        if (!disjoint(c.members, used_m) || !disjoint(c.tilde, used_t)) continue;
        total += c.weight;
        used_m.insert(used_m.end(), c.members.begin(), c.members.end());
        used_t.insert(used_t.end(), c.tilde.begin(), c.tilde.end());
    }
    return total;
}

}  // namespace wtf
