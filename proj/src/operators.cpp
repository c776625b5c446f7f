#include "wtf/operators.hpp"

#include <map>
#include <set>

namespace wtf {

namespace {

// chi_{N(x) in omega} is reused across tiles with the same frequency window
class ChiCache {
public:
    ChiCache(const StepFunction& n) : n_(n) {}
    const StepFunction& get(const DyadicInterval& omega) {
        auto it = cache_.find(omega);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(omega, chi_value_in(n_, omega)).first->second;
    }

private:
    const StepFunction& n_;
    std::map<DyadicInterval, StepFunction> cache_;
};

void check_grid(const StepFunction& f, int m, const char* who) {
    if (f.M() != m) throw PreconditionError(std::string(who) + ": mismatched ambient grids");
}

}  // namespace

StepFunction carleson_apply(const BitileCollection& coll, const StepFunction& f,
                            const StepFunction& n) {
    check_grid(f, coll.grid.M, "carleson_apply");
    check_grid(n, coll.grid.M, "carleson_apply");
    ChiCache chi(n);
    StepFunction out = StepFunction::zero(f.M());
    for (const auto& b : coll.members) {
        StepFunction phi = wave_packet(b.subtile(1), f.M());
        QuadExt coef = inner_product(f, phi);
        if (coef.is_zero()) continue;
        out = out + step_scale(phi * chi.get(b.subtile(2).freq()), coef);
    }
    return out;
}

StepFunction carleson_adjoint_apply(const BitileCollection& coll, const StepFunction& g,
                                    const StepFunction& n) {
    check_grid(g, coll.grid.M, "carleson_adjoint_apply");
    check_grid(n, coll.grid.M, "carleson_adjoint_apply");
    ChiCache chi(n);
    StepFunction out = StepFunction::zero(g.M());
    for (const auto& b : coll.members) {
        StepFunction phi = wave_packet(b.subtile(1), g.M());
        QuadExt coef = inner_product(g * chi.get(b.subtile(2).freq()), phi);
        if (coef.is_zero()) continue;
        out = out + step_scale(phi, coef);
    }
    return out;
}

namespace {

BitileCollection subbitiles(const QuartileCollection& coll) {
    BitileCollection out{coll.grid, {}};
    for (const auto& q : coll.members) out.members.push_back(q.subbitile());
    return out;
}

}  // namespace

StepFunction carleson_apply(const QuartileCollection& coll, const StepFunction& f,
                            const StepFunction& n) {
    return carleson_apply(subbitiles(coll), f, n);
}

StepFunction carleson_adjoint_apply(const QuartileCollection& coll, const StepFunction& g,
                                    const StepFunction& n) {
    return carleson_adjoint_apply(subbitiles(coll), g, n);
}

StepFunction bht_apply(const QuartileCollection& coll, const StepFunction& f1,
                       const StepFunction& f2) {
    check_grid(f1, coll.grid.M, "bht_apply");
    check_grid(f2, coll.grid.M, "bht_apply");
    StepFunction out = StepFunction::zero(f1.M());
    for (const auto& q : coll.members) {
        QuadExt c1 = inner_product(f1, wave_packet(q.subtile(1), f1.M()));
        if (c1.is_zero()) continue;
        QuadExt c2 = inner_product(f2, wave_packet(q.subtile(2), f1.M()));
        if (c2.is_zero()) continue;
        // |I_Q|^{-1/2} = 2^{k/2}
        QuadExt coef = c1 * c2 * QuadExt::pow2_half(q.k);
        out = out + step_scale(wave_packet(q.subtile(3), f1.M()), coef);
    }
    return out;
}

StepFunction b_restricted(const Tile& window, const QuartileCollection& coll,
                          const StepFunction& f1, const StepFunction& f2) {
    QuartileCollection filtered{coll.grid, {}};
    for (const auto& q : coll.members)
        if (interval_contains(window.freq(), q.subtile(3).freq())) filtered.members.push_back(q);
    return bht_apply(filtered, f1, f2);
}

StepFunction c_restricted(const Tile& window, const QuartileCollection& coll,
                          const StepFunction& f2, const StepFunction& n) {
    QuartileCollection filtered{coll.grid, {}};
    for (const auto& q : coll.members)
        if (interval_contains(window.freq(), q.subtile(1).freq())) filtered.members.push_back(q);
    return carleson_apply(filtered, f2, n);
}

StepFunction c_complement(const Bitile& qprime, const QuartileCollection& pcoll,
                          const StepFunction& f1, const StepFunction& n) {
    BitileCollection filtered{pcoll.grid, {}};
    DyadicInterval w = qprime.subtile(1).freq();
    for (const auto& p : pcoll.members)
        if (interval_contains(p.subtile(2).freq(), w)) filtered.members.push_back(p.subbitile());
    return carleson_apply(filtered, f1, n);
}

namespace {

// Shared skeleton of T' and T'': per member P, an inner operator output that
// depends only on a frequency window, memoized across members.
template <class Inner>
StepFunction t_outer(const QuartileCollection& pcoll, const StepFunction& f1,
                     const StepFunction& n, int window_index, Inner inner) {
    ChiCache chi(n);
    std::map<DyadicInterval, StepFunction> memo;
    StepFunction out = StepFunction::zero(f1.M());
    for (const auto& p : pcoll.members) {
        DyadicInterval w = p.subtile(window_index).freq();
        auto it = memo.find(w);
        if (it == memo.end()) it = memo.emplace(w, inner(w)).first;
        const StepFunction& inner_fn = it->second;
        if (inner_fn.is_zero()) continue;
        StepFunction phi = wave_packet(p.subtile(1), f1.M());
        const StepFunction& mask = chi.get(p.subtile(2).freq());
        if (window_index == 1) {
            QuadExt coef = inner_product(inner_fn, phi);
            if (coef.is_zero()) continue;
            out = out + step_scale(phi * mask, coef);
        } else {
            QuadExt coef = inner_product(f1, phi);
            if (coef.is_zero()) continue;
            out = out + step_scale(phi * inner_fn * mask, coef);
        }
    }
    return out;
}

}  // namespace

namespace {

Tile window_tile(const DyadicInterval& w) { return Tile{w.k, 0, w.n}; }

}  // namespace

StepFunction t_prime_apply(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                           const StepFunction& f1, const StepFunction& f2,
                           const StepFunction& n) {
    return t_outer(pcoll, f1, n, 1, [&](const DyadicInterval& w) {
        return b_restricted(window_tile(w), qcoll, f1, f2);
    });
}

StepFunction t_double_prime_apply(const QuartileCollection& pcoll,
                                  const QuartileCollection& qcoll, const StepFunction& f1,
                                  const StepFunction& f2, const StepFunction& n) {
    return t_outer(pcoll, f1, n, 2, [&](const DyadicInterval& w) {
        return c_restricted(window_tile(w), qcoll, f2, n);
    });
}

StepFunction t_apply(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                     const StepFunction& f1, const StepFunction& f2, const StepFunction& n) {
    return t_prime_apply(pcoll, qcoll, f1, f2, n) +
           t_double_prime_apply(pcoll, qcoll, f1, f2, n);
}

QuadExt lambda_form(LambdaForm which, const QuartileCollection& pcoll,
                    const QuartileCollection& qcoll, const StepFunction& f1,
                    const StepFunction& f2, const StepFunction& f3, const StepFunction& n) {
    StepFunction t = which == LambdaForm::Prime ? t_prime_apply(pcoll, qcoll, f1, f2, n)
                     : which == LambdaForm::DoublePrime
                         ? t_double_prime_apply(pcoll, qcoll, f1, f2, n)
                         : t_apply(pcoll, qcoll, f1, f2, n);
    return inner_product(t, f3);
}

CoefficientSequence a3_coefficients(const QuartileCollection& qcoll,
                                    const QuartileCollection& pcoll, const StepFunction& f3,
                                    const StepFunction& n) {
    ChiCache chi(n);
    int m = f3.M();
    // Per-P coefficient <f3 chi_{N in omega_{P2}}, phi_{P1}>
    std::vector<QuadExt> cp;
    cp.reserve(pcoll.members.size());
    for (const auto& p : pcoll.members)
        cp.push_back(
            inner_product(f3 * chi.get(p.subtile(2).freq()), wave_packet(p.subtile(1), m)));
    CoefficientSequence seq;
    for (const auto& q : qcoll.members) {
        StepFunction phi_q3 = wave_packet(q.subtile(3), m);
        QuadExt a3;
        for (size_t i = 0; i < pcoll.members.size(); ++i) {
            if (cp[i].is_zero()) continue;
            const auto& p = pcoll.members[i];
            if (!interval_contains(p.subtile(1).freq(), q.subtile(3).freq())) continue;
            a3 += cp[i] * inner_product(wave_packet(p.subtile(1), m), phi_q3);
        }
        seq.set(q, 3, a3);
    }
    return seq;
}

QuadExt lambda_prime_reordered(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                               const StepFunction& f1, const StepFunction& f2,
                               const StepFunction& f3, const StepFunction& n) {
    CoefficientSequence a3 = a3_coefficients(qcoll, pcoll, f3, n);
    QuadExt s;
    for (const auto& q : qcoll.members) {
        QuadExt c3 = a3.get(q, 3);
        if (c3.is_zero()) continue;
        QuadExt c1 = inner_product(f1, wave_packet(q.subtile(1), f1.M()));
        if (c1.is_zero()) continue;
        QuadExt c2 = inner_product(f2, wave_packet(q.subtile(2), f1.M()));
        if (c2.is_zero()) continue;
        s += c1 * c2 * c3 * QuadExt::pow2_half(q.k);
    }
    return s;
}

StepFunction product_identity_residual(const QuartileCollection& pcoll,
                                       const QuartileCollection& qcoll, const StepFunction& f1,
                                       const StepFunction& f2, const StepFunction& n) {
    StepFunction prod = carleson_apply(pcoll, f1, n) * carleson_apply(qcoll, f2, n);
    return prod - t_double_prime_apply(pcoll, qcoll, f1, f2, n) -
           t_double_prime_apply(qcoll, pcoll, f2, f1, n);
}

StepFunction product_identity_diagonal(const QuartileCollection& pcoll,
                                       const QuartileCollection& qcoll, const StepFunction& f1,
                                       const StepFunction& f2, const StepFunction& n) {
    std::set<Quartile> qs(qcoll.members.begin(), qcoll.members.end());
    ChiCache chi(n);
    StepFunction out = StepFunction::zero(f1.M());
    std::set<Quartile> seen;
    for (const auto& p : pcoll.members) {
        if (!qs.count(p) || !seen.insert(p).second) continue;
        StepFunction phi = wave_packet(p.subtile(1), f1.M());
        QuadExt coef = inner_product(f1, phi) * inner_product(f2, phi);
        if (coef.is_zero()) continue;
        out = out + step_scale(phi * phi * chi.get(p.subtile(2).freq()), coef);
    }
    return out;
}

}  // namespace wtf
