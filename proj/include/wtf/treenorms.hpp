#pragma once

#include "wtf/antichain.hpp"
#include "wtf/operators.hpp"
#include "wtf/step.hpp"
#include "wtf/tiles.hpp"
#include "wtf/wavepacket.hpp"

#include <vector>

namespace wtf {

/// i-tree: every member P satisfies P_i <= top_i. The top is a candidate from
/// the ambient grid and need not be a member.
struct Tree {
    Quartile top;
    int type_i = 1;
    std::vector<Quartile> members;
};

Tree maximal_tree(const Quartile& top, const QuartileCollection& coll, int i);
bool is_valid_tree(const Tree& t);

/// Squared size: sup over ambient candidate tops and i != j of
/// |I_T|^{-1} sum of a_{P_j}^2 over the maximal i-tree of the top.
QuadExt size_squared(const CoefficientSequence& seq, const QuartileCollection& coll, int j);

/// Squared energy: max-weight antichain over the j-subtiles with weights a_{P_j}^2.
QuadExt energy_squared(const CoefficientSequence& seq, const QuartileCollection& coll, int j,
                       AntichainMode mode = AntichainMode::MinCut);

/// sup over members P and ambient bitiles P' with P12 < P' of the average of
/// |G| chi_{N in omega_{P'}} over I_{P'}.
QuadExt b_size(const StepFunction& g, const StepFunction& n, const QuartileCollection& coll);

/// Max-weight antichain over the sub-bitiles P12 with weights
/// int_{I_P} |G| chi_{N in omega_{P1} u omega_{P2}}.
QuadExt b_energy(const StepFunction& g, const StepFunction& n, const QuartileCollection& coll,
                 AntichainMode mode = AntichainMode::MinCut);

/// Averages of |G| chi_{N in omega} over bitile rectangles, with the indicator
/// memoized per frequency window.
class BSizeEvaluator {
public:
    BSizeEvaluator(const StepFunction& g, const StepFunction& n);
    QuadExt average(const Rect& bitile_rect);
    QuadExt integral(const Rect& bitile_rect);

private:
    const StepFunction& chi(const DyadicInterval& omega);
    StepFunction absg_;
    const StepFunction& n_;
    std::map<DyadicInterval, StepFunction> chi_;
};

/// Averages of |Cc_{window}(f1) f3| chi_{N in omega12} over bitile rectangles,
/// with the complementary Carleson sum memoized per lower-half window.
class PrimeSizeEvaluator {
public:
    PrimeSizeEvaluator(const StepFunction& f1, const StepFunction& f3, const StepFunction& n,
                       const QuartileCollection& pcoll);
    QuadExt average(const Rect& bitile_rect);
    QuadExt integral(const Rect& bitile_rect);

private:
    StepFunction integrand(const Rect& bitile_rect);
    const StepFunction& cc(const DyadicInterval& window);
    const StepFunction& chi(const DyadicInterval& omega);
    const StepFunction &f1_, &f3_, &n_;
    const QuartileCollection& pcoll_;
    std::map<DyadicInterval, StepFunction> cc_, chi_;
};

/// sup over Q in the collection and ambient quartiles Q' with Q12 < Q'12 of the
/// average over I_{Q'} of |Cc_{Q',P}(f1) f3| chi_{N in omega_{Q'1} u omega_{Q'2}}.
QuadExt size_prime(const StepFunction& f1, const StepFunction& f3, const StepFunction& n,
                   const QuartileCollection& qcoll, const QuartileCollection& pcoll);

QuadExt energy_prime(const StepFunction& f1, const StepFunction& f3, const StepFunction& n,
                     const QuartileCollection& qcoll, const QuartileCollection& pcoll,
                     AntichainMode mode = AntichainMode::MinCut);

/// { P : exist Q', Q'' among the members with Q'_2 <= P_2 <= Q''_2 }.
std::vector<Quartile> tilde_tree(const std::vector<Quartile>& members,
                                 const QuartileCollection& pcoll);

/// sum_{Q in members} <g, phi_{Q1}> phi_{Q1} * sum_{P in tilde, omega_{Q1} in
/// omega_{P2}} <h, phi_{P1}> phi_{P1}; the function whose norms drive the
/// double-prime size and energy.
StepFunction dp_tree_function(const std::vector<Quartile>& members, const StepFunction& g,
                              const StepFunction& h, const QuartileCollection& pcoll);

enum class TreeSupMode { Exhaustive, MaximalTree };

/// L1-based size over i-trees (i = 2, 3) in the Q collection. Exhaustive mode
/// enumerates every subset that forms a tree under some ambient top (collection
/// capped at 16 members); maximal-tree mode evaluates only the maximal tree per
/// candidate top and is a certified lower bound (the L1 norm is not monotone in
/// tree membership).
QuadExt size_doubleprime(const StepFunction& g, const StepFunction& h,
                         const QuartileCollection& qcoll, const QuartileCollection& pcoll,
                         TreeSupMode mode = TreeSupMode::MaximalTree);

/// Squared L2-based energy over families of trees with pairwise disjoint
/// member sets and pairwise disjoint tilde sets; same mode semantics.
QuadExt energy_doubleprime_squared(const StepFunction& g, const StepFunction& h,
                                   const QuartileCollection& qcoll,
                                   const QuartileCollection& pcoll,
                                   TreeSupMode mode = TreeSupMode::MaximalTree);

}  // namespace wtf
