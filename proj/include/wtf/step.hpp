#pragma once

#include "wtf/interval.hpp"
#include "wtf/numbers.hpp"

#include <optional>
#include <vector>

namespace wtf {

struct StepCell {
    DyadicInterval iv;
    QuadExt value;
};

/// Finitely supported piecewise-constant function on dyadic cells of [0, 2^M).
/// Zero off the stored support. Canonical form: cells sorted, pairwise
/// disjoint, nonzero, and maximal (sibling cells with equal values merged), so
/// operator== is exact pointwise equality. Immutable after construction.
class StepFunction {
public:
    StepFunction() = default;
    explicit StepFunction(int M) : M_(M) {}

    static StepFunction zero(int M) { return StepFunction(M); }
    /// Cells must be pairwise disjoint and contained in [0, 2^M).
    static StepFunction from_cells(int M, std::vector<StepCell> cells);
    static StepFunction indicator(int M, const DyadicInterval& iv) {
        return constant_on(M, iv, QuadExt::integer(1));
    }
    static StepFunction constant_on(int M, const DyadicInterval& iv, const QuadExt& v) {
        return from_cells(M, {{iv, v}});
    }

    int M() const { return M_; }
    const std::vector<StepCell>& cells() const { return cells_; }
    bool is_zero() const { return cells_.empty(); }

    /// Value at x (zero off support).
    QuadExt value_at(const DyadicRational& x) const;

    friend bool operator==(const StepFunction& f, const StepFunction& g);
    friend bool operator!=(const StepFunction& f, const StepFunction& g) { return !(f == g); }

private:
    int M_ = 0;
    std::vector<StepCell> cells_;
};

enum class CombineOp { Add, Multiply, Max };

/// Exact pointwise combination on the common refinement of the two cell
/// partitions. Throws PreconditionError on mismatched ambient grids.
StepFunction step_combine(const StepFunction& f, const StepFunction& g, CombineOp op);
StepFunction step_scale(const StepFunction& f, const QuadExt& c);
StepFunction step_abs(const StepFunction& f);

inline StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return step_combine(f, g, CombineOp::Add);
}
inline StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    return step_combine(f, step_scale(g, QuadExt::integer(-1)), CombineOp::Add);
}
inline StepFunction operator*(const StepFunction& f, const StepFunction& g) {
    return step_combine(f, g, CombineOp::Multiply);
}

/// Restriction f * chi_I.
StepFunction step_restrict(const StepFunction& f, const DyadicInterval& iv);

QuadExt integrate(const StepFunction& f);
QuadExt integrate(const StepFunction& f, const DyadicInterval& iv);
QuadExt inner_product(const StepFunction& f, const StepFunction& g);

QuadExt l1_norm_exact(const StepFunction& f);
QuadExt l2_norm_squared(const StepFunction& f);
QuadExt linf_norm_exact(const StepFunction& f);
/// (sup_l l * |{|f| > l}|)^2, exact over the attained levels.
QuadExt weak_l1_squared(const StepFunction& f);
/// For h = g^2 >= 0 cellwise: (weak-L1 norm of g)^2, exact.
QuadExt weak_l1_sqrt_squared(const StepFunction& h);

/// p in (0, inf]; exact arithmetic for p = 1, 2, inf, float powers otherwise.
double lp_norm(const StepFunction& f, double p);
double weak_l1_norm(const StepFunction& f);

/// At each x, max over dyadic I with x in I subset [0, 2^M) of the average of |f| over I.
StepFunction dyadic_maximal(const StepFunction& f);

/// Indicator of {x : N(x) in omega}; off-support N counts as value 0.
StepFunction chi_value_in(const StepFunction& N, const DyadicInterval& omega);

/// Finite unions of dyadic cells, represented as 0/1-valued step functions.
using Region = StepFunction;

bool is_region(const StepFunction& f);
Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
Region region_diff(const Region& a, const Region& b);
Region region_complement(const Region& a);
DyadicRational region_measure(const Region& a);

class MajorSubsetError : public std::runtime_error {
public:
    explicit MajorSubsetError(const std::string& what) : std::runtime_error(what) {}
};

/// Union over j of the superlevel sets { M(chi_Ej) > C |Ej| }.
Region exceptional_set(const std::vector<Region>& es, const DyadicRational& c);
/// E minus Omega; throws MajorSubsetError if |E \ Omega| < |E| / 2.
Region major_subset(const Region& e, const Region& omega);

}  // namespace wtf
