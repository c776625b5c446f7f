#pragma once

#include "wtf/treenorms.hpp"

#include <map>
#include <vector>

namespace wtf {

/// Tree selected by a decomposition; the top is a quartile or bitile rectangle.
struct SelectedTree {
    DyadicInterval top_time;
    DyadicInterval top_freq;
    int tree_index = 0;  // i for i-trees, 0 where the notion does not apply
    std::vector<Quartile> members;
};

struct DecompCertificate {
    QuadExt remainder_measure;    // squared for the L2-type functionals, else linear
    QuadExt threshold;            // matching 2^{-n-1} E form (squared where applicable)
    bool squared = false;
    bool size_ok = false;
    DyadicRational tree_length_sum;
    DyadicRational tree_length_bound;  // C0 * 2^{kappa n}
    bool trees_ok = false;
    bool disjointness_ok = true;  // geometric assertions of the double-prime selection
    // double-prime only: the maximal-tree sup over the joint remainder,
    // measured alongside the per-parity strict certificate
    QuadExt secondary_measure;
    bool secondary_ok = true;
};

struct DecompositionResult {
    QuartileCollection remainder;
    std::vector<SelectedTree> forest;
    int n = 0;
    DecompCertificate certified;
};

inline constexpr long long kDefaultTreeConstant = 32;

/// Peel energy-heavy trees until the j-size drops below 2^{-n-1} E.
/// Precondition: size_j(coll)^2 <= 4^{-n} e_squared. Certified on return:
/// remainder size bound and sum |I_T| <= c0 * 2^{2n}.
DecompositionResult decomp_size(const QuartileCollection& coll, int j, const StepFunction& f,
                                int n, const QuadExt& e_squared,
                                long long c0 = kDefaultTreeConstant);

/// Remove trees under maximal witness bitiles until the b-size drops below
/// 2^{-n-1} E; sum |I_T| <= c0 * 2^n.
DecompositionResult decomp_bsize(const QuartileCollection& coll, const StepFunction& g,
                                 const StepFunction& nfun, int n, const QuadExt& e_linear,
                                 long long c0 = kDefaultTreeConstant);

/// Same selection driven by the prime size of (f1, f3); sum |I_T| <= c0 * 2^n.
DecompositionResult decomp_prime(const QuartileCollection& qcoll,
                                 const QuartileCollection& pcoll, const StepFunction& f1,
                                 const StepFunction& f3, const StepFunction& nfun, int n,
                                 const QuadExt& e_linear, long long c0 = kDefaultTreeConstant);

/// Double-prime selection: per parity class of the spatial scale (optional),
/// repeatedly pick a maximal in-collection top whose strict i-tree is heavy
/// (i = 2, 3), removing the i-tree and the companion 1-tree. Certifies the
/// strict per-parity remainder bound, measures the maximal-tree sup, and
/// asserts the pairwise disjointness of the selected first subtiles.
/// sum |I_T| <= c0 * 2^{2n}.
DecompositionResult decomp_doubleprime(const QuartileCollection& qcoll,
                                       const QuartileCollection& pcoll, const StepFunction& g,
                                       const StepFunction& h, int n, const QuadExt& e_squared,
                                       long long c0 = kDefaultTreeConstant,
                                       bool parity_split = true);

struct PartitionLevel {
    int n = 0;
    QuartileCollection members;
    std::vector<SelectedTree> forest;
    QuadExt level_measure;  // size of the level collection (squared where applicable)
    QuadExt level_bound;    // min(2^{-n} E, global size), same scale
    bool level_ok = false;
    DyadicRational tree_length_sum;
    DyadicRational tree_length_bound;
    bool trees_ok = false;
};

struct PartitionResult {
    std::vector<PartitionLevel> levels;
};

PartitionResult full_partition_size(const QuartileCollection& coll, int j, const StepFunction& f,
                                    long long c0 = kDefaultTreeConstant);
PartitionResult full_partition_bsize(const QuartileCollection& coll, const StepFunction& g,
                                     const StepFunction& nfun,
                                     long long c0 = kDefaultTreeConstant);
PartitionResult full_partition_prime(const QuartileCollection& qcoll,
                                     const QuartileCollection& pcoll, const StepFunction& f1,
                                     const StepFunction& f3, const StepFunction& nfun,
                                     long long c0 = kDefaultTreeConstant);
PartitionResult full_partition_doubleprime(const QuartileCollection& qcoll,
                                           const QuartileCollection& pcoll,
                                           const StepFunction& g, const StepFunction& h,
                                           long long c0 = kDefaultTreeConstant,
                                           bool parity_split = true);

}  // namespace wtf
