#include "wtf/step.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace wtf {

std::vector<DyadicInterval> dyadic_cover(const DyadicRational& a, const DyadicRational& b) {
    std::vector<DyadicInterval> out;
    if (a >= b) return out;
    int e = std::max(a.exp(), b.exp());
    BigInt lo = a.num() << (e - a.exp());
    BigInt hi = b.num() << (e - b.exp());
    while (lo < hi) {
        BigInt rem = hi - lo;
        unsigned smax = boost::multiprecision::msb(rem);  // 2^smax <= rem
        unsigned s = lo == 0 ? smax : std::min<unsigned>(smax, boost::multiprecision::lsb(lo));
        out.push_back({static_cast<int>(s) - e, (lo >> s).convert_to<long long>()});
        lo += BigInt(1) << s;
    }
    return out;
}

namespace {

DyadicRational cell_end(const StepCell& c) { return c.iv.end(); }
DyadicRational cell_start(const StepCell& c) { return c.iv.start(); }

// Canonicalize sorted disjoint nonzero cells: merge equal-valued siblings.
std::vector<StepCell> merge_siblings(std::vector<StepCell> cells) {
    std::vector<StepCell> out;
    for (auto& c : cells) {
        out.push_back(std::move(c));
        while (out.size() >= 2) {
            StepCell& x = out[out.size() - 2];
            StepCell& y = out.back();
            if (x.iv.k == y.iv.k && x.iv.n % 2 == 0 && y.iv.n == x.iv.n + 1 &&
                x.value == y.value) {
                x.iv = {x.iv.k + 1, x.iv.n / 2};
                out.pop_back();
            } else {
                break;
            }
        }
    }
    return out;
}

}  // namespace

StepFunction StepFunction::from_cells(int M, std::vector<StepCell> cells) {
    std::erase_if(cells, [](const StepCell& c) { return c.value.is_zero(); });
    std::sort(cells.begin(), cells.end(),
              [](const StepCell& a, const StepCell& b) { return cell_start(a) < cell_start(b); });
    DyadicInterval domain{M, 0};
    for (size_t i = 0; i < cells.size(); ++i) {
        if (!interval_contains(domain, cells[i].iv))
            throw PreconditionError("StepFunction: cell outside ambient domain");
        if (i > 0 && cell_end(cells[i - 1]) > cell_start(cells[i]))
            throw PreconditionError("StepFunction: overlapping cells");
    }
    StepFunction f(M);
    f.cells_ = merge_siblings(std::move(cells));
    return f;
}

QuadExt StepFunction::value_at(const DyadicRational& x) const {
    size_t lo = 0, hi = cells_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cell_end(cells_[mid]) <= x)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < cells_.size() && cells_[lo].iv.contains_value(x)) return cells_[lo].value;
    return QuadExt();
}

bool operator==(const StepFunction& f, const StepFunction& g) {
    if (f.M_ != g.M_ || f.cells_.size() != g.cells_.size()) return false;
    for (size_t i = 0; i < f.cells_.size(); ++i)
        if (f.cells_[i].iv != g.cells_[i].iv || f.cells_[i].value != g.cells_[i].value)
            return false;
    return true;
}

namespace {

QuadExt apply_op(CombineOp op, const QuadExt& a, const QuadExt& b) {
    switch (op) {
        case CombineOp::Add: return a + b;
        case CombineOp::Multiply: return a * b;
        case CombineOp::Max: return max(a, b);
    }
    return QuadExt();
}

}  // namespace

StepFunction step_combine(const StepFunction& f, const StepFunction& g, CombineOp op) {
    if (f.M() != g.M()) throw PreconditionError("step_combine: mismatched ambient grids");
    const QuadExt zero;
    std::deque<StepCell> fq(f.cells().begin(), f.cells().end());
    std::deque<StepCell> gq(g.cells().begin(), g.cells().end());
    std::vector<StepCell> out;
    auto emit = [&](const DyadicInterval& iv, const QuadExt& v) {
        if (!v.is_zero()) out.push_back({iv, v});
    };
    while (!fq.empty() || !gq.empty()) {
        if (gq.empty() || (!fq.empty() && cell_end(fq.front()) <= cell_start(gq.front()))) {
            emit(fq.front().iv, apply_op(op, fq.front().value, zero));
            fq.pop_front();
        } else if (fq.empty() || cell_end(gq.front()) <= cell_start(fq.front())) {
            emit(gq.front().iv, apply_op(op, zero, gq.front().value));
            gq.pop_front();
        } else {
            StepCell a = fq.front(), b = gq.front();
            auto rel = interval_relation(a.iv, b.iv);
            if (rel == IntervalRelation::Equal) {
                emit(a.iv, apply_op(op, a.value, b.value));
                fq.pop_front();
                gq.pop_front();
            } else if (rel == IntervalRelation::AInsideB) {
                gq.pop_front();
                gq.push_front({b.iv.right_child(), b.value});
                gq.push_front({b.iv.left_child(), b.value});
            } else if (rel == IntervalRelation::BInsideA) {
                fq.pop_front();
                fq.push_front({a.iv.right_child(), a.value});
                fq.push_front({a.iv.left_child(), a.value});
            } else {
                // overlapping starts but disjoint: impossible once ends are ordered
                if (cell_start(a) < cell_start(b)) {
                    emit(a.iv, apply_op(op, a.value, zero));
                    fq.pop_front();
                } else {
                    emit(b.iv, apply_op(op, zero, b.value));
                    gq.pop_front();
                }
            }
        }
    }
    return StepFunction::from_cells(f.M(), std::move(out));
}

StepFunction step_scale(const StepFunction& f, const QuadExt& c) {
    std::vector<StepCell> out;
    if (!c.is_zero())
        for (const auto& cell : f.cells()) out.push_back({cell.iv, cell.value * c});
    return StepFunction::from_cells(f.M(), std::move(out));
}

StepFunction step_abs(const StepFunction& f) {
    std::vector<StepCell> out;
    for (const auto& cell : f.cells()) out.push_back({cell.iv, cell.value.abs()});
    return StepFunction::from_cells(f.M(), std::move(out));
}

StepFunction step_restrict(const StepFunction& f, const DyadicInterval& iv) {
    std::vector<StepCell> out;
    for (const auto& cell : f.cells()) {
        auto rel = interval_relation(cell.iv, iv);
        if (rel == IntervalRelation::Equal || rel == IntervalRelation::AInsideB)
            out.push_back(cell);
        else if (rel == IntervalRelation::BInsideA)
            out.push_back({iv, cell.value});
    }
    return StepFunction::from_cells(f.M(), std::move(out));
}

QuadExt integrate(const StepFunction& f) {
    QuadExt s;
    for (const auto& cell : f.cells()) s += cell.value.mul_pow2(cell.iv.k);
    return s;
}

QuadExt integrate(const StepFunction& f, const DyadicInterval& iv) {
    return integrate(step_restrict(f, iv));
}

QuadExt inner_product(const StepFunction& f, const StepFunction& g) {
    if (f.M() != g.M()) throw PreconditionError("inner_product: mismatched ambient grids");
    // two-pointer over overlapping cells; overlap of nested dyadic cells is the smaller one
    QuadExt s;
    size_t i = 0, j = 0;
    const auto& fc = f.cells();
    const auto& gc = g.cells();
    while (i < fc.size() && j < gc.size()) {
        if (cell_end(fc[i]) <= cell_start(gc[j])) {
            ++i;
        } else if (cell_end(gc[j]) <= cell_start(fc[i])) {
            ++j;
        } else {
            int kmin = std::min(fc[i].iv.k, gc[j].iv.k);
            s += (fc[i].value * gc[j].value).mul_pow2(kmin);
            if (cell_end(fc[i]) <= cell_end(gc[j]))
                ++i;
            else
                ++j;
        }
    }
    return s;
}

QuadExt l1_norm_exact(const StepFunction& f) { return integrate(step_abs(f)); }

QuadExt l2_norm_squared(const StepFunction& f) { return inner_product(f, f); }

QuadExt linf_norm_exact(const StepFunction& f) {
    QuadExt m;
    for (const auto& cell : f.cells()) m = max(m, cell.value.abs());
    return m;
}

QuadExt weak_l1_squared(const StepFunction& f) {
    // sup over attained levels u of u * |{|f| >= u}|; exact via squared compare
    QuadExt best;
    for (const auto& cell : f.cells()) {
        QuadExt u = cell.value.abs();
        DyadicRational m;
        for (const auto& c : f.cells())
            if (c.value.abs() >= u) m = m + c.iv.length();
        best = max(best, (u * QuadExt::dyadic(m)).square());
    }
    return best;
}

QuadExt weak_l1_sqrt_squared(const StepFunction& h) {
    QuadExt best;
    for (const auto& cell : h.cells()) {
        if (cell.value.sign() < 0) throw PreconditionError("weak_l1_sqrt_squared: negative cell");
        const QuadExt& v = cell.value;  // level u = sqrt(v)
        DyadicRational m;
        for (const auto& c : h.cells())
            if (c.value >= v) m = m + c.iv.length();
        QuadExt msq = QuadExt::dyadic(m * m);
        best = max(best, v * msq);  // (u * m)^2
    }
    return best;
}

double lp_norm(const StepFunction& f, double p) {
    if (!(p > 0)) throw PreconditionError("lp_norm: p must be positive");
    if (std::isinf(p)) return linf_norm_exact(f).to_double();
    if (p == 1.0) return l1_norm_exact(f).to_double();
    if (p == 2.0) return std::sqrt(l2_norm_squared(f).to_double());
    double s = 0;
    for (const auto& cell : f.cells())
        s += std::pow(cell.value.abs().to_double(), p) * cell.iv.length().to_double();
    return std::pow(s, 1.0 / p);
}

double weak_l1_norm(const StepFunction& f) { return std::sqrt(weak_l1_squared(f).to_double()); }

namespace {

// Max over ancestor averages is pushed down; constant regions absorb it.
void maximal_rec(const std::vector<StepCell>& cells, size_t lo, size_t hi,
                 const DyadicInterval& node, const QuadExt& ancestor_max,
                 std::vector<StepCell>& out) {
    if (lo == hi) {
        if (!ancestor_max.is_zero()) out.push_back({node, ancestor_max});
        return;
    }
    if (hi - lo == 1 && interval_contains(cells[lo].iv, node)) {
        out.push_back({node, max(ancestor_max, cells[lo].value)});
        return;
    }
    QuadExt integral;
    for (size_t i = lo; i < hi; ++i) integral += cells[i].value.mul_pow2(cells[i].iv.k);
    QuadExt am = max(ancestor_max, integral.mul_pow2(-node.k));
    DyadicInterval left = node.left_child();
    DyadicRational mid = left.end();
    size_t split = lo;
    while (split < hi && cell_start(cells[split]) < mid) ++split;
    maximal_rec(cells, lo, split, left, am, out);
    maximal_rec(cells, split, hi, node.right_child(), am, out);
}

}  // namespace

StepFunction dyadic_maximal(const StepFunction& f) {
    StepFunction g = step_abs(f);
    if (g.is_zero()) return StepFunction::zero(f.M());
    std::vector<StepCell> out;
    maximal_rec(g.cells(), 0, g.cells().size(), DyadicInterval{f.M(), 0}, QuadExt(), out);
    return StepFunction::from_cells(f.M(), std::move(out));
}

StepFunction chi_value_in(const StepFunction& N, const DyadicInterval& omega) {
    std::vector<StepCell> out;
    const QuadExt one = QuadExt::integer(1);
    bool zero_in = omega.contains_value(DyadicRational());
    DyadicRational pos;  // walk the domain, filling gaps with value 0
    for (const auto& cell : N.cells()) {
        if (zero_in)
            for (const auto& gap : dyadic_cover(pos, cell_start(cell))) out.push_back({gap, one});
        if (omega.contains_value(cell.value)) out.push_back({cell.iv, one});
        pos = cell_end(cell);
    }
    if (zero_in)
        for (const auto& gap : dyadic_cover(pos, DyadicInterval{N.M(), 0}.end()))
            out.push_back({gap, one});
    return StepFunction::from_cells(N.M(), std::move(out));
}

bool is_region(const StepFunction& f) {
    const QuadExt one = QuadExt::integer(1);
    for (const auto& cell : f.cells())
        if (cell.value != one) return false;
    return true;
}

Region region_union(const Region& a, const Region& b) { return step_combine(a, b, CombineOp::Max); }

Region region_intersect(const Region& a, const Region& b) {
    return step_combine(a, b, CombineOp::Multiply);
}

Region region_diff(const Region& a, const Region& b) { return a - region_intersect(a, b); }

Region region_complement(const Region& a) {
    return region_diff(Region::indicator(a.M(), DyadicInterval{a.M(), 0}), a);
}

DyadicRational region_measure(const Region& a) { return integrate(a).to_dyadic(); }

Region exceptional_set(const std::vector<Region>& es, const DyadicRational& c) {
    Region omega;
    bool first = true;
    for (const auto& e : es) {
        if (!is_region(e)) throw PreconditionError("exceptional_set: not an indicator");
        QuadExt threshold = QuadExt::dyadic(c * region_measure(e));
        StepFunction mf = dyadic_maximal(e);
        std::vector<StepCell> super;
        for (const auto& cell : mf.cells())
            if (cell.value > threshold) super.push_back({cell.iv, QuadExt::integer(1)});
        Region s = Region::from_cells(e.M(), std::move(super));
        omega = first ? s : region_union(omega, s);
        first = false;
    }
    if (first) throw PreconditionError("exceptional_set: empty set list");
    return omega;
}

Region major_subset(const Region& e, const Region& omega) {
    Region rest = region_diff(e, omega);
    DyadicRational me = region_measure(e);
    DyadicRational mr = region_measure(rest);
    if (mr.mul_pow2(1) < me)
        throw MajorSubsetError("major subset failure: |E \\ Omega| < |E| / 2");
    return rest;
}

std::string DyadicRational::str() const {
    std::string s = num_.str();
    if (exp_ != 0) s += "/2^" + std::to_string(exp_);
    return s;
}

std::string QuadExt::str() const {
    std::string s = "(" + a_.str() + (b_ >= 0 ? "+" : "") + b_.str() + "*sqrt2)";
    if (m_ != 0) s += "/2^" + std::to_string(m_);
    return s;
}

}  // namespace wtf
