#include "wavesyn/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavesyn/basis.hpp"
#include "wavesyn/error_metrics.hpp"

namespace wavesyn {

namespace {

int ceil_log2(std::int64_t v) {
    int b = 0;
    while ((std::int64_t{1} << b) < v) ++b;
    return b;
}

struct ScoredTerm {
    double score;
    WaveletIndex index;
    double coefficient;
};

// Non-increasing score, ties toward the smaller flat index.
bool score_order(const ScoredTerm& a, const ScoredTerm& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index.flat < b.index.flat;
}

std::vector<ScoredTerm> scored_coefficients(const std::vector<double>& f,
                                            double p, const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    const double pc = conjugate_exponent(p);
    const CoefficientVector c = cascade_forward(f, fb, Scaling::Orthonormal);
    std::vector<ScoredTerm> out;
    out.reserve(n);
    for (std::int64_t flat = 1; flat <= n; ++flat) {
        const WaveletIndex idx = WaveletIndex::from_flat(flat, n);
        const double norm = basis_norm(idx, n, fb, pc);
        out.push_back({std::abs(c.values[flat - 1]) / norm, idx, c.values[flat - 1]});
    }
    std::sort(out.begin(), out.end(), score_order);
    return out;
}

Representation make_rep(std::int64_t n, const FilterBank& fb, double p) {
    Representation rep;
    rep.n = n;
    rep.basis = fb.name;
    rep.scaling = Scaling::Orthonormal;
    rep.p = p;
    return rep;
}

}  // namespace

std::int64_t index_bits(const WaveletIndex& i, std::int64_t n, IndexCoding mode) {
    const int logn = ceil_log2(n);
    if (mode == IndexCoding::Flat) return logn;
    // Scale-aware: identify the level, then the shift within it.
    const std::int64_t shifts = i.kind == IndexKind::ScalingRoot ? 1 : (n >> i.level);
    return ceil_log2(std::max(1, logn)) + ceil_log2(std::max<std::int64_t>(1, shifts)) + 2;
}

int ValueCostModel::min_width_for(double tol) const {
    if (value_range <= 0.0)
        throw std::invalid_argument("value_range must be set before use");
    for (int w = 0; w <= max_width; ++w) {
        const double err = value_range / std::ldexp(1.0, w + 1);
        if (err <= tol) return w;
    }
    return -1;
}

double ValueCostModel::quantize(double v, int width) const {
    const double step = value_range / std::ldexp(1.0, width);
    if (step <= 0.0) return v;
    return std::round(v / step) * step;
}

std::int64_t CostModel::cost_of(const WaveletIndex& i, std::int64_t n) const {
    if (!fixed_cost.empty()) {
        if (i.flat < 1 || i.flat > static_cast<std::int64_t>(fixed_cost.size()))
            throw std::invalid_argument("cost table does not cover index");
        return fixed_cost[i.flat - 1];
    }
    return index_bits(i, n, coding) + value_width;
}

SpectrumResult spectrum_select(const std::vector<double>& f,
                               const CostModel& costs, std::int64_t budget_bits,
                               double p, const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    const std::vector<ScoredTerm> scored = scored_coefficients(f, p, fb);

    SpectrumResult res;
    res.rep = make_rep(n, fb, p);
    std::int64_t used = 0;
    for (const ScoredTerm& s : scored) {
        const std::int64_t cost = costs.cost_of(s.index, n);
        if (used + cost > budget_bits) {
            res.lower_bound = s.score;
            break;
        }
        used += cost;
        res.rep.terms.emplace_back(s.index, s.coefficient);
    }
    res.used_bits = used;
    res.rep.budget = static_cast<int>(res.rep.terms.size());
    res.rep.sort_terms();
    res.rep.reported_error = lp_error(f, reconstruct(res.rep, fb), p);
    return res;
}

BitComplexityResult bitcomplexity_select(const std::vector<double>& f,
                                         const CostModel& costs,
                                         const ValueCostModel& values,
                                         std::int64_t budget_bits, double p,
                                         const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    const double pc = conjugate_exponent(p);
    const std::vector<ScoredTerm> scored = scored_coefficients(f, p, fb);

    ValueCostModel vm = values;
    if (vm.value_range <= 0.0) {
        double m = 0.0;
        for (const ScoredTerm& s : scored) m = std::max(m, std::abs(s.coefficient));
        vm.value_range = std::max(2.0 * m, 1e-300);
    }

    double smallest = 0.0, largest = 0.0;
    for (const ScoredTerm& s : scored) {
        if (s.score > 0.0) {
            largest = std::max(largest, s.score);
            smallest = smallest == 0.0 ? s.score : std::min(smallest, s.score);
        }
    }

    BitComplexityResult best;
    best.feasible = false;
    const std::int64_t cap = 2 * budget_bits;  // per-rung falsification cap
    for (double guess = smallest;; guess *= 2.0) {
        Representation rep = make_rep(n, fb, p);
        std::int64_t used = 0;
        bool overflow = false;
        for (const ScoredTerm& s : scored) {
            if (s.score <= guess) continue;  // 0 lies within the tolerance band
            const double tol = guess * basis_norm(s.index, n, fb, pc);
            const int width = vm.min_width_for(tol);
            if (width < 0) {
                overflow = true;
                break;
            }
            used += costs.cost_of(s.index, n) + width;
            if (used > cap) {
                overflow = true;
                break;
            }
            rep.terms.emplace_back(s.index, vm.quantize(s.coefficient, width));
        }
        if (!overflow && used <= budget_bits) {
            rep.budget = static_cast<int>(rep.terms.size());
            rep.sort_terms();
            rep.reported_error = lp_error(f, reconstruct(rep, fb), p);
            best.rep = std::move(rep);
            best.used_bits = used;
            best.feasible = true;
            best.guess = guess;
            return best;
        }
        // Diagnostics from the largest rung attempted so far.
        rep.budget = static_cast<int>(rep.terms.size());
        rep.sort_terms();
        best.rep = std::move(rep);
        best.used_bits = used;
        best.guess = guess;
        if (guess > largest || guess == 0.0) break;  // every band now contains 0
    }
    if (!best.feasible && best.used_bits <= budget_bits) {
        // guess above every score stores nothing: cost 0, always feasible
        best.feasible = true;
        best.rep = make_rep(n, fb, p);
        best.rep.reported_error = lp_error(f, reconstruct(best.rep, fb), p);
        best.used_bits = 0;
    }
    return best;
}

MultiplaneResult multiplane_select(const std::vector<std::vector<double>>& planes,
                                   const CostModel& costs,
                                   std::int64_t budget_bits,
                                   const FilterBank& fb) {
    if (planes.empty()) throw std::invalid_argument("at least one plane required");
    const std::int64_t n = static_cast<std::int64_t>(planes[0].size());
    const int t = static_cast<int>(planes.size());
    for (const auto& pl : planes)
        if (static_cast<std::int64_t>(pl.size()) != n)
            throw std::invalid_argument("planes must have equal length");

    struct Entry {
        double score;
        int plane;
        WaveletIndex index;
        double coefficient;
    };
    std::vector<Entry> merged;
    for (int k = 0; k < t; ++k) {
        // l_inf across planes => p' = 1 scores per plane.
        for (const ScoredTerm& s : scored_coefficients(planes[k], kInf, fb))
            merged.push_back({s.score, k, s.index, s.coefficient});
    }
    std::sort(merged.begin(), merged.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.index.flat != b.index.flat) return a.index.flat < b.index.flat;
        return a.plane < b.plane;
    });

    MultiplaneResult res;
    for (int k = 0; k < t; ++k) {
        res.planes.push_back(make_rep(n, fb, kInf));
    }
    std::vector<char> index_used(n + 1, 0);
    std::int64_t used = 0;
    for (const Entry& e : merged) {
        std::int64_t cost = costs.value_width;
        if (!index_used[e.index.flat])
            cost += index_bits(e.index, n, costs.coding) + t;  // presence bit-vector
        if (used + cost > budget_bits) {
            res.lower_bound = e.score;
            break;
        }
        used += cost;
        index_used[e.index.flat] = 1;
        res.planes[e.plane].terms.emplace_back(e.index, e.coefficient);
    }
    res.used_bits = used;
    for (int k = 0; k < t; ++k) {
        res.planes[k].budget = static_cast<int>(res.planes[k].terms.size());
        res.planes[k].sort_terms();
        res.planes[k].reported_error =
            lp_error(planes[k], reconstruct(res.planes[k], fb), kInf);
    }
    return res;
}

}  // namespace wavesyn
