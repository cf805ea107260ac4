#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavesyn/haar_dp.hpp"

namespace wavesyn {

namespace {

// Exact restricted DP.  err(m, v)[b] is the minimal subtree error at
// heap node m (children 2m, 2m+1; data leaves at m >= n) given that
// the ancestors contribute the exact value v.  Every call recurses
// with both "coefficient kept" and "dropped" incoming values, so the
// distinct (node, v) pairs mirror the classic O(n^2) table without
// materializing it.
struct RestSolver {
    std::int64_t n;
    int B;
    double p;
    bool linf;
    const std::vector<double>* f;
    const std::vector<double>* y;  // a-scaled coefficients, y[m] at heap m
    const Weights* weights;

    double leaf_err(double v, std::int64_t i) const {
        double d = std::abs(v - (*f)[i]);
        if (weights) d *= weights->w[i];
        return linf ? d : std::pow(d, p);
    }
    double comb(double a, double b) const { return linf ? std::max(a, b) : a + b; }

    int bcap(std::int64_t subtree_leaves) const {
        return static_cast<int>(
            std::min<std::int64_t>(B, subtree_leaves - 1));
    }

    // Error vector over b = 0..bcap for subtree of m with incoming v.
    std::vector<double> solve(std::int64_t m, double v) const {
        const std::int64_t leaves = n / highest_bit(m);
        const int bmax = bcap(leaves);
        const double ym = (*y)[m];
        std::vector<double> out(bmax + 1, kInf);
        if (2 * m >= n) {  // children are data points
            const std::int64_t i = 2 * m - n;
            const double drop = comb(leaf_err(v, i), leaf_err(v, i + 1));
            out[0] = drop;
            if (bmax >= 1)
                out[1] = std::min(
                    drop, comb(leaf_err(v + ym, i), leaf_err(v - ym, i + 1)));
            return out;
        }
        const std::vector<double> l0 = solve(2 * m, v);
        const std::vector<double> r0 = solve(2 * m + 1, v);
        const std::vector<double> l1 = solve(2 * m, v + ym);
        const std::vector<double> r1 = solve(2 * m + 1, v - ym);
        for (int b = 0; b <= bmax; ++b) {
            double best = split_min(l0, r0, b);
            if (b >= 1) best = std::min(best, split_min(l1, r1, b - 1));
            out[b] = best;
        }
        return out;
    }

    double split_min(const std::vector<double>& l, const std::vector<double>& r,
                     int b) const {
        const int lmax = static_cast<int>(l.size()) - 1;
        const int rmax = static_cast<int>(r.size()) - 1;
        const int b1lo = std::max(0, b - rmax);
        const int b1hi = std::min(b, lmax);
        double best = kInf;
        for (int b1 = b1lo; b1 <= b1hi; ++b1)
            best = std::min(best, comb(l[b1], r[std::min(b - b1, rmax)]));
        return best;
    }

    static std::int64_t highest_bit(std::int64_t m) {
        std::int64_t h = 1;
        while (2 * h <= m) h *= 2;
        return h;
    }

    // Re-derives the argmin path, appending retained coefficients.
    void replay(std::int64_t m, double v, int b, double target,
                Representation& rep) const {
        const double ym = (*y)[m];
        if (2 * m >= n) {
            const std::int64_t i = 2 * m - n;
            const double drop = comb(leaf_err(v, i), leaf_err(v, i + 1));
            if (b >= 1 &&
                comb(leaf_err(v + ym, i), leaf_err(v - ym, i + 1)) < drop) {
                rep.terms.emplace_back(WaveletIndex::from_flat(m + 1, n), ym);
            }
            return;
        }
        const std::vector<double> l0 = solve(2 * m, v);
        const std::vector<double> r0 = solve(2 * m + 1, v);
        // Prefer the "dropped" branch on ties for determinism.
        {
            const int lmax = static_cast<int>(l0.size()) - 1;
            const int rmax = static_cast<int>(r0.size()) - 1;
            for (int b1 = std::max(0, b - rmax); b1 <= std::min(b, lmax); ++b1) {
                const int b2 = std::min(b - b1, rmax);
                if (comb(l0[b1], r0[b2]) <= target) {
                    replay(2 * m, v, b1, l0[b1], rep);
                    replay(2 * m + 1, v, b2, r0[b2], rep);
                    return;
                }
            }
        }
        const std::vector<double> l1 = solve(2 * m, v + ym);
        const std::vector<double> r1 = solve(2 * m + 1, v - ym);
        const int lmax = static_cast<int>(l1.size()) - 1;
        const int rmax = static_cast<int>(r1.size()) - 1;
        const int bb = b - 1;
        for (int b1 = std::max(0, bb - rmax); b1 <= std::min(bb, lmax); ++b1) {
            const int b2 = std::min(bb - b1, rmax);
            if (comb(l1[b1], r1[b2]) <= target) {
                rep.terms.emplace_back(WaveletIndex::from_flat(m + 1, n), ym);
                replay(2 * m, v + ym, b1, l1[b1], rep);
                replay(2 * m + 1, v - ym, b2, r1[b2], rep);
                return;
            }
        }
        throw std::logic_error("restricted replay lost the argmin path");
    }
};

}  // namespace

Representation rest_optimal(const std::vector<double>& f, int B, double p,
                            const Weights* weights) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    if (n > kRestCap)
        throw std::invalid_argument(
            "rest_optimal is quadratic and capped at n = " +
            std::to_string(kRestCap) + "; use hybrid for longer inputs");
    if (B < 0 || B > n) throw std::invalid_argument("B must be in [0, n]");
    if (weights && static_cast<std::int64_t>(weights->w.size()) != n)
        throw std::invalid_argument("weights length mismatch");

    const FilterBank haar = FilterBank::haar();
    const CoefficientVector ca = cascade_forward(f, haar, Scaling::AScaled);

    Representation rep;
    rep.n = n;
    rep.basis = "haar";
    rep.scaling = Scaling::AScaled;
    rep.p = p;
    rep.budget = B;

    RestSolver solver{n, B, p, p == kInf, &f, &ca.values, weights};
    // ca.values[m] is the detail coefficient of heap node m (flat m+1);
    // ca.values[0] is the root scaling coefficient.
    const double a0 = ca.values[0];

    if (n == 1 || B == 0) {
        rep.reported_error = lp_norm(f, p, weights);
        if (n == 1 && B >= 1) {
            rep.terms.emplace_back(WaveletIndex::root(n), a0);
            rep.reported_error = 0.0;
        }
        return rep;
    }

    const std::vector<double> skip = solver.solve(1, 0.0);
    const int cap = static_cast<int>(skip.size()) - 1;
    const double e_skip = skip[std::min(B, cap)];
    double e_keep = kInf;
    std::vector<double> keep;
    if (B >= 1) {
        keep = solver.solve(1, a0);
        e_keep = keep[std::min(B - 1, cap)];
    }

    if (e_skip <= e_keep) {
        solver.replay(1, 0.0, std::min(B, cap), e_skip, rep);
    } else {
        rep.terms.emplace_back(WaveletIndex::root(n), a0);
        solver.replay(1, a0, std::min(B - 1, cap), e_keep, rep);
    }
    rep.sort_terms();
    rep.reported_error = lp_error(f, reconstruct(rep, haar), p, weights);
    return rep;
}

}  // namespace wavesyn
