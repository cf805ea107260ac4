#include "wavesyn/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "wavesyn/basis.hpp"
#include "wavesyn/streaming.hpp"

namespace wavesyn {

namespace {

struct Scored {
    double score;
    std::int64_t flat;
    WaveletIndex index;
    double coefficient;
};

// True when a should be evicted before b (a is "worse"): lower score,
// or equal score with larger flat index.
struct WorseFirst {
    bool operator()(const Scored& a, const Scored& b) const {
        if (a.score != b.score) return a.score > b.score;
        return a.flat < b.flat;
    }
};

class TopB {
  public:
    explicit TopB(int B) : B_(B) {}

    void offer(const Scored& s) {
        if (B_ == 0) return;
        if (static_cast<int>(heap_.size()) < B_) {
            heap_.push(s);
            return;
        }
        const Scored& worst = heap_.top();
        const bool better = s.score > worst.score ||
                            (s.score == worst.score && s.flat < worst.flat);
        if (better) {
            heap_.pop();
            heap_.push(s);
        }
    }

    std::size_t size() const { return heap_.size(); }

    std::vector<Scored> drain() {
        std::vector<Scored> out;
        while (!heap_.empty()) {
            out.push_back(heap_.top());
            heap_.pop();
        }
        return out;
    }

  private:
    int B_;
    std::priority_queue<Scored, std::vector<Scored>, WorseFirst> heap_;
};

}  // namespace

Representation greedy_select(const std::vector<double>& f, int B, double p,
                             const FilterBank& fb, GreedyStats* stats) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    if (B < 0 || B > n) throw std::invalid_argument("B must be in [0, n]");
    const double pc = conjugate_exponent(p);

    TopB top(B);
    std::int64_t peak = 0;
    StreamingCascade cascade(
        n, fb, Scaling::Orthonormal,
        [&](const WaveletIndex& idx, double value) {
            const double norm = basis_norm(idx, n, fb, pc);
            top.offer({std::abs(value) / norm, idx.flat, idx, value});
        });
    for (double v : f) {
        cascade.push(v);
        peak = std::max(peak,
                        cascade.live_values() + static_cast<std::int64_t>(top.size()));
    }
    cascade.finalize();
    if (stats) stats->peak_live_scored = peak;

    Representation rep;
    rep.n = n;
    rep.basis = fb.name;
    rep.scaling = Scaling::Orthonormal;
    rep.p = p;
    rep.budget = B;
    for (const Scored& s : top.drain())
        rep.terms.emplace_back(s.index, s.coefficient);
    rep.sort_terms();
    rep.reported_error = lp_error(f, reconstruct(rep, fb), p);
    return rep;
}

std::vector<double> universal_norms(std::int64_t n) {
    const int L = log2_exact(n);
    std::vector<double> out;
    for (int t = 0; t <= L * (L - 1); ++t)
        out.push_back(1.0 + static_cast<double>(t) / L);
    return out;
}

Representation universal_select(const std::vector<double>& f, int B,
                                const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    if (B < 0 || B > n) throw std::invalid_argument("B must be in [0, n]");
    const std::vector<double> norms = universal_norms(n);

    std::vector<double> conjugates;
    for (double pt : norms) conjugates.push_back(conjugate_exponent(pt));
    std::vector<TopB> tops(norms.size(), TopB(B));

    StreamingCascade cascade(
        n, fb, Scaling::Orthonormal,
        [&](const WaveletIndex& idx, double value) {
            for (size_t k = 0; k < norms.size(); ++k) {
                const double norm = basis_norm(idx, n, fb, conjugates[k]);
                tops[k].offer({std::abs(value) / norm, idx.flat, idx, value});
            }
        });
    for (double v : f) cascade.push(v);
    cascade.finalize();

    std::vector<char> taken(n + 1, 0);
    Representation rep;
    rep.n = n;
    rep.basis = fb.name;
    rep.scaling = Scaling::Orthonormal;
    rep.p = 2.0;
    rep.budget = B;
    for (TopB& top : tops) {
        for (const Scored& s : top.drain()) {
            if (!taken[s.flat]) {
                taken[s.flat] = 1;
                rep.terms.emplace_back(s.index, s.coefficient);
            }
        }
    }
    rep.sort_terms();
    rep.reported_error = lp_error(f, reconstruct(rep, fb), 2.0);
    return rep;
}

Representation extract_query(const Representation& stored, int B, double p,
                             const FilterBank& fb) {
    if (B < 0) throw std::invalid_argument("B must be non-negative");
    const double pc = conjugate_exponent(p);
    TopB top(B);
    for (const auto& [idx, value] : stored.terms) {
        const double norm = basis_norm(idx, stored.n, fb, pc);
        top.offer({std::abs(value) / norm, idx.flat, idx, value});
    }
    Representation rep;
    rep.n = stored.n;
    rep.basis = stored.basis;
    rep.scaling = stored.scaling;
    rep.p = p;
    rep.budget = B;
    for (const Scored& s : top.drain())
        rep.terms.emplace_back(s.index, s.coefficient);
    rep.sort_terms();
    rep.reported_error = stored.reported_error;
    return rep;
}

std::vector<double> tight_example(std::int64_t n, std::int64_t c) {
    if (!is_power_of_two(n) || !is_power_of_two(c) || c < 2 || c >= n)
        throw std::invalid_argument("n and c must be powers of two with 2 <= c < n");
    const int J = log2_exact(n);
    constexpr double kCoarseGap = 0.1;  // coarse score = 1 - kCoarseGap

    const FilterBank haar = FilterBank::haar();
    CoefficientVector coeffs;
    coeffs.n = n;
    coeffs.scaling = Scaling::Orthonormal;
    coeffs.values.assign(n, 0.0);
    for (std::int64_t flat = 2; flat <= n; ++flat) {
        const WaveletIndex idx = WaveletIndex::from_flat(flat, n);
        // Orthonormal Haar psi at level j has l1 norm 2^{j/2}.
        const double norm1 = std::pow(2.0, idx.level / 2.0);
        const double ratio = (idx.level == 1) ? 1.0 : 1.0 - kCoarseGap;
        coeffs.values[flat - 1] = ratio * norm1;
    }
    (void)J;
    return cascade_inverse(coeffs, haar);
}

}  // namespace wavesyn
