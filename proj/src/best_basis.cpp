#include "wavesyn/best_basis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "wavesyn/error_metrics.hpp"
#include "wavesyn/greedy.hpp"
#include "wavesyn/haar_dp.hpp"

namespace wavesyn {

namespace {

Representation impulse_rep(double value, int b, double p) {
    // Length-1 block: the only basis vector is the unit impulse.
    Representation rep;
    rep.n = 1;
    rep.basis = "haar";
    rep.scaling = Scaling::Orthonormal;
    rep.p = p;
    rep.budget = b;
    if (b >= 1) {
        rep.terms.emplace_back(WaveletIndex{1, 0, 0, IndexKind::ScalingRoot},
                               value);
        rep.reported_error = 0.0;
    } else {
        rep.reported_error = std::abs(value);
    }
    return rep;
}

Representation run_inner(const InnerAlgorithm& inner,
                         const std::vector<double>& block, int b, double p) {
    if (block.size() == 1) return impulse_rep(block[0], b, p);
    return inner(block, std::min<int>(b, static_cast<int>(block.size())));
}

struct BBNode {
    std::int64_t start = 0;
    std::int64_t len = 0;
    std::vector<double> err;        // powered (plain for l_inf), by budget
    std::vector<char> split;        // 1 = best comes from the child split
    std::vector<int> bl;            // left-child budget when split
    std::vector<Representation> whole;  // inner result per budget
    std::unique_ptr<BBNode> left, right;
};

struct BBContext {
    const std::vector<double>* f;
    int B;
    double p;
    bool linf;
    std::int64_t min_block;
    const InnerAlgorithm* inner;

    double powered(double e) const { return linf ? e : std::pow(e, p); }
    double comb(double a, double b) const { return linf ? std::max(a, b) : a + b; }
};

std::unique_ptr<BBNode> solve(const BBContext& ctx, std::int64_t start,
                              std::int64_t len) {
    auto node = std::make_unique<BBNode>();
    node->start = start;
    node->len = len;
    const int bmax = ctx.B;
    node->err.assign(bmax + 1, kInf);
    node->split.assign(bmax + 1, 0);
    node->bl.assign(bmax + 1, 0);
    node->whole.resize(bmax + 1);

    std::vector<double> block(ctx.f->begin() + start,
                              ctx.f->begin() + start + len);
    for (int b = 0; b <= bmax; ++b) {
        node->whole[b] = run_inner(*ctx.inner, block, b, ctx.p);
        node->err[b] = ctx.powered(node->whole[b].reported_error);
    }
    if (len > ctx.min_block) {
        node->left = solve(ctx, start, len / 2);
        node->right = solve(ctx, start + len / 2, len / 2);
        for (int b = 0; b <= bmax; ++b) {
            for (int b1 = 0; b1 <= b; ++b1) {
                const double e =
                    ctx.comb(node->left->err[b1], node->right->err[b - b1]);
                if (e < node->err[b]) {
                    node->err[b] = e;
                    node->split[b] = 1;
                    node->bl[b] = b1;
                }
            }
        }
    }
    return node;
}

void replay(const BBNode& node, int b, CutSolution& out) {
    if (node.split[b]) {
        replay(*node.left, node.bl[b], out);
        replay(*node.right, b - node.bl[b], out);
        return;
    }
    BlockPick pick;
    pick.j = log2_exact(node.len);
    pick.shift = node.start / node.len;
    pick.budget = b;
    pick.rep = node.whole[b];
    pick.error = pick.rep.reported_error;
    out.blocks.push_back(std::move(pick));
}

}  // namespace

InnerAlgorithm inner_greedy(double p) {
    return [p](const std::vector<double>& block, int b) {
        return greedy_select(block, b, p, FilterBank::haar());
    };
}

InnerAlgorithm inner_fptas(double p, double eps) {
    return [p, eps](const std::vector<double>& block, int b) {
        return fptas(block, b, p, eps);
    };
}

InnerAlgorithm inner_hybrid(double p, double eps) {
    return [p, eps](const std::vector<double>& block, int b) {
        return hybrid(block, b, p, eps);
    };
}

CutSolution best_basis_select(const std::vector<double>& f, int B, double p,
                              const InnerAlgorithm& inner,
                              std::int64_t min_block) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    if (min_block < 1 || !is_power_of_two(min_block) || min_block > n)
        throw std::invalid_argument("min_block must be a power of two <= n");
    if (B < 0 || B > n) throw std::invalid_argument("B must be in [0, n]");
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");

    BBContext ctx{&f, B, p, p == kInf, min_block, &inner};
    const std::unique_ptr<BBNode> root = solve(ctx, 0, n);

    CutSolution out;
    replay(*root, B, out);

    out.reconstruction.assign(n, 0.0);
    const FilterBank haar = FilterBank::haar();
    for (const BlockPick& pick : out.blocks) {
        const std::int64_t start = pick.shift * (std::int64_t{1} << pick.j);
        const std::int64_t len = std::int64_t{1} << pick.j;
        std::vector<double> slice;
        if (len == 1) {
            slice.assign(1, pick.rep.terms.empty() ? 0.0
                                                   : pick.rep.terms[0].second);
        } else {
            slice = reconstruct(pick.rep, haar);
        }
        std::copy(slice.begin(), slice.end(), out.reconstruction.begin() + start);
    }
    out.total_error = lp_error(f, out.reconstruction, p);
    return out;
}

std::int64_t count_cuts(std::int64_t n, std::int64_t min_block) {
    if (n == min_block) return 1;
    const std::int64_t half = count_cuts(n / 2, min_block);
    return 1 + half * half;
}

std::vector<std::vector<std::int64_t>> enumerate_cuts(std::int64_t n,
                                                      std::int64_t min_block) {
    log2_exact(n);
    if (n > 32) throw std::invalid_argument("cut enumeration capped at n <= 32");
    std::function<std::vector<std::vector<std::int64_t>>(std::int64_t, std::int64_t)>
        rec = [&](std::int64_t start, std::int64_t len) {
            std::vector<std::vector<std::int64_t>> out;
            out.push_back({start});
            if (len > min_block) {
                const auto left = rec(start, len / 2);
                const auto right = rec(start + len / 2, len / 2);
                for (const auto& a : left)
                    for (const auto& b : right) {
                        auto merged = a;
                        merged.insert(merged.end(), b.begin(), b.end());
                        out.push_back(std::move(merged));
                    }
            }
            return out;
        };
    return rec(0, n);
}

}  // namespace wavesyn
