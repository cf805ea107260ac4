#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wavesyn/representation.hpp"

namespace wavesyn {

/// Inner B-term algorithm applied to a contiguous block under the
/// block's own Haar basis.  Must populate reported_error with the lp
/// error on the block.
using InnerAlgorithm =
    std::function<Representation(const std::vector<double>& block, int b)>;

/// Ready-made inner algorithms (Haar basis per block).
InnerAlgorithm inner_greedy(double p);
InnerAlgorithm inner_fptas(double p, double eps);
InnerAlgorithm inner_hybrid(double p, double eps);

struct BlockPick {
    int j = 0;                 // block length 2^j
    std::int64_t shift = 0;    // window start = 2^j * shift
    int budget = 0;
    double error = 0.0;        // lp error within the block
    Representation rep;        // in the block's local Haar basis
};

struct CutSolution {
    std::vector<BlockPick> blocks;  // windows partition [0, n)
    double total_error = 0.0;       // lp-combined across blocks
    std::vector<double> reconstruction;
};

/// Bi-criteria DP over the tree dictionary: each node's table
/// E[b] = min(best split of b across children, inner algorithm on the
/// whole block with budget b); l_inf combines children with max, lp
/// with p-th-power sums.  min_block is the smallest allowed block
/// length (length-1 blocks use the unit-impulse basis).
CutSolution best_basis_select(const std::vector<double>& f, int B, double p,
                              const InnerAlgorithm& inner,
                              std::int64_t min_block = 2);

/// Number of cuts of the dictionary over a signal of length n with the
/// given minimum block length: cuts(min_block) = 1,
/// cuts(L) = 1 + cuts(L/2)^2.
std::int64_t count_cuts(std::int64_t n, std::int64_t min_block);

/// All cuts, each as a sorted list of block start offsets (block
/// lengths are implied by consecutive starts).  n <= 32.
std::vector<std::vector<std::int64_t>> enumerate_cuts(std::int64_t n,
                                                      std::int64_t min_block);

}  // namespace wavesyn
