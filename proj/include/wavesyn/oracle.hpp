#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wavesyn/representation.hpp"

namespace wavesyn {

struct OracleResult {
    double error = 0.0;
    std::vector<WaveletIndex> support;
    std::vector<double> values;
};

inline constexpr std::int64_t kOracleCapN = 16;
inline constexpr int kOracleCapB = 4;

/// Exhaustive optimum of the unrestricted B-term problem: enumerates
/// all supports; per support minimizes the convex map
/// z -> ||f - sum z_i psi_i||_p exactly (closed form for p=2, linear
/// programming for p in {1, inf}, coordinate descent with
/// golden-section line search for other p).  n <= 16, B <= 4.
OracleResult brute_force_unrestricted(const std::vector<double>& f, int B,
                                      double p, const FilterBank& fb);

/// Exhaustive optimum with values fixed to <f, psi_i>.
OracleResult brute_force_restricted(const std::vector<double>& f, int B,
                                    double p, const FilterBank& fb);

/// Minimum lp error achievable on `f` restricted to a support set,
/// with free values (the per-support inner solve of
/// brute_force_unrestricted); exposed for reuse in tests.
double min_error_over_support(const std::vector<double>& f,
                              const std::vector<WaveletIndex>& support,
                              double p, const FilterBank& fb,
                              std::vector<double>* best_values = nullptr);

/// Inner solver handle for cut enumeration: returns the error of the
/// handle's algorithm on a contiguous block with budget b.
using BlockSolver =
    std::function<double(const std::vector<double>& block, int b)>;

struct CutOracleResult {
    double error = 0.0;                 // lp-combined across blocks
    std::vector<std::int64_t> starts;   // block start offsets of the best cut
    std::vector<int> budgets;           // per-block budgets
};

/// Enumerates every cut of the dyadic tree dictionary over [0, n)
/// (blocks no smaller than min_block) and every budget split of B
/// across the cut's blocks, scoring each with the supplied solver.
/// n <= 32.
CutOracleResult brute_force_cut(const std::vector<double>& f, int B, double p,
                                std::int64_t min_block,
                                const BlockSolver& solver);

}  // namespace wavesyn
