#pragma once

#include <cstdint>
#include <vector>

#include "wavesyn/representation.hpp"

namespace wavesyn {

/// How many bits the flat index of a coefficient costs.
enum class IndexCoding {
    Flat,       // ceil(log2 n) per index
    ScaleAware  // ceil(log2 log2 n) + ceil(log2 (n / 2^j)) + 2
};

std::int64_t index_bits(const WaveletIndex& i, std::int64_t n, IndexCoding mode);

/// Fixed-point value cost model: storing a value with "width" bits
/// quantizes it to a grid of step value_range / 2^width, i.e. the
/// quantization error is at most value_range / 2^{width+1}.
struct ValueCostModel {
    int max_width = 32;
    double value_range = 0.0;  // 0 => derived from the data (2 * max |coef|)

    /// Least width whose quantization error fits tol; -1 if none does.
    int min_width_for(double tol) const;
    double quantize(double v, int width) const;
};

/// Per-index fixed bit costs (spectrum model).  Costs default to
/// index_bits + value_width when the explicit table is empty.
struct CostModel {
    std::vector<std::int64_t> fixed_cost;  // indexed by flat-1; may be empty
    IndexCoding coding = IndexCoding::Flat;
    int value_width = 32;

    std::int64_t cost_of(const WaveletIndex& i, std::int64_t n) const;
};

struct SpectrumResult {
    Representation rep;
    std::int64_t used_bits = 0;
    double lower_bound = 0.0;  // score of the first unchosen coefficient
};

/// Includes coefficients in non-increasing score order while they fit
/// the bit budget; stops at the first coefficient that does not fit
/// and reports its score as a certified lower bound on the
/// unrestricted optimum (0 if everything fits).
SpectrumResult spectrum_select(const std::vector<double>& f,
                               const CostModel& costs,
                               std::int64_t budget_bits, double p,
                               const FilterBank& fb);

struct BitComplexityResult {
    Representation rep;
    std::int64_t used_bits = 0;
    bool feasible = true;
    double guess = 0.0;  // the accepted error-guess rung
};

/// Value-dependent costs c_i + b(z_i): runs a doubling ladder of error
/// guesses t; per guess keeps every coefficient with score > t, stored
/// at the cheapest width whose quantization error stays within
/// t * ||psi_i||_{p'}; returns the smallest-guess run that fits the
/// budget.  Per-rung accumulation is capped at 2x the budget before
/// the rung is falsified.
BitComplexityResult bitcomplexity_select(const std::vector<double>& f,
                                         const CostModel& costs,
                                         const ValueCostModel& values,
                                         std::int64_t budget_bits, double p,
                                         const FilterBank& fb);

struct MultiplaneResult {
    std::vector<Representation> planes;
    std::int64_t used_bits = 0;
    double lower_bound = 0.0;
};

/// Shared-index selection across t equal-length planes under l_inf:
/// greedy insertion in the merged score order; the index record
/// (index bits + t-bit presence vector) is charged only the first time
/// an index is used.
MultiplaneResult multiplane_select(const std::vector<std::vector<double>>& planes,
                                   const CostModel& costs,
                                   std::int64_t budget_bits,
                                   const FilterBank& fb);

}  // namespace wavesyn
