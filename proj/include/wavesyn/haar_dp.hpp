#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavesyn/error_metrics.hpp"
#include "wavesyn/representation.hpp"

namespace wavesyn {

/// Instrumentation for one solver invocation.
struct DpStats {
    int dp_runs = 0;                      // guess rungs actually evaluated
    std::int64_t peak_live_tables = 0;    // error tables alive at once (max over rungs)
    std::int64_t table_entries_total = 0; // sum of table sizes over all runs
    double wall_ms = 0.0;
    std::vector<std::string> rung_csv;    // "guess,grid_step,peak_tables,entries,error"
};

enum class RoundingScheme {
    Auto,   // fine-grain for finite p when its predicted work is smaller
    Coarse, // single global step (Lemma-5 style)
    Fine    // per-level search steps re-rounded to the root step
};

/// Streaming Haar FPTAS for the unrestricted B-term problem:
/// error <= (1+eps) x the unrestricted optimum under lp (weighted when
/// weights given).  Returns an a-scaled representation whose reported
/// error is recomputed from the reconstruction.
Representation fptas(const std::vector<double>& f, int B, double p, double eps,
                     const Weights* weights = nullptr, DpStats* stats = nullptr,
                     RoundingScheme scheme = RoundingScheme::Auto);

/// Forces the per-level (fine-grain) rounding scheme; finite p only.
Representation fptas_finegrain(const std::vector<double>& f, int B, double p,
                               double eps, const Weights* weights = nullptr,
                               DpStats* stats = nullptr);

/// Restricted-search streaming variant: per node the candidate values
/// are rounding <f,psi^a_i> down/up to the grid (the root scaling
/// coefficient still ranges over its full band).  Error <= (1+eps) x
/// the restricted optimum.
Representation hybrid(const std::vector<double>& f, int B, double p, double eps,
                      const Weights* weights = nullptr, DpStats* stats = nullptr);

/// Exact optimum over representations that retain wavelet coefficients
/// of f (the restricted problem).  O(n^2) time; rejects n beyond the
/// cap with guidance to use hybrid.
Representation rest_optimal(const std::vector<double>& f, int B, double p,
                            const Weights* weights = nullptr);

inline constexpr std::int64_t kRestCap = 16384;

/// sqrt(1+eps) - 1 : the per-stage budget making two
/// multiplicative (1+eps') stages compose to (1+eps).
double eps_prime(double eps);

}  // namespace wavesyn
