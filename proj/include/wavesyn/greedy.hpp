#pragma once

#include <cstdint>
#include <vector>

#include "wavesyn/error_metrics.hpp"
#include "wavesyn/representation.hpp"

namespace wavesyn {

struct GreedyStats {
    std::int64_t peak_live_scored = 0;  // heap entries + buffered frontier samples
};

/// One-pass B-term selection: keeps the B coefficients maximizing
/// |<f,psi_i>| / ||psi_i||_{p'} (p' the conjugate exponent), with
/// z_i = <f,psi_i>.  Ties broken toward the smaller flat index.
/// Throws if B > n or B < 0.
Representation greedy_select(const std::vector<double>& f, int B, double p,
                             const FilterBank& fb, GreedyStats* stats = nullptr);

/// Union of the per-p_t top-B sets for p_t in
/// {1 + t/ceil(log2 n), t = 0..L(L-1)} (L = ceil(log2 n)); at most
/// B(log n)^2 + B terms.  Single data pass shared across all p_t.
Representation universal_select(const std::vector<double>& f, int B,
                                const FilterBank& fb);

/// The norm grid used by universal_select.
std::vector<double> universal_norms(std::int64_t n);

/// Query-time extraction from a stored union: the B best terms of
/// `stored` under the l_p score (ties toward smaller flat index).  When
/// the per-p top-B set is contained in the union this reproduces the
/// single-norm greedy representation.
Representation extract_query(const Representation& stored, int B, double p,
                             const FilterBank& fb);

/// Haar signal exhibiting the Omega(log n / log c) greedy gap under
/// l_inf: root coefficient 0, score 1 - 0.1 on the coarse half of the
/// coefficients and score 1 on the finest-support half.  The intended
/// budget is B = n/c - 1.  n and c must be powers of two, c >= 2.
std::vector<double> tight_example(std::int64_t n, std::int64_t c);

}  // namespace wavesyn
