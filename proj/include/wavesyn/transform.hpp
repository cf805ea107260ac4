#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavesyn/filter_bank.hpp"

namespace wavesyn {

/// Basis normalization convention.
///   Orthonormal : psi_{j,s}, unit l2 norm.
///   AScaled     : psi^a = 2^{-j/2} psi  (analysis side of the biorthogonal
///                 a/b pair; computed by cascading with h/sqrt(2)).
///   BScaled     : psi^b = 2^{j/2} psi   (synthesis side; h*sqrt(2)).
enum class Scaling { Orthonormal, AScaled, BScaled };

std::string to_string(Scaling s);
Scaling scaling_from_string(const std::string& s);

enum class IndexKind { ScalingRoot, Detail };

/// Canonical bijection between flat indices [1, n] and (level, shift).
/// flat 1 is the root scaling coefficient (level log2 n).  A detail
/// coefficient produced at cascade level j (support 2^j, shifts
/// 0..n/2^j - 1) lives at flat = n/2^j + s + 1, so levels are ordered
/// coarse to fine and shifts left to right.
struct WaveletIndex {
    std::int64_t flat = 1;
    int level = 0;           // cascade level j; root scaling has j = log2 n
    std::int64_t shift = 0;  // s in [0, n/2^j)
    IndexKind kind = IndexKind::ScalingRoot;

    static WaveletIndex from_flat(std::int64_t flat, std::int64_t n);
    static WaveletIndex detail(int level, std::int64_t shift, std::int64_t n);
    static WaveletIndex root(std::int64_t n);

    bool operator==(const WaveletIndex& o) const { return flat == o.flat; }
};

/// Full transform output; values[flat - 1] holds the coefficient at
/// that flat index.
struct CoefficientVector {
    std::int64_t n = 0;
    Scaling scaling = Scaling::Orthonormal;
    std::vector<double> values;

    double at(const WaveletIndex& i) const { return values[i.flat - 1]; }
    double& at(const WaveletIndex& i) { return values[i.flat - 1]; }
};

bool is_power_of_two(std::int64_t n);
int log2_exact(std::int64_t n);

/// Forward cascade with periodic (circular) boundary handling.
/// Throws std::invalid_argument on non-power-of-two length or
/// non-finite input.
CoefficientVector cascade_forward(const std::vector<double>& f,
                                  const FilterBank& fb,
                                  Scaling scaling = Scaling::Orthonormal);

/// Inverse cascade.  For AScaled input, synthesis uses the b-scaled
/// filters (and vice versa) so that sum_i <f,psi^a_i> psi^b_i = f.
std::vector<double> cascade_inverse(const CoefficientVector& c,
                                    const FilterBank& fb);

/// Materializes a single basis vector under the requested scaling by
/// inverting a unit coefficient.  For AScaled this yields psi^a (the
/// vector whose b-synthesis pairs with it is materialized by BScaled).
std::vector<double> basis_vector(const WaveletIndex& i, std::int64_t n,
                                 const FilterBank& fb,
                                 Scaling scaling = Scaling::Orthonormal);

}  // namespace wavesyn
