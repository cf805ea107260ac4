#pragma once

#include <cstdint>

#include "wavesyn/transform.hpp"

namespace wavesyn {

/// lp norm of the orthonormal basis vector at index i (p in [1, inf],
/// inf encoded as std::numeric_limits<double>::infinity()).  Under
/// periodic boundaries norms depend only on (filter, n, level, kind),
/// so results are cached on that key; the cache is safe under
/// concurrent lookups.
double basis_norm(const WaveletIndex& i, std::int64_t n, const FilterBank& fb,
                  double p);

/// Same, keyed directly by level/kind (kind == ScalingRoot gives the
/// scaling function's norm at that level).
double basis_norm_level(int level, IndexKind kind, std::int64_t n,
                        const FilterBank& fb, double p);

}  // namespace wavesyn
