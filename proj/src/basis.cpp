#include "wavesyn/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "wavesyn/error_metrics.hpp"

namespace wavesyn {

namespace {

// Materializes phi_{level,0} or psi_{level,0} (orthonormal) at length n
// by synthesizing a unit coefficient up from `level`.
std::vector<double> materialize(int level, IndexKind kind, std::int64_t n,
                                const FilterBank& fb) {
    const int J = log2_exact(n);
    const int taps = static_cast<int>(fb.h.size());
    std::vector<double> a;
    std::vector<double> d;
    const std::int64_t top = n >> level;  // length at `level`
    a.assign(top, 0.0);
    d.assign(top, 0.0);
    (void)J;
    if (kind == IndexKind::ScalingRoot) {
        a[0] = 1.0;
    } else {
        d[0] = 1.0;
    }
    std::vector<double> cur(top * 2, 0.0);
    for (std::int64_t s = 0; s < top; ++s) {
        for (int k = 0; k < taps; ++k) {
            cur[(2 * s + k) % (top * 2)] += fb.h[k] * a[s] + fb.g[k] * d[s];
        }
    }
    for (int j = level - 1; j >= 1; --j) {
        const std::int64_t half = n >> j;
        std::vector<double> next(half * 2, 0.0);
        for (std::int64_t s = 0; s < half; ++s) {
            for (int k = 0; k < taps; ++k) {
                next[(2 * s + k) % (half * 2)] += fb.h[k] * cur[s];
            }
        }
        cur.swap(next);
    }
    return cur;
}

using Key = std::tuple<std::string, std::int64_t, int, int, double>;

std::mutex cache_mutex;
std::map<Key, double>& cache() {
    static std::map<Key, double> c;
    return c;
}

}  // namespace

double basis_norm_level(int level, IndexKind kind, std::int64_t n,
                        const FilterBank& fb, double p) {
    if (level < 0 || level > log2_exact(n))
        throw std::invalid_argument("invalid level");
    if (level == 0 && kind == IndexKind::Detail)
        throw std::invalid_argument("detail levels start at 1");
    if (level == 0) return 1.0;  // phi_0 = unit impulse
    const Key key{fb.name, n, level, kind == IndexKind::Detail ? 1 : 0, p};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    const std::vector<double> v = materialize(level, kind, n, fb);
    const double norm = lp_norm(v, p);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache().emplace(key, norm);  // idempotent fill
    return norm;
}

double basis_norm(const WaveletIndex& i, std::int64_t n, const FilterBank& fb,
                  double p) {
    return basis_norm_level(i.level, i.kind, n, fb, p);
}

}  // namespace wavesyn
