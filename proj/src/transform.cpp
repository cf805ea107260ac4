#include "wavesyn/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace wavesyn {

std::string to_string(Scaling s) {
    switch (s) {
        case Scaling::Orthonormal: return "orthonormal";
        case Scaling::AScaled: return "a-scaled";
        case Scaling::BScaled: return "b-scaled";
    }
    return "orthonormal";
}

Scaling scaling_from_string(const std::string& s) {
    if (s == "orthonormal") return Scaling::Orthonormal;
    if (s == "a-scaled" || s == "a") return Scaling::AScaled;
    if (s == "b-scaled" || s == "b") return Scaling::BScaled;
    throw std::invalid_argument("unknown scaling tag: " + s);
}

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::int64_t n) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("length must be a power of two, got " +
                                    std::to_string(n));
    int j = 0;
    while ((std::int64_t{1} << j) < n) ++j;
    return j;
}

WaveletIndex WaveletIndex::root(std::int64_t n) {
    return WaveletIndex{1, log2_exact(n), 0, IndexKind::ScalingRoot};
}

WaveletIndex WaveletIndex::detail(int level, std::int64_t shift, std::int64_t n) {
    const int J = log2_exact(n);
    if (level < 1 || level > J)
        throw std::invalid_argument("detail level out of range");
    const std::int64_t width = n >> level;  // n / 2^level shifts
    if (shift < 0 || shift >= width)
        throw std::invalid_argument("detail shift out of range");
    return WaveletIndex{width + shift + 1, level, shift, IndexKind::Detail};
}

WaveletIndex WaveletIndex::from_flat(std::int64_t flat, std::int64_t n) {
    const int J = log2_exact(n);
    if (flat < 1 || flat > n)
        throw std::invalid_argument("flat index out of range");
    if (flat == 1) return root(n);
    const std::int64_t m = flat - 1;  // in [1, n-1]
    int k = 0;
    while ((std::int64_t{2} << k) <= m) ++k;  // k = floor(log2 m)
    const int level = J - k;
    const std::int64_t shift = m - (std::int64_t{1} << k);
    return WaveletIndex{flat, level, shift, IndexKind::Detail};
}

namespace {

std::vector<double> scaled_filter(const std::vector<double>& h, Scaling scaling) {
    double factor = 1.0;
    if (scaling == Scaling::AScaled) factor = 1.0 / std::sqrt(2.0);
    if (scaling == Scaling::BScaled) factor = std::sqrt(2.0);
    std::vector<double> out(h.size());
    for (size_t k = 0; k < h.size(); ++k) out[k] = factor * h[k];
    return out;
}

Scaling synthesis_tag(Scaling analysis) {
    switch (analysis) {
        case Scaling::Orthonormal: return Scaling::Orthonormal;
        case Scaling::AScaled: return Scaling::BScaled;  // sum c^a psi^b = f
        case Scaling::BScaled: return Scaling::AScaled;
    }
    return Scaling::Orthonormal;
}

void check_finite(const std::vector<double>& f) {
    for (size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i]))
            throw std::invalid_argument("non-finite input at position " +
                                        std::to_string(i));
}

}  // namespace

CoefficientVector cascade_forward(const std::vector<double>& f,
                                  const FilterBank& fb, Scaling scaling) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    const int J = log2_exact(n);
    if (n < 2) throw std::invalid_argument("signal length must be >= 2");
    check_finite(f);

    const std::vector<double> h = scaled_filter(fb.h, scaling);
    const std::vector<double> g = scaled_filter(fb.g, scaling);
    const int taps = static_cast<int>(h.size());

    CoefficientVector out;
    out.n = n;
    out.scaling = scaling;
    out.values.assign(n, 0.0);

    std::vector<double> a = f;
    for (int j = 1; j <= J; ++j) {
        const std::int64_t len = n >> (j - 1);
        const std::int64_t half = len / 2;
        std::vector<double> next(half);
        for (std::int64_t t = 0; t < half; ++t) {
            double av = 0.0, dv = 0.0;
            for (int k = 0; k < taps; ++k) {
                const double s = a[(2 * t + k) % len];
                av += h[k] * s;
                dv += g[k] * s;
            }
            next[t] = av;
            out.values[half + t] = dv;  // flat = n/2^j + t + 1
        }
        a.swap(next);
    }
    out.values[0] = a[0];
    return out;
}

std::vector<double> cascade_inverse(const CoefficientVector& c,
                                    const FilterBank& fb) {
    const std::int64_t n = c.n;
    const int J = log2_exact(n);
    if (static_cast<std::int64_t>(c.values.size()) != n)
        throw std::invalid_argument("coefficient count does not match n");

    const std::vector<double> h = scaled_filter(fb.h, synthesis_tag(c.scaling));
    const std::vector<double> g = scaled_filter(fb.g, synthesis_tag(c.scaling));
    const int taps = static_cast<int>(h.size());

    std::vector<double> a{c.values[0]};
    for (int j = J; j >= 1; --j) {
        const std::int64_t half = n >> j;
        const std::int64_t len = half * 2;
        std::vector<double> next(len, 0.0);
        for (std::int64_t s = 0; s < half; ++s) {
            const double av = a[s];
            const double dv = c.values[half + s];
            for (int k = 0; k < taps; ++k) {
                next[(2 * s + k) % len] += h[k] * av + g[k] * dv;
            }
        }
        a.swap(next);
    }
    return a;
}

std::vector<double> basis_vector(const WaveletIndex& i, std::int64_t n,
                                 const FilterBank& fb, Scaling scaling) {
    CoefficientVector c;
    c.n = n;
    // A unit coefficient synthesized with the X-scaled filters yields
    // the X-scaled basis vector; synthesis_tag maps analysis->synthesis,
    // so request the analysis tag whose synthesis is `scaling`.
    c.scaling = synthesis_tag(scaling);
    c.values.assign(n, 0.0);
    if (i.flat < 1 || i.flat > n)
        throw std::invalid_argument("invalid basis index");
    c.values[i.flat - 1] = 1.0;
    return cascade_inverse(c, fb);
}

}  // namespace wavesyn
