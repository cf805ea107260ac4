#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavesyn/filter_bank.hpp"

namespace wavesyn {

/// Grayscale image; pixels kept as reals until emission.
struct Image {
    std::int64_t width = 0;
    std::int64_t height = 0;
    int maxval = 255;
    std::vector<double> pixels;  // row-major

    double at(std::int64_t r, std::int64_t c) const { return pixels[r * width + c]; }
    double& at(std::int64_t r, std::int64_t c) { return pixels[r * width + c]; }
};

/// 2D coefficient matrix in the nonstandard (square) pyramid layout:
/// at each level the active top-left block splits into
/// [[LL, HL], [LH, HH]] and recursion continues on LL.
struct Coefficients2D {
    std::int64_t width = 0;
    std::int64_t height = 0;
    std::vector<double> values;  // row-major

    double at(std::int64_t r, std::int64_t c) const { return values[r * width + c]; }
    double& at(std::int64_t r, std::int64_t c) { return values[r * width + c]; }
};

/// Subband identity of a coefficient position.
struct Subband2D {
    int level = 0;        // j >= 1; root scaling has level = log2 n, band = 0
    int band = 0;         // 0 = scaling root, 1 = HL, 2 = LH, 3 = HH
    std::int64_t s1 = 0;  // row shift
    std::int64_t s2 = 0;  // column shift
};

Subband2D subband_of(std::int64_t r, std::int64_t c, std::int64_t n);

/// Orthonormal nonstandard 2D transform (rows then columns per level);
/// square power-of-two images only.
Coefficients2D transform2d(const Image& img, const FilterBank& fb);
Image inverse2d(const Coefficients2D& coeffs, const FilterBank& fb, int maxval);

/// lp norm of the 2D basis vector at a coefficient position (product
/// of the two 1D factor norms).
double basis_norm2d(std::int64_t r, std::int64_t c, std::int64_t n,
                    const FilterBank& fb, double p);

struct Greedy2DResult {
    Coefficients2D kept;           // retained coefficients, rest zeroed
    Image reconstruction;          // unclamped real-valued pixels
    double error = 0.0;            // lp error vs the input
    std::int64_t terms = 0;
};

/// Keeps the B coefficients maximizing |w_i| / ||psi_i||_{p'}; ties
/// broken toward the smaller row-major position.
Greedy2DResult greedy2d(const Image& img, std::int64_t B, double p,
                        const FilterBank& fb);

/// PGM I/O (P2 ASCII and P5 binary, 8-bit).  Writing emits canonical
/// headers; pixels are clamped to [0, maxval] and rounded at emission.
Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img, bool binary = true);

}  // namespace wavesyn
