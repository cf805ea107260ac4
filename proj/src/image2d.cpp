#include "wavesyn/image2d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wavesyn/basis.hpp"
#include "wavesyn/error_metrics.hpp"
#include "wavesyn/signal_io.hpp"
#include "wavesyn/transform.hpp"

namespace wavesyn {

namespace {

void check_square_pow2(std::int64_t w, std::int64_t h) {
    if (w != h || !is_power_of_two(w) || w < 2)
        throw std::invalid_argument(
            "2D transform requires a square power-of-two image");
}

// One analysis step along a length-len line: len/2 approximations
// followed by len/2 details (periodic convolution).
void analyze_line(const std::vector<double>& in, std::vector<double>& out,
                  std::int64_t len, const FilterBank& fb) {
    const int taps = static_cast<int>(fb.h.size());
    for (std::int64_t t = 0; t < len / 2; ++t) {
        double av = 0.0, dv = 0.0;
        for (int k = 0; k < taps; ++k) {
            const double s = in[(2 * t + k) % len];
            av += fb.h[k] * s;
            dv += fb.g[k] * s;
        }
        out[t] = av;
        out[len / 2 + t] = dv;
    }
}

void synthesize_line(const std::vector<double>& in, std::vector<double>& out,
                     std::int64_t len, const FilterBank& fb) {
    const int taps = static_cast<int>(fb.h.size());
    std::fill(out.begin(), out.begin() + len, 0.0);
    for (std::int64_t s = 0; s < len / 2; ++s) {
        const double av = in[s];
        const double dv = in[len / 2 + s];
        for (int k = 0; k < taps; ++k)
            out[(2 * s + k) % len] += fb.h[k] * av + fb.g[k] * dv;
    }
}

}  // namespace

Subband2D subband_of(std::int64_t r, std::int64_t c, std::int64_t n) {
    const int J = log2_exact(n);
    Subband2D sb;
    if (r == 0 && c == 0) {
        sb.level = J;
        sb.band = 0;
        return sb;
    }
    // The coefficient at (r, c) belongs to the finest level j such that
    // (r, c) lies outside the 2^{J-j} x 2^{J-j} LL block.
    for (int j = 1; j <= J; ++j) {
        const std::int64_t half = n >> j;  // block size at level j
        if (r < 2 * half && c < 2 * half && (r >= half || c >= half)) {
            sb.level = j;
            sb.band = (r >= half ? 2 : 0) + (c >= half ? 1 : 0);  // HL=1, LH=2, HH=3
            sb.s1 = r % half;
            sb.s2 = c % half;
            return sb;
        }
    }
    throw std::logic_error("unreachable subband classification");
}

Coefficients2D transform2d(const Image& img, const FilterBank& fb) {
    check_square_pow2(img.width, img.height);
    const std::int64_t n = img.width;
    for (double v : img.pixels)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite pixel");

    Coefficients2D out;
    out.width = out.height = n;
    out.values = img.pixels;

    std::vector<double> line(n), tmp(n);
    for (std::int64_t size = n; size >= 2; size /= 2) {
        // Rows of the active top-left block.
        for (std::int64_t r = 0; r < size; ++r) {
            for (std::int64_t c = 0; c < size; ++c) line[c] = out.at(r, c);
            analyze_line(line, tmp, size, fb);
            for (std::int64_t c = 0; c < size; ++c) out.at(r, c) = tmp[c];
        }
        // Columns.
        for (std::int64_t c = 0; c < size; ++c) {
            for (std::int64_t r = 0; r < size; ++r) line[r] = out.at(r, c);
            analyze_line(line, tmp, size, fb);
            for (std::int64_t r = 0; r < size; ++r) out.at(r, c) = tmp[r];
        }
    }
    return out;
}

Image inverse2d(const Coefficients2D& coeffs, const FilterBank& fb, int maxval) {
    check_square_pow2(coeffs.width, coeffs.height);
    const std::int64_t n = coeffs.width;

    Image out;
    out.width = out.height = n;
    out.maxval = maxval;
    out.pixels = coeffs.values;

    std::vector<double> line(n), tmp(n);
    for (std::int64_t size = 2; size <= n; size *= 2) {
        for (std::int64_t c = 0; c < size; ++c) {
            for (std::int64_t r = 0; r < size; ++r) line[r] = out.at(r, c);
            synthesize_line(line, tmp, size, fb);
            for (std::int64_t r = 0; r < size; ++r) out.at(r, c) = tmp[r];
        }
        for (std::int64_t r = 0; r < size; ++r) {
            for (std::int64_t c = 0; c < size; ++c) line[c] = out.at(r, c);
            synthesize_line(line, tmp, size, fb);
            for (std::int64_t c = 0; c < size; ++c) out.at(r, c) = tmp[c];
        }
    }
    return out;
}

double basis_norm2d(std::int64_t r, std::int64_t c, std::int64_t n,
                    const FilterBank& fb, double p) {
    const Subband2D sb = subband_of(r, c, n);
    // Tensor basis vector = (row factor) x (column factor); its lp norm
    // is the product of the 1D factor norms.
    if (sb.band == 0) {
        const double s = basis_norm_level(sb.level, IndexKind::ScalingRoot, n, fb, p);
        return s * s;
    }
    const double lo = basis_norm_level(sb.level, IndexKind::ScalingRoot, n, fb, p);
    const double hi = basis_norm_level(sb.level, IndexKind::Detail, n, fb, p);
    switch (sb.band) {
        case 1: return lo * hi;  // HL: low rows, high columns
        case 2: return hi * lo;  // LH
        default: return hi * hi; // HH
    }
}

Greedy2DResult greedy2d(const Image& img, std::int64_t B, double p,
                        const FilterBank& fb) {
    check_square_pow2(img.width, img.height);
    const std::int64_t n = img.width;
    if (B < 0 || B > n * n) throw std::invalid_argument("B out of range");
    const double pc = conjugate_exponent(p);

    const Coefficients2D coeffs = transform2d(img, fb);
    struct Scored {
        double score;
        std::int64_t pos;
    };
    std::vector<Scored> scored;
    scored.reserve(n * n);
    for (std::int64_t r = 0; r < n; ++r)
        for (std::int64_t c = 0; c < n; ++c)
            scored.push_back({std::abs(coeffs.at(r, c)) / basis_norm2d(r, c, n, fb, pc),
                              r * n + c});
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.pos < b.pos;
    });

    Greedy2DResult res;
    res.kept.width = res.kept.height = n;
    res.kept.values.assign(n * n, 0.0);
    for (std::int64_t k = 0; k < std::min<std::int64_t>(B, n * n); ++k) {
        const std::int64_t pos = scored[k].pos;
        if (coeffs.values[pos] != 0.0) ++res.terms;
        res.kept.values[pos] = coeffs.values[pos];
    }
    res.reconstruction = inverse2d(res.kept, fb, img.maxval);
    res.error = lp_error(img.pixels, res.reconstruction.pixels, p);
    return res;
}

Image read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open: " + path);
    std::string magic;
    is >> magic;
    if (magic != "P2" && magic != "P5")
        throw DataError(path + ": not a P2/P5 PGM file");
    auto next_token = [&]() {
        std::string tok;
        while (is >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(is, rest);
                continue;
            }
            return tok;
        }
        throw DataError(path + ": truncated PGM header");
    };
    Image img;
    img.width = std::stoll(next_token());
    img.height = std::stoll(next_token());
    img.maxval = std::stoi(next_token());
    if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 || img.maxval > 255)
        throw DataError(path + ": unsupported PGM geometry");
    img.pixels.resize(img.width * img.height);
    if (magic == "P2") {
        for (auto& v : img.pixels) {
            long long x;
            if (!(is >> x)) throw DataError(path + ": truncated P2 pixels");
            v = static_cast<double>(x);
        }
    } else {
        is.get();  // single whitespace after maxval
        std::vector<unsigned char> raw(img.pixels.size());
        is.read(reinterpret_cast<char*>(raw.data()), raw.size());
        if (is.gcount() != static_cast<std::streamsize>(raw.size()))
            throw DataError(path + ": truncated P5 pixels");
        for (size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i];
    }
    return img;
}

void write_pgm(const std::string& path, const Image& img, bool binary) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open for writing: " + path);
    os << (binary ? "P5" : "P2") << '\n'
       << img.width << ' ' << img.height << '\n'
       << img.maxval << '\n';
    auto clamp = [&](double v) {
        const long long x = std::llround(v);
        return static_cast<int>(std::clamp<long long>(x, 0, img.maxval));
    };
    if (binary) {
        std::vector<unsigned char> raw(img.pixels.size());
        for (size_t i = 0; i < img.pixels.size(); ++i)
            raw[i] = static_cast<unsigned char>(clamp(img.pixels[i]));
        os.write(reinterpret_cast<const char*>(raw.data()), raw.size());
    } else {
        for (std::int64_t r = 0; r < img.height; ++r) {
            for (std::int64_t c = 0; c < img.width; ++c) {
                if (c) os << ' ';
                os << clamp(img.at(r, c));
            }
            os << '\n';
        }
    }
}

}  // namespace wavesyn
