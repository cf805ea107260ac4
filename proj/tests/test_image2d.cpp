#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "wavesyn/error_metrics.hpp"
#include "wavesyn/image2d.hpp"
#include "wavesyn/signal_io.hpp"
#include "wavesyn/transform.hpp"

using namespace wavesyn;
using testsup::close;

namespace {

Image make_image(std::int64_t n, std::vector<double> pixels) {
    Image img;
    img.width = img.height = n;
    img.pixels = std::move(pixels);
    return img;
}

Image random_image(std::mt19937_64& g, std::int64_t n) {
    Image img;
    img.width = img.height = n;
    img.pixels = testsup::random_signal(g, n * n, 0.0, 255.0);
    return img;
}

}  // namespace

TEST_CASE("two-by-two haar example") {
    const Image img = make_image(2, {1, 2, 3, 4});
    const Coefficients2D c = transform2d(img, FilterBank::haar());
    CHECK(close(c.at(0, 0), 5.0));   // LL
    CHECK(close(c.at(0, 1), -1.0));  // HL
    CHECK(close(c.at(1, 0), -2.0));  // LH
    CHECK(std::abs(c.at(1, 1)) < 1e-12);  // HH

    const Image back = inverse2d(c, FilterBank::haar(), 255);
    for (int i = 0; i < 4; ++i) CHECK(close(back.pixels[i], img.pixels[i]));
}

TEST_CASE("constant image concentrates in the root") {
    const Image img = make_image(8, std::vector<double>(64, 7.0));
    const Coefficients2D c = transform2d(img, FilterBank::haar());
    CHECK(close(c.at(0, 0), 7.0 * 8.0));
    for (std::int64_t i = 1; i < 64; ++i)
        CHECK(std::abs(c.values[i]) < 1e-12);
}

TEST_CASE("round trip and Parseval") {
    auto g = testsup::rng(401);
    for (std::int64_t n : {8, 64}) {
        for (const char* name : {"haar", "db2"}) {
            const FilterBank fb = FilterBank::by_name(name);
            const Image img = random_image(g, n);
            const Coefficients2D c = transform2d(img, fb);
            const Image back = inverse2d(c, fb, 255);
            double energy = 0.0, cenergy = 0.0, maxval = 0.0;
            for (double v : img.pixels) {
                energy += v * v;
                maxval = std::max(maxval, std::abs(v));
            }
            for (double v : c.values) cenergy += v * v;
            CHECK(std::abs(cenergy - energy) <= 1e-9 * energy);
            for (size_t i = 0; i < img.pixels.size(); ++i)
                CHECK(std::abs(back.pixels[i] - img.pixels[i]) <=
                      1e-9 * maxval);
        }
    }
}

TEST_CASE("subband classification") {
    const std::int64_t n = 8;
    CHECK(subband_of(0, 0, n).band == 0);
    CHECK(subband_of(0, 0, n).level == 3);
    // Coarsest details sit next to the root.
    CHECK(subband_of(0, 1, n).band == 1);
    CHECK(subband_of(0, 1, n).level == 3);
    CHECK(subband_of(1, 0, n).band == 2);
    CHECK(subband_of(1, 1, n).band == 3);
    // Finest level occupies the outer three quadrants.
    CHECK(subband_of(0, 4, n).level == 1);
    CHECK(subband_of(0, 4, n).band == 1);
    CHECK(subband_of(5, 2, n).band == 2);
    CHECK(subband_of(6, 7, n).band == 3);
    CHECK(subband_of(6, 7, n).s1 == 2);
    CHECK(subband_of(6, 7, n).s2 == 3);

    // Level j holds 3 (n / 2^j)^2 details; totals cover the square.
    std::int64_t count[4] = {0, 0, 0, 0};
    for (std::int64_t r = 0; r < n; ++r)
        for (std::int64_t c = 0; c < n; ++c) ++count[subband_of(r, c, n).band];
    CHECK(count[0] == 1);
    CHECK(count[1] == 21);
    CHECK(count[2] == 21);
    CHECK(count[3] == 21);
}

TEST_CASE("tensor norms match materialized basis vectors") {
    const std::int64_t n = 8;
    const FilterBank fb = FilterBank::haar();
    for (std::int64_t r = 0; r < n; ++r) {
        for (std::int64_t c = 0; c < n; ++c) {
            Coefficients2D unit;
            unit.width = unit.height = n;
            unit.values.assign(n * n, 0.0);
            unit.at(r, c) = 1.0;
            const Image vec = inverse2d(unit, fb, 255);
            for (double p : {1.0, 2.0, kInf}) {
                CHECK(close(basis_norm2d(r, c, n, fb, p),
                            lp_norm(vec.pixels, p), 1e-9));
            }
        }
    }
}

TEST_CASE("greedy2d basics") {
    auto g = testsup::rng(409);
    const Image img = random_image(g, 8);
    // Full budget reconstructs exactly.
    const Greedy2DResult full = greedy2d(img, 64, 2.0, FilterBank::haar());
    CHECK(full.error <= 1e-9);

    // p=2 keeps the largest coefficients outright (orthonormal norms = 1).
    const Greedy2DResult res = greedy2d(img, 5, 2.0, FilterBank::haar());
    const Coefficients2D c = transform2d(img, FilterBank::haar());
    std::vector<double> mags;
    for (double v : c.values) mags.push_back(std::abs(v));
    std::sort(mags.rbegin(), mags.rend());
    double discarded = 0.0;
    for (size_t i = 5; i < mags.size(); ++i) discarded += mags[i] * mags[i];
    CHECK(close(res.error, std::sqrt(discarded), 1e-9));

    // Norm-aware selection beats the l2 pick under l_inf.
    const Greedy2DResult inf_pick = greedy2d(img, 5, kInf, FilterBank::haar());
    const double l2_pick_linf =
        lp_error(img.pixels, res.reconstruction.pixels, kInf);
    CHECK(inf_pick.error <= l2_pick_linf + 1e-9);
}

TEST_CASE("pgm files round trip bit-exactly") {
    auto g = testsup::rng(411);
    Image img = random_image(g, 8);
    for (double& v : img.pixels) v = std::floor(v);  // integral pixels

    for (bool binary : {false, true}) {
        const std::string path = binary ? "ws_test_p5.pgm" : "ws_test_p2.pgm";
        write_pgm(path, img, binary);
        const Image back = read_pgm(path);
        CHECK(back.width == 8);
        CHECK(back.height == 8);
        CHECK(back.maxval == 255);
        for (size_t i = 0; i < img.pixels.size(); ++i)
            CHECK(back.pixels[i] == img.pixels[i]);

        // Re-writing the parsed image reproduces the file byte for byte.
        const std::string again = path + ".again";
        write_pgm(again, back, binary);
        std::ifstream a(path, std::ios::binary), b(again, std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        std::remove(path.c_str());
        std::remove(again.c_str());
    }
}

TEST_CASE("pgm reader rejects malformed input") {
    {
        std::ofstream os("ws_bad.pgm");
        os << "P3\n2 2\n255\n0 0 0 0\n";
    }
    CHECK_THROWS_AS(read_pgm("ws_bad.pgm"), DataError);
    {
        std::ofstream os("ws_bad.pgm");
        os << "P2\n# comment\n2 2\n255\n1 2 3\n";  // one pixel short
    }
    CHECK_THROWS_AS(read_pgm("ws_bad.pgm"), DataError);
    std::remove("ws_bad.pgm");
    CHECK_THROWS_AS(read_pgm("ws_missing.pgm"), DataError);
}
