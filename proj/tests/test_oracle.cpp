#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "wavesyn/error_metrics.hpp"
#include "wavesyn/oracle.hpp"
#include "wavesyn/transform.hpp"

using namespace wavesyn;
using testsup::close;

TEST_CASE("unrestricted oracle on the four-point example") {
    const std::vector<double> f{1, 4, 5, 6};
    const FilterBank haar = FilterBank::haar();
    const OracleResult res = brute_force_unrestricted(f, 1, kInf, haar);
    CHECK(close(res.error, 2.5, 1e-6));
    REQUIRE(res.support.size() == 1);
    CHECK(res.support[0].flat == 1);
    // The root value reconstructs to a flat signal near 3.5.
    CHECK(close(res.values[0] * 0.5, 3.5, 1e-4));

    CHECK(close(brute_force_unrestricted(f, 0, 2.0, haar).error,
                lp_norm(f, 2.0)));
    CHECK(close(brute_force_unrestricted(f, 1, 2.0, haar).error,
                std::sqrt(14.0)));
}

TEST_CASE("restricted oracle on the four-point example") {
    const std::vector<double> f{1, 4, 5, 6};
    const FilterBank haar = FilterBank::haar();
    const OracleResult res = brute_force_restricted(f, 1, kInf, haar);
    CHECK(close(res.error, 3.0));
    CHECK(brute_force_restricted(f, 4, kInf, haar).error <= 1e-9);
}

TEST_CASE("restricted dominates unrestricted; both monotone in B") {
    auto g = testsup::rng(101);
    const FilterBank haar = FilterBank::haar();
    for (int it = 0; it < 6; ++it) {
        const std::vector<double> f = testsup::random_signal(g, 8);
        for (double p : {1.0, 2.0, 3.0, kInf}) {
            double prev_u = kInf, prev_r = kInf;
            for (int B = 0; B <= 3; ++B) {
                const double u = brute_force_unrestricted(f, B, p, haar).error;
                const double r = brute_force_restricted(f, B, p, haar).error;
                CHECK(u <= r + 1e-9);
                CHECK(u <= prev_u + 1e-9);
                CHECK(r <= prev_r + 1e-9);
                prev_u = u;
                prev_r = r;
            }
        }
    }
}

TEST_CASE("per-support minimizer agrees with a grid scan") {
    auto g = testsup::rng(103);
    const FilterBank haar = FilterBank::haar();
    for (int it = 0; it < 3; ++it) {
        const std::vector<double> f = testsup::random_signal(g, 4);
        for (double p : {1.0, 1.7, kInf}) {
            for (std::int64_t flat = 1; flat <= 4; ++flat) {
                const std::vector<WaveletIndex> support{
                    WaveletIndex::from_flat(flat, 4)};
                const double got =
                    min_error_over_support(f, support, p, haar);
                const std::vector<double> psi =
                    basis_vector(support[0], 4, haar);
                double best = kInf;
                for (double z = -10.0; z <= 10.0; z += 1e-3) {
                    std::vector<double> fhat(4);
                    for (int i = 0; i < 4; ++i) fhat[i] = z * psi[i];
                    best = std::min(best, lp_error(f, fhat, p));
                }
                CHECK(got <= best + 1e-6);
                CHECK(got >= best - 1e-2);
            }
        }
    }
}

TEST_CASE("l2 per-support optimum is the projection") {
    auto g = testsup::rng(107);
    const FilterBank haar = FilterBank::haar();
    const std::vector<double> f = testsup::random_signal(g, 8);
    const CoefficientVector c = cascade_forward(f, haar);
    std::vector<double> mags;
    for (double v : c.values) mags.push_back(std::abs(v));
    std::sort(mags.rbegin(), mags.rend());
    for (int B = 1; B <= 3; ++B) {
        double discarded = 0.0;
        for (size_t i = B; i < mags.size(); ++i) discarded += mags[i] * mags[i];
        CHECK(close(brute_force_unrestricted(f, B, 2.0, haar).error,
                    std::sqrt(discarded), 1e-6));
    }
}

TEST_CASE("size caps are enforced") {
    std::vector<double> big(32, 1.0);
    CHECK_THROWS_AS(
        brute_force_unrestricted(big, 1, 2.0, FilterBank::haar()),
        std::invalid_argument);
    std::vector<double> f(8, 1.0);
    CHECK_THROWS_AS(brute_force_unrestricted(f, 5, 2.0, FilterBank::haar()),
                    std::invalid_argument);
}

TEST_CASE("cut oracle basics") {
    auto g = testsup::rng(109);
    const FilterBank haar = FilterBank::haar();
    const auto restricted_block = [&](const std::vector<double>& block,
                                      int b) {
        if (block.size() == 1)
            return b >= 1 ? 0.0 : std::abs(block[0]);
        if (b >= static_cast<int>(block.size())) return 0.0;
        // The enumeration oracle caps B at 4; a smaller budget only
        // overestimates, which the inequality checks below tolerate.
        return brute_force_restricted(block, std::min(b, 4), kInf, haar).error;
    };

    // Root-only dictionary reduces to the whole-signal oracle.
    const std::vector<double> f = testsup::random_signal(g, 8);
    const CutOracleResult whole =
        brute_force_cut(f, 2, kInf, 8, restricted_block);
    CHECK(close(whole.error, brute_force_restricted(f, 2, kInf, haar).error));
    CHECK(whole.starts == std::vector<std::int64_t>{0});

    // Splitting can only help.
    const CutOracleResult cut =
        brute_force_cut(f, 2, kInf, 2, restricted_block);
    CHECK(cut.error <= whole.error + 1e-12);

    // Full budget drives every cut to zero error.
    const CutOracleResult full =
        brute_force_cut(f, 8, kInf, 2, restricted_block);
    CHECK(full.error <= 1e-9);
}
