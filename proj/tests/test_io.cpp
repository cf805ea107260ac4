#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "wavesyn/greedy.hpp"
#include "wavesyn/representation.hpp"
#include "wavesyn/signal_io.hpp"
#include "wavesyn/transform.hpp"

using namespace wavesyn;
using testsup::close;

TEST_CASE("signal reader: plain lines, comments, CSV columns") {
    {
        std::ofstream os("ws_sig.txt");
        os << "# header comment\n1.5\n\n  2.5\n-3\n";
    }
    const std::vector<double> f = read_signal("ws_sig.txt");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 1.5);
    CHECK(f[1] == 2.5);
    CHECK(f[2] == -3.0);

    {
        std::ofstream os("ws_sig.csv");
        os << "date,close\n"  // non-numeric header is not skippable data
           << "x,1\n";
    }
    CHECK_THROWS_AS(read_signal("ws_sig.csv", 1), DataError);
    {
        std::ofstream os("ws_sig.csv");
        os << "# date,close\n2020-01-01,10.5\n2020-01-02,11\n";
    }
    const std::vector<double> col = read_signal("ws_sig.csv", 1);
    REQUIRE(col.size() == 2);
    CHECK(col[0] == 10.5);
    CHECK(col[1] == 11.0);
    CHECK_THROWS_AS(read_signal("ws_sig.csv", 5), DataError);

    {
        std::ofstream os("ws_sig.txt");
        os << "1.0\nnot-a-number\n";
    }
    CHECK_THROWS_AS(read_signal("ws_sig.txt"), DataError);
    CHECK_THROWS_AS(read_signal("ws_does_not_exist.txt"), DataError);
    std::remove("ws_sig.txt");
    std::remove("ws_sig.csv");
}

TEST_CASE("signal writer round trips at full precision") {
    auto g = testsup::rng(501);
    const std::vector<double> f = testsup::random_signal(g, 16);
    write_signal("ws_rt.txt", f);
    const std::vector<double> back = read_signal("ws_rt.txt");
    REQUIRE(back.size() == f.size());
    for (size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
    std::remove("ws_rt.txt");
}

TEST_CASE("padding") {
    CHECK(pad_to_pow2({1, 2, 3}).size() == 4);
    CHECK(pad_to_pow2({1, 2, 3, 4}).size() == 4);
    CHECK(pad_to_pow2({1}).size() == 1);
    const std::vector<double> p = pad_to_pow2({1, 2, 3, 4, 5});
    REQUIRE(p.size() == 8);
    for (size_t i = 5; i < 8; ++i) CHECK(p[i] == 0.0);
}

TEST_CASE("saw generator") {
    const std::vector<double> s = gen_saw(8, 4);
    const std::vector<double> want{0, 1, 2, 3, 0, 1, 2, 3};
    CHECK(s == want);

    const std::vector<double> big = gen_saw(2048, 256);
    CHECK(big.size() == 2048);
    for (size_t i = 0; i + 256 < big.size(); ++i)
        CHECK(big[i] == big[i + 256]);
    CHECK(big[255] == 255.0);
    CHECK_THROWS_AS(gen_saw(0, 4), std::invalid_argument);
}

TEST_CASE("representation files round trip bit-exactly") {
    auto g = testsup::rng(503);
    const std::vector<double> f = testsup::random_signal(g, 64);
    const Representation rep =
        greedy_select(f, 7, kInf, FilterBank::db2());

    std::ostringstream first;
    write_representation(first, rep);
    std::istringstream in(first.str());
    const Representation back = read_representation(in);

    CHECK(back.n == rep.n);
    CHECK(back.basis == rep.basis);
    CHECK(back.scaling == rep.scaling);
    CHECK(back.p == rep.p);
    CHECK(back.budget == rep.budget);
    REQUIRE(back.terms.size() == rep.terms.size());
    for (size_t i = 0; i < rep.terms.size(); ++i) {
        CHECK(back.terms[i].first.flat == rep.terms[i].first.flat);
        CHECK(back.terms[i].second == rep.terms[i].second);
    }

    std::ostringstream second;
    write_representation(second, back);
    CHECK(first.str() == second.str());
}

TEST_CASE("representation reader validates") {
    {
        std::istringstream in("4 haar orthonormal 2 1\n9 0.5\n");
        CHECK_THROWS(read_representation(in));  // flat out of range
    }
    {
        std::istringstream in("4 haar orthonormal 2 1\n");
        const Representation rep = read_representation(in);
        CHECK(rep.terms.empty());
    }
}

TEST_CASE("coefficient CSV dump") {
    const CoefficientVector c =
        cascade_forward({1, 4, 5, 6}, FilterBank::haar());
    write_coefficients_csv("ws_coeffs.csv", c);
    std::ifstream is("ws_coeffs.csv");
    std::string line;
    std::getline(is, line);
    CHECK(line == "flat_index,level,shift,value");
    const auto row = [&](std::int64_t flat, int level, std::int64_t shift,
                         double value) {
        std::getline(is, line);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::int64_t gf, gs;
        int gl;
        double gv;
        REQUIRE((fields >> gf >> gl >> gs >> gv));
        CHECK(gf == flat);
        CHECK(gl == level);
        CHECK(gs == shift);
        CHECK(close(gv, value));
    };
    row(1, 2, 0, 8.0);
    row(2, 2, 0, -3.0);
    row(3, 1, 0, -3.0 / std::sqrt(2.0));
    row(4, 1, 1, -1.0 / std::sqrt(2.0));
    is.close();
    std::remove("ws_coeffs.csv");
}
