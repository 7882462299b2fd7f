#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hypertda/stats.hpp"
#include "oracles.hpp"

using namespace hypertda::stats;

TEST_CASE("pearson on exact relations", "[stats]") {
    const std::vector<double> x = {1, 2, 3};
    CHECK(pearson(x, x) == Catch::Approx(1.0).margin(1e-15));
    const std::vector<double> nx = {-1, -2, -3};
    CHECK(pearson(x, nx) == Catch::Approx(-1.0).margin(1e-15));
    const std::vector<double> y = {2, 4, 6};
    CHECK(pearson(x, y) == Catch::Approx(1.0).margin(1e-15));
    const std::vector<double> a = {1, 2, 3, 4}, b = {1, 3, 2, 4};
    CHECK(pearson(a, b) == Catch::Approx(0.8).margin(1e-15));
}

TEST_CASE("pearson of affine transforms is the slope sign", "[stats]") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> x(50);
    for (double& v : x) v = g(rng);
    std::vector<double> up(50), down(50);
    for (std::size_t i = 0; i < 50; ++i) {
        up[i] = 2.5 * x[i] + 3.0;
        down[i] = -0.7 * x[i] + 1.0;
    }
    CHECK(pearson(x, up) == Catch::Approx(1.0).margin(1e-12));
    CHECK(pearson(x, down) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("pearson rejects degenerate input", "[stats]") {
    const std::vector<double> c = {2, 2, 2};
    const std::vector<double> x = {1, 2, 3};
    CHECK_THROWS_AS(pearson(c, x), std::invalid_argument);
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("ami on identical and degenerate partitions", "[stats]") {
    Partition a{{0, 0, 1, 1, 2, 2}};
    CHECK(ami(a, a) == Catch::Approx(1.0).margin(1e-12));

    Partition one{{0, 0, 0, 0}};
    Partition any{{0, 1, 2, 3}};
    CHECK(ami(one, any) == 0.0);
    // two all-in-one partitions agree perfectly by convention
    CHECK(ami(one, one) == 1.0);
}

TEST_CASE("ami matches a permutation-model oracle on a small case", "[stats]") {
    // independent blocks: MI = 0 but E[MI] > 0, so AMI is negative
    Partition a{{0, 0, 1, 1}};
    Partition b{{0, 1, 0, 1}};

    // oracle: average MI over all 4! relabelings of b's items
    std::vector<std::size_t> idx = {0, 1, 2, 3};
    double emi = 0.0;
    std::size_t count = 0;
    auto mi_of = [&](const std::vector<std::int64_t>& la,
                     const std::vector<std::int64_t>& lb) {
        std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
        std::map<std::int64_t, double> ma, mb;
        for (std::size_t i = 0; i < la.size(); ++i) {
            joint[{la[i], lb[i]}] += 0.25;
            ma[la[i]] += 0.25;
            mb[lb[i]] += 0.25;
        }
        double mi = 0.0;
        for (const auto& [k, p] : joint) mi += p * std::log(p / (ma[k.first] * mb[k.second]));
        return mi;
    };
    std::sort(idx.begin(), idx.end());
    do {
        std::vector<std::int64_t> lb(4);
        for (std::size_t i = 0; i < 4; ++i) lb[i] = b.labels[idx[i]];
        emi += mi_of(a.labels, lb);
        ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    emi /= static_cast<double>(count);

    const double mi = mi_of(a.labels, b.labels);
    const double h = std::log(2.0);  // H(a) = H(b) = log 2
    const double expected = (mi - emi) / (h - emi);
    CHECK(ami(a, b) == Catch::Approx(expected).margin(1e-9));
    CHECK(ami(a, b) == Catch::Approx(-0.5).margin(1e-9));
}

TEST_CASE("ami is symmetric and label-permutation invariant", "[stats]") {
    Partition a{{0, 0, 1, 1, 2, 2, -1, 0}};
    Partition b{{1, 1, 0, 0, 0, 2, 2, -1}};
    CHECK(ami(a, b) == ami(b, a));
    Partition b2 = b;
    for (auto& l : b2.labels)
        if (l >= 0) l = (l + 5) * 3;  // relabel clusters
    CHECK(ami(a, b2) == Catch::Approx(ami(a, b)).margin(1e-12));
}

TEST_CASE("mann-whitney exact p-values", "[stats]") {
    const std::vector<double> x = {1, 2}, y = {3, 4};
    CHECK(mann_whitney(x, y) == Catch::Approx(1.0 / 3.0).margin(1e-12));
    CHECK(mann_whitney(x, x) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("mann-whitney exact mode matches enumeration for n+m <= 10", "[stats]") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> val(0, 5);  // small range forces ties
    for (std::size_t nx = 1; nx <= 5; ++nx) {
        for (std::size_t ny = 1; ny <= 5; ++ny) {
            std::vector<double> x(nx), y(ny);
            for (double& v : x) v = val(rng);
            for (double& v : y) v = val(rng);
            CHECK(mann_whitney(x, y) ==
                  Catch::Approx(oracles::oracle_mann_whitney(x, y)).margin(1e-12));
        }
    }
}

TEST_CASE("mann-whitney normal approximation for larger samples", "[stats]") {
    std::vector<double> lo, hi;
    for (int i = 1; i <= 10; ++i) {
        lo.push_back(i);
        hi.push_back(100 + i);
    }
    CHECK(mann_whitney(lo, hi) < 0.001);
    CHECK(mann_whitney(lo, hi) == Catch::Approx(mann_whitney(hi, lo)).margin(1e-12));
    // identical large samples: z = 0 under the normal approximation
    CHECK(mann_whitney(lo, lo) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("mann-whitney is symmetric", "[stats]") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> x(6), y(12);
    for (double& v : x) v = g(rng);
    for (double& v : y) v = g(rng) + 0.3;
    CHECK(mann_whitney(x, y) == Catch::Approx(mann_whitney(y, x)).margin(1e-12));
}

TEST_CASE("ks two-sample statistic and p-value", "[stats]") {
    const std::vector<double> x = {1, 2, 3};
    const auto same = ks_two_sample(x, x);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);

    const std::vector<double> y = {11, 12, 13};
    CHECK(ks_two_sample(x, y).statistic == 1.0);

    const std::vector<double> a = {1, 2}, b = {1.5, 2.5};
    CHECK(ks_two_sample(a, b).statistic == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("ks statistic is invariant under monotone transforms", "[stats]") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> x(20), y(30);
    for (double& v : x) v = g(rng);
    for (double& v : y) v = g(rng) + 0.5;
    const auto base = ks_two_sample(x, y);
    auto warp = [](std::vector<double> v) {
        for (double& t : v) t = std::exp(t) + t * t * t;
        return v;
    };
    const auto warped = ks_two_sample(warp(x), warp(y));
    CHECK(base.statistic == warped.statistic);
}

TEST_CASE("stats error paths", "[stats]") {
    CHECK_THROWS_AS(mann_whitney(std::vector<double>{}, std::vector<double>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, std::vector<double>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ami(Partition{{0, 1}}, Partition{{0, 1, 2}}), std::invalid_argument);
}
