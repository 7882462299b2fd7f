#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "hypertda/interpolation.hpp"
#include "hypertda/random_curves.hpp"

using namespace hypertda;

TEST_CASE("greedy assignment follows the priority rule", "[interpolation]") {
    // segment lengths 2 and 1; adding 3 points gives segment 0 two of them
    const Curve c({{0, 0, 0}, {2, 0, 0}, {3, 0, 0}});
    const auto [interp, map] = interpolate(c, 6);
    REQUIRE(interp.size() == 6);
    REQUIRE(map.segment_fractions[0].size() == 2);
    REQUIRE(map.segment_fractions[1].size() == 1);
    CHECK(map.segment_fractions[0][0] == Catch::Approx(1.0 / 3.0));
    CHECK(map.segment_fractions[0][1] == Catch::Approx(2.0 / 3.0));
    CHECK(map.segment_fractions[1][0] == Catch::Approx(0.5));
    // vertices in curve order
    CHECK(interp[1].x == Catch::Approx(2.0 / 3.0));
    CHECK(interp[2].x == Catch::Approx(4.0 / 3.0));
    CHECK(interp[4].x == Catch::Approx(2.5));
}

TEST_CASE("equilateral curves get round-robin assignment", "[interpolation]") {
    const Curve c = generate_sarw(10, 3);
    const std::size_t k = 4;
    const auto [interp, map] = interpolate(c, 10 + k * 9);
    for (const auto& fr : map.segment_fractions) CHECK(fr.size() == k);
}

TEST_CASE("199 to 500 inserts 301 vertices", "[interpolation]") {
    const Curve c = generate_sarw(199, 11);
    const auto [interp, map] = interpolate(c, 500);
    CHECK(interp.size() == 500);
    CHECK(map.n_orig == 199);
    CHECK(map.n_interp == 500);
    std::size_t inserted = 0;
    for (const auto& fr : map.segment_fractions) inserted += fr.size();
    CHECK(inserted == 301);
}

TEST_CASE("interpolation map columns sum to one", "[interpolation]") {
    const Curve c = generate_sarw(50, 9);
    const auto [interp, map] = interpolate(c, 120);
    std::map<std::size_t, double> colsum;
    for (const auto& [r, col, w] : map.triplets) colsum[col] += w;
    REQUIRE(colsum.size() == 120);
    for (const auto& [col, s] : colsum) CHECK(s == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("interpolated vertices split their mass between endpoints", "[interpolation]") {
    // one segment, one vertex at t = 0.25: rows i and i+1 get 0.75 and 0.25.
    // the greedy loop puts the vertex at 0.5, so build the map by hand
    InterpolationMap map;
    map.n_orig = 2;
    map.n_interp = 3;
    map.triplets = {{0, 0, 1.0}, {0, 1, 0.75}, {1, 1, 0.25}, {1, 2, 1.0}};
    const auto out = map.apply(std::vector<double>{0.0, 1.0, 0.0});
    CHECK(out[0] == Catch::Approx(0.75));
    CHECK(out[1] == Catch::Approx(0.25));
}

TEST_CASE("identity map returns the input unchanged", "[interpolation]") {
    InterpolationMap map;
    map.n_orig = 3;
    map.n_interp = 3;
    map.triplets = {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}};
    const std::vector<double> v = {0.3, -1.2, 4.0};
    const auto out = map.apply(v);
    for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == v[i]);
}

TEST_CASE("uninterpolation conserves mass", "[interpolation]") {
    const Curve c = generate_sarw(40, 21);
    const auto [interp, map] = interpolate(c, 100);
    const std::vector<double> ones(100, 1.0);
    const auto out = map.apply(ones);
    double mass = 0.0;
    for (double v : out) mass += v;
    CHECK(mass == Catch::Approx(100.0).margin(1e-12));
}

TEST_CASE("interpolation errors", "[interpolation]") {
    const Curve c({{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(interpolate(c, 2), std::invalid_argument);
    InterpolationMap map;
    map.n_orig = 2;
    map.n_interp = 3;
    map.triplets = {{0, 0, 1.0}};
    CHECK_THROWS_AS(map.apply(std::vector<double>{1.0}), std::invalid_argument);
}
