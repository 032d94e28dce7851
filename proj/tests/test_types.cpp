// test_types.cpp - configuration validation and reference grid geometry
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "marelay/types.hpp"

using namespace marelay;

namespace {

SystemConfig base_config() {
    SystemConfig cfg;
    cfg.n_antennas = 6;
    cfg.n_paths_rx = 5;
    cfg.n_paths_tx = 5;
    cfg.region_size = 3.0;
    cfg.min_antenna_dist = 0.5;
    return cfg;
}

}  // namespace

TEST_CASE("default-style config validates") {
    CHECK_NOTHROW(base_config().validate());
}

TEST_CASE("non-positive and inconsistent fields are rejected") {
    auto expect_invalid = [](SystemConfig cfg) {
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    };
    SystemConfig cfg = base_config();
    cfg.n_antennas = 0;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.region_size = -1.0;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.min_antenna_dist = 0.0;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.source_power = 0.0;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.relay_noise_power = -0.5;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.ga.max_outer_iters = 0;
    expect_invalid(cfg);
    cfg = base_config();
    cfg.sdp.feasibility_tol = 0.0;
    expect_invalid(cfg);
}

TEST_CASE("grid placement for four antennas in a 3-wavelength region") {
    SystemConfig cfg = base_config();
    cfg.n_antennas = 4;
    const PositionSet g = fpa_grid(cfg);
    REQUIRE(g.size() == 4);
    // 2 x 2 at (+-1/4, +-1/4).
    for (const auto& p : g) {
        CHECK(std::abs(std::abs(p.x) - 0.25) < 1e-15);
        CHECK(std::abs(std::abs(p.y) - 0.25) < 1e-15);
    }
    CHECK(min_pairwise_distance(g) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("grid shape prefers near-square factorizations") {
    SystemConfig cfg = base_config();
    cfg.n_antennas = 6;  // 3 x 2
    PositionSet g = fpa_grid(cfg);
    REQUIRE(g.size() == 6);
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (const auto& p : g) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    CHECK(xmax - xmin == doctest::Approx(0.5));   // 2 columns
    CHECK(ymax - ymin == doctest::Approx(1.0));   // 3 rows
    CHECK(min_pairwise_distance(g) >= cfg.min_antenna_dist);

    cfg.n_antennas = 1;
    g = fpa_grid(cfg);
    REQUIRE(g.size() == 1);
    CHECK(g[0].x == 0.0);
    CHECK(g[0].y == 0.0);

    cfg.n_antennas = 7;  // prime: 7 x 1 column, extent 3 fits region 3
    g = fpa_grid(cfg);
    REQUIRE(g.size() == 7);
    CHECK(min_pairwise_distance(g) >= cfg.min_antenna_dist);
    for (const auto& p : g) CHECK(in_region(p, cfg));
}

TEST_CASE("grid that cannot fit the region is rejected") {
    SystemConfig cfg = base_config();
    cfg.n_antennas = 13;     // 13 x 1 needs extent 6
    cfg.region_size = 3.0;
    CHECK_THROWS_AS(fpa_grid(cfg), std::invalid_argument);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    // Spacing below the required minimum distance is also rejected.
    cfg = base_config();
    cfg.min_antenna_dist = 0.75;
    CHECK_THROWS_AS(fpa_grid(cfg), std::invalid_argument);
}

TEST_CASE("pairwise distance helpers") {
    CHECK(distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(std::isinf(min_pairwise_distance({})));
    CHECK(std::isinf(min_pairwise_distance({{1.0, 2.0}})));
    PositionSet ps = {{0, 0}, {1, 0}, {0, 0.25}};
    CHECK(min_pairwise_distance(ps) == doctest::Approx(0.25));
}

TEST_CASE("region membership is inclusive of the boundary") {
    SystemConfig cfg = base_config();
    CHECK(in_region({1.5, -1.5}, cfg));
    CHECK_FALSE(in_region({1.5000001, 0.0}, cfg));
}
