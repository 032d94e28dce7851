// test_ao_driver.cpp - initialization, monotone alternation, serialization
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "marelay/ao_driver.hpp"

using namespace marelay;

namespace {

SystemConfig config(int n, int l) {
    SystemConfig cfg;
    cfg.n_antennas = n;
    cfg.n_paths_rx = l;
    cfg.n_paths_tx = l;
    return cfg;
}

void check_feasible(const SolutionState& s, const SystemConfig& cfg,
                    const ChannelRealization& ch) {
    for (const auto& p : s.rx_positions) CHECK(in_region(p, cfg));
    for (const auto& p : s.tx_positions) CHECK(in_region(p, cfg));
    CHECK(min_pairwise_distance(s.rx_positions) >= cfg.min_antenna_dist - 1e-9);
    CHECK(min_pairwise_distance(s.tx_positions) >= cfg.min_antenna_dist - 1e-9);
    const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
    CHECK(relay_power(s.weights, h1, cfg) <=
          cfg.relay_power_budget * (1.0 + 1e-6));
}

}  // namespace

TEST_CASE("rate is half the log of one plus snr") {
    CHECK(achievable_rate(0.0) == 0.0);
    CHECK(achievable_rate(1.0) == doctest::Approx(0.5));
    CHECK(achievable_rate(3.0) == doctest::Approx(1.0));
    CHECK(achievable_rate(15.0) == doctest::Approx(2.0));
}

TEST_CASE("initialization uses the reference grid and the full power budget") {
    const SystemConfig cfg = config(4, 3);
    const ChannelRealization ch = sample_channel(cfg, 42);
    const SolutionState s = initialize(cfg, ch);
    const PositionSet grid = fpa_grid(cfg);
    REQUIRE(s.rx_positions.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(s.rx_positions[i].x == grid[i].x);
        CHECK(s.rx_positions[i].y == grid[i].y);
        CHECK(s.tx_positions[i].x == grid[i].x);
        CHECK(s.tx_positions[i].y == grid[i].y);
    }
    const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(s.tx_positions, ch);
    CHECK(relay_power(s.weights, h1, cfg) ==
          doctest::Approx(cfg.relay_power_budget).epsilon(1e-9));
    CHECK(s.snr == doctest::Approx(end_to_end_snr(s.weights, h1, h2, cfg)).epsilon(1e-12));
    CHECK(s.rate == doctest::Approx(achievable_rate(s.snr)).epsilon(1e-12));
    REQUIRE(s.trace.size() == 1);
    CHECK(s.trace[0] == s.rate);
    CHECK_FALSE(s.degenerate);
}

TEST_CASE("single antenna single path solution matches the scalar optimum") {
    // One antenna and one path per hop: positions cannot change either channel
    // magnitude, and the best scalar weight simply saturates the power budget.
    const SystemConfig cfg = config(1, 1);
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const ChannelRealization ch = sample_channel(cfg, seed);
        const SolutionState s = ao_solve(cfg, ch);
        const double g1 = std::norm(ch.rx_path_response[0]);
        const double g2 = std::norm(ch.tx_path_response[0]);
        const double w2 = cfg.relay_power_budget /
                          (cfg.source_power * g1 + cfg.relay_noise_power);
        const double snr_opt = cfg.source_power * g1 * g2 * w2 /
                               (cfg.relay_noise_power * g2 * w2 + cfg.dest_noise_power);
        CHECK(s.snr == doctest::Approx(snr_opt).epsilon(1e-6));
        CHECK(s.converged);
        CHECK(s.iterations == 1);
        CHECK(s.rate == doctest::Approx(achievable_rate(snr_opt)).epsilon(1e-6));
    }
}

TEST_CASE("the rate trace never decreases") {
    for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
        const SystemConfig cfg = config(seed % 2 ? 2 : 3, 3);
        const ChannelRealization ch = sample_channel(cfg, seed);
        const SolutionState s = ao_solve(cfg, ch);
        REQUIRE(s.trace.size() == std::size_t(s.iterations) + 1);
        for (std::size_t k = 1; k < s.trace.size(); ++k)
            CHECK(s.trace[k] >= s.trace[k - 1] - 1e-7 * std::max(1.0, s.trace[k - 1]));
        CHECK(s.rate == s.trace.back());
        CHECK(s.rate >= s.trace.front());
        check_feasible(s, cfg, ch);
        CHECK(s.rank_residual < 1e-4);
    }
}

TEST_CASE("every block update keeps the iterate feasible and improving") {
    const SystemConfig cfg = config(3, 3);
    const ChannelRealization ch = sample_channel(cfg, 2024);
    struct Event {
        int iteration;
        std::string block;
        double rate;
    };
    std::vector<Event> events;
    const SolutionState s = ao_solve(
        cfg, ch, [&](int it, const char* block, const SolutionState& state) {
            events.push_back({it, block, state.rate});
            check_feasible(state, cfg, ch);
        });
    REQUIRE(events.size() == 1 + 3 * std::size_t(s.iterations));
    CHECK(events[0].block == "init");
    CHECK(events[0].iteration == 0);
    for (int it = 1; it <= s.iterations; ++it) {
        const std::size_t base = 1 + 3 * std::size_t(it - 1);
        CHECK(events[base].block == "rx");
        CHECK(events[base + 1].block == "tx");
        CHECK(events[base + 2].block == "weights");
        for (int k = 0; k < 3; ++k) CHECK(events[base + k].iteration == it);
    }
    // Rates across consecutive events never drop beyond numerical slack.
    for (std::size_t k = 1; k < events.size(); ++k)
        CHECK(events[k].rate >= events[k - 1].rate - 1e-7 * std::max(1.0, events[k - 1].rate));
}

TEST_CASE("a converged solution gains little from one extra round") {
    const SystemConfig cfg = config(2, 2);
    const ChannelRealization ch = sample_channel(cfg, 314);
    const SolutionState s = ao_solve(cfg, ch);
    REQUIRE(s.converged);
    const PositionSet rx2 =
        optimize_receive_positions(s.rx_positions, s.weights, s.tx_positions, ch, cfg);
    const PositionSet tx2 =
        optimize_transmit_positions(s.tx_positions, s.weights, rx2, ch, cfg);
    const Eigen::VectorXcd h1 = source_relay_channel(rx2, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(tx2, ch);
    const WeightDesign wd = design_weights(h1, h2, cfg);
    const double rate2 = achievable_rate(end_to_end_snr(wd.W, h1, h2, cfg));
    CHECK(rate2 >= s.rate - 1e-7 * std::max(1.0, s.rate));
    CHECK(rate2 <= s.rate + 1e-3 * std::max(1.0, s.rate));
}

TEST_CASE("solution state survives a json round trip") {
    const SystemConfig cfg = config(3, 2);
    const ChannelRealization ch = sample_channel(cfg, 5);
    SystemConfig quick = cfg;
    quick.max_ao_iters = 3;
    const SolutionState s = ao_solve(quick, ch);
    const SolutionState r = state_from_json(state_to_json(s));
    REQUIRE(r.weights.rows() == s.weights.rows());
    REQUIRE(r.weights.cols() == s.weights.cols());
    CHECK(r.weights == s.weights);
    REQUIRE(r.rx_positions.size() == s.rx_positions.size());
    REQUIRE(r.tx_positions.size() == s.tx_positions.size());
    for (std::size_t i = 0; i < s.rx_positions.size(); ++i) {
        CHECK(r.rx_positions[i].x == s.rx_positions[i].x);
        CHECK(r.rx_positions[i].y == s.rx_positions[i].y);
        CHECK(r.tx_positions[i].x == s.tx_positions[i].x);
        CHECK(r.tx_positions[i].y == s.tx_positions[i].y);
    }
    CHECK(r.snr == s.snr);
    CHECK(r.rate == s.rate);
    CHECK(r.trace == s.trace);
    CHECK(r.iterations == s.iterations);
    CHECK(r.converged == s.converged);
    CHECK(r.rank_residual == s.rank_residual);
    CHECK(r.sdp_iterations == s.sdp_iterations);
    CHECK(r.degenerate == s.degenerate);
}

TEST_CASE("invalid configurations are rejected before any work") {
    SystemConfig cfg = config(2, 2);
    cfg.n_antennas = 0;
    const ChannelRealization ch = sample_channel(config(2, 2), 1);
    CHECK_THROWS_AS(ao_solve(cfg, ch), std::invalid_argument);
    SystemConfig tight = config(9, 2);
    tight.region_size = 0.6;  // the reference grid cannot fit
    CHECK_THROWS_AS(initialize(tight, sample_channel(tight, 1)), std::invalid_argument);
}
