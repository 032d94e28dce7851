// types.cpp - configuration validation and the reference antenna grid
#include "marelay/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace marelay {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double min_pairwise_distance(const PositionSet& ps) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            best = std::min(best, distance(ps[i], ps[j]));
    return best;
}

bool in_region(const Position& p, const SystemConfig& cfg) {
    const double half = cfg.region_size / 2.0;
    return std::abs(p.x) <= half && std::abs(p.y) <= half;
}

namespace {

// rows >= cols, rows*cols == n, |rows - cols| minimal.
std::pair<int, int> grid_shape(int n) {
    int cols = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    while (cols > 1 && n % cols != 0) --cols;
    return {n / cols, cols};
}

}  // namespace

PositionSet fpa_grid(const SystemConfig& cfg) {
    const auto [rows, cols] = grid_shape(cfg.n_antennas);
    const double s = 0.5;  // half-wavelength spacing
    if (s < cfg.min_antenna_dist - 1e-12)
        throw std::invalid_argument("fpa_grid: half-wavelength spacing below min_antenna_dist");
    const double half = cfg.region_size / 2.0;
    if ((rows - 1) * s > cfg.region_size + 1e-12 || (cols - 1) * s > cfg.region_size + 1e-12)
        throw std::invalid_argument("fpa_grid: grid of " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " does not fit region " +
                                    std::to_string(cfg.region_size));
    PositionSet ps;
    ps.reserve(static_cast<std::size_t>(cfg.n_antennas));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            Position p{(j - (cols - 1) / 2.0) * s, (i - (rows - 1) / 2.0) * s};
            if (std::abs(p.x) > half + 1e-12 || std::abs(p.y) > half + 1e-12)
                throw std::invalid_argument("fpa_grid: grid exceeds region bounds");
            ps.push_back(p);
        }
    return ps;
}

void SystemConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("SystemConfig: ") + what);
    };
    require(n_antennas >= 1, "n_antennas must be >= 1");
    require(n_paths_rx >= 1, "n_paths_rx must be >= 1");
    require(n_paths_tx >= 1, "n_paths_tx must be >= 1");
    require(region_size > 0.0, "region_size must be positive");
    require(min_antenna_dist > 0.0, "min_antenna_dist must be positive");
    require(source_power > 0.0, "source_power must be positive");
    require(relay_power_budget > 0.0, "relay_power_budget must be positive");
    require(relay_noise_power > 0.0, "relay_noise_power must be positive");
    require(dest_noise_power > 0.0, "dest_noise_power must be positive");
    require(ao_tol > 0.0, "ao_tol must be positive");
    require(max_ao_iters >= 1, "max_ao_iters must be >= 1");
    require(ga.initial_step > 0.0, "ga.initial_step must be positive");
    require(ga.max_halvings >= 0, "ga.max_halvings must be >= 0");
    require(ga.max_outer_iters >= 1, "ga.max_outer_iters must be >= 1");
    require(ga.convergence_tol > 0.0, "ga.convergence_tol must be positive");
    require(sdp.feasibility_tol > 0.0, "sdp.feasibility_tol must be positive");
    require(sdp.rank_tol > 0.0, "sdp.rank_tol must be positive");
    require(sdp.max_iters >= 1, "sdp.max_iters must be >= 1");
    // A feasible placement must exist; the reference grid doubles as the
    // constructive witness.
    const PositionSet grid = fpa_grid(*this);
    if (grid.size() > 1 && min_pairwise_distance(grid) < min_antenna_dist - 1e-12)
        throw std::invalid_argument("SystemConfig: reference grid violates min_antenna_dist");
}

}  // namespace marelay
