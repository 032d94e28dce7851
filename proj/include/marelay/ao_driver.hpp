// ao_driver.hpp - alternating optimization over both position sets and W
#pragma once

#include <functional>
#include <string>

#include "marelay/channel.hpp"
#include "marelay/position_opt.hpp"
#include "marelay/relay_weights.hpp"
#include "marelay/types.hpp"

namespace marelay {

double achievable_rate(double snr);

struct SolutionState {
    Eigen::MatrixXcd weights;
    PositionSet rx_positions;
    PositionSet tx_positions;
    double snr = 0.0;
    double rate = 0.0;                 // 0.5 * log2(1 + snr)
    std::vector<double> trace;         // rate after init, then after each iteration
    int iterations = 0;
    bool converged = false;
    double rank_residual = 0.0;        // of the last weight-design SDP
    int sdp_iterations = 0;
    bool degenerate = false;
};

std::string state_to_json(const SolutionState& s);
SolutionState state_from_json(const std::string& text);

// Reference grid positions for both stages plus full-budget matched-filter
// weights (zero weights when a hop channel vanishes).
SolutionState initialize(const SystemConfig& cfg, const ChannelRealization& ch);

// Called after each block update; `block` is "rx", "tx" or "weights".
using AoObserver =
    std::function<void(int iteration, const char* block, const SolutionState& state)>;

// Block order per iteration: receive positions, transmit positions, weights
// (SDP). If amplified relay noise alone would exceed the power budget, W is
// shrunk before the position blocks so their feasible sets are nonempty.
// Stops when the rate improves by less than cfg.ao_tol (relative) or after
// cfg.max_ao_iters iterations.
SolutionState ao_solve(const SystemConfig& cfg, const ChannelRealization& ch,
                       const AoObserver& observer = {});

}  // namespace marelay
