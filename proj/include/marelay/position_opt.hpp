// position_opt.hpp - per-antenna gradient ascent for both position stages
#pragma once

#include <vector>

#include "marelay/channel.hpp"
#include "marelay/types.hpp"

namespace marelay {

// Value and planar gradient of the generic phase profile
//   v(p) = frv(p)^H Q frv(p) + 2 Re{ l^H frv(p) }
// where frv(p) has entries exp(j k0 rho_i(p)) along paths with the given
// angles. Both stage objectives reduce to sums of such profiles; the value
// is evaluated through its cosine expansion and the gradient through the
// matching sine expansion.
double phase_profile_value(const Position& p, const Eigen::MatrixXcd& Q,
                           const Eigen::VectorXcd& l, const Eigen::ArrayXd& elev,
                           const Eigen::ArrayXd& azim);
Eigen::Vector2d phase_profile_gradient(const Position& p, const Eigen::MatrixXcd& Q,
                                       const Eigen::VectorXcd& l, const Eigen::ArrayXd& elev,
                                       const Eigen::ArrayXd& azim);

// Everything the receive-stage subproblem for one antenna needs with the
// other antennas and the weights held fixed.
struct ReceiveContext {
    int antenna = 0;
    Eigen::VectorXcd combiner;      // W^H h2
    Complex cross_gain;             // sum_{k != n} conj(combiner_k) h1_k
    Eigen::VectorXcd others_fwd;    // W h1 minus antenna n's contribution
    Eigen::MatrixXcd quad;          // quadratic profile coefficient (L_r x L_r)
    Eigen::VectorXcd lin;           // linear profile coefficient (L_r)
    double power_margin = 0.0;      // budget left after amplified relay noise
    Eigen::VectorXcd w_col;         // n-th column of W
};

// Transmit-stage analogue; the objective is the exact log-SNR split into a
// numerator and denominator profile.
struct TransmitContext {
    int antenna = 0;
    Eigen::VectorXcd forwarded;     // W h1
    Complex cross_gain;             // sum_{k != n} conj(forwarded_k) h2_k
    Eigen::VectorXcd others_comb;   // W^H h2 minus antenna n's contribution
    Eigen::MatrixXcd quad_num;      // L_t x L_t
    Eigen::VectorXcd lin_num;
    double const_num = 0.0;
    Eigen::MatrixXcd quad_den;
    Eigen::VectorXcd lin_den;
    double const_den = 0.0;
    Eigen::VectorXcd w_row;         // n-th column of W^H
};

ReceiveContext build_receive_context(int antenna, const Eigen::MatrixXcd& W,
                                     const PositionSet& rx, const PositionSet& tx,
                                     const ChannelRealization& ch, const SystemConfig& cfg);

TransmitContext build_transmit_context(int antenna, const Eigen::MatrixXcd& W,
                                       const PositionSet& rx, const PositionSet& tx,
                                       const ChannelRealization& ch, const SystemConfig& cfg);

// Forward-gain power surrogate for antenna `ctx.antenna` at position p; the
// end-to-end SNR is increasing in it while the receive positions move.
double receive_objective(const Position& p, const ReceiveContext& ctx,
                         const ChannelRealization& ch);
Eigen::Vector2d receive_gradient(const Position& p, const ReceiveContext& ctx,
                                 const ChannelRealization& ch);

// Exact log2 SNR as a function of antenna `ctx.antenna`'s transmit position.
double transmit_objective(const Position& p, const TransmitContext& ctx,
                          const ChannelRealization& ch);
Eigen::Vector2d transmit_gradient(const Position& p, const TransmitContext& ctx,
                                  const ChannelRealization& ch);

// Region + pairwise spacing + the per-antenna relay power cap.
bool receive_feasible(const Position& p, int antenna, const PositionSet& rx,
                      const ReceiveContext& ctx, const ChannelRealization& ch,
                      const SystemConfig& cfg);
// Region + pairwise spacing (transmit positions do not affect relay power).
bool transmit_feasible(const Position& p, int antenna, const PositionSet& tx,
                       const SystemConfig& cfg);

struct SweepRecord {
    int sweep = 0;
    double objective = 0.0;
    int halvings = 0;
};

// Cyclic per-antenna gradient ascent with step halving; every accepted step
// keeps the iterate feasible and never decreases the stage objective.
// Throws std::invalid_argument on dimension mismatches or infeasible input
// (for the receive stage this includes weights already exceeding the relay
// power budget).
PositionSet optimize_receive_positions(const PositionSet& rx, const Eigen::MatrixXcd& W,
                                       const PositionSet& tx, const ChannelRealization& ch,
                                       const SystemConfig& cfg,
                                       std::vector<SweepRecord>* trace = nullptr);

PositionSet optimize_transmit_positions(const PositionSet& tx, const Eigen::MatrixXcd& W,
                                        const PositionSet& rx, const ChannelRealization& ch,
                                        const SystemConfig& cfg,
                                        std::vector<SweepRecord>* trace = nullptr);

}  // namespace marelay
