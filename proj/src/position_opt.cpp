// position_opt.cpp - cosine-expansion objectives and the ascent sweeps
#include "marelay/position_opt.hpp"

#include <cmath>
#include <stdexcept>

#include "marelay/relay_weights.hpp"

namespace marelay {

double phase_profile_value(const Position& p, const Eigen::MatrixXcd& Q,
                           const Eigen::VectorXcd& l, const Eigen::ArrayXd& elev,
                           const Eigen::ArrayXd& azim) {
    const Eigen::Index L = elev.size();
    Eigen::ArrayXd rho(L);
    for (Eigen::Index i = 0; i < L; ++i)
        rho[i] = p.x * path_dir_x(elev[i], azim[i]) + p.y * path_dir_y(elev[i]);
    double v = 0.0;
    for (Eigen::Index i = 0; i < L; ++i)
        for (Eigen::Index j = 0; j < L; ++j) {
            const Complex q = Q(i, j);
            v += std::abs(q) * std::cos(k0 * (rho[i] - rho[j]) - std::arg(q));
        }
    for (Eigen::Index i = 0; i < L; ++i)
        v += 2.0 * std::abs(l[i]) * std::cos(k0 * rho[i] - std::arg(l[i]));
    return v;
}

Eigen::Vector2d phase_profile_gradient(const Position& p, const Eigen::MatrixXcd& Q,
                                       const Eigen::VectorXcd& l, const Eigen::ArrayXd& elev,
                                       const Eigen::ArrayXd& azim) {
    const Eigen::Index L = elev.size();
    Eigen::ArrayXd rho(L), ux(L), uy(L);
    for (Eigen::Index i = 0; i < L; ++i) {
        ux[i] = path_dir_x(elev[i], azim[i]);
        uy[i] = path_dir_y(elev[i]);
        rho[i] = p.x * ux[i] + p.y * uy[i];
    }
    double gx = 0.0, gy = 0.0;
    for (Eigen::Index i = 0; i < L; ++i)
        for (Eigen::Index j = 0; j < L; ++j) {
            const Complex q = Q(i, j);
            const double s = std::abs(q) * std::sin(k0 * (rho[i] - rho[j]) - std::arg(q));
            gx -= k0 * (ux[i] - ux[j]) * s;
            gy -= k0 * (uy[i] - uy[j]) * s;
        }
    for (Eigen::Index i = 0; i < L; ++i) {
        const double s = std::abs(l[i]) * std::sin(k0 * rho[i] - std::arg(l[i]));
        gx -= 2.0 * k0 * ux[i] * s;
        gy -= 2.0 * k0 * uy[i] * s;
    }
    return {gx, gy};
}

namespace {

void check_geometry(const PositionSet& ps, const Eigen::MatrixXcd& W, const SystemConfig& cfg,
                    const char* where) {
    const auto n = static_cast<std::size_t>(cfg.n_antennas);
    if (ps.size() != n)
        throw std::invalid_argument(std::string(where) + ": position count != n_antennas");
    if (W.rows() != cfg.n_antennas || W.cols() != cfg.n_antennas)
        throw std::invalid_argument(std::string(where) + ": W must be N x N");
    for (const auto& p : ps)
        if (!in_region(p, cfg))
            throw std::invalid_argument(std::string(where) + ": initial position outside region");
    if (ps.size() > 1 && min_pairwise_distance(ps) < cfg.min_antenna_dist - 1e-9)
        throw std::invalid_argument(std::string(where) + ": initial positions too close");
}

bool spacing_ok(const Position& p, int antenna, const PositionSet& ps, double min_dist) {
    for (std::size_t m = 0; m < ps.size(); ++m)
        if (static_cast<int>(m) != antenna && distance(p, ps[m]) < min_dist) return false;
    return true;
}

ReceiveContext make_receive_context(int antenna, const Eigen::MatrixXcd& W,
                                    const Eigen::VectorXcd& h1, const Eigen::VectorXcd& combiner,
                                    const ChannelRealization& ch, const SystemConfig& cfg) {
    ReceiveContext ctx;
    ctx.antenna = antenna;
    ctx.combiner = combiner;
    ctx.cross_gain = combiner.dot(h1) - std::conj(combiner[antenna]) * h1[antenna];
    ctx.others_fwd = W * h1 - h1[antenna] * W.col(antenna);
    const Complex an = combiner[antenna];
    ctx.quad = std::norm(an) * (ch.rx_path_response * ch.rx_path_response.adjoint());
    ctx.lin = std::conj(an) * std::conj(ctx.cross_gain) * ch.rx_path_response;
    ctx.power_margin = cfg.relay_power_budget - cfg.relay_noise_power * W.squaredNorm();
    ctx.w_col = W.col(antenna);
    return ctx;
}

TransmitContext make_transmit_context(int antenna, const Eigen::MatrixXcd& W,
                                      const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                                      const ChannelRealization& ch, const SystemConfig& cfg) {
    TransmitContext ctx;
    ctx.antenna = antenna;
    ctx.forwarded = W * h1;
    ctx.cross_gain =
        ctx.forwarded.dot(h2) - std::conj(ctx.forwarded[antenna]) * h2[antenna];
    ctx.w_row = W.adjoint().col(antenna);
    ctx.others_comb = W.adjoint() * h2 - h2[antenna] * ctx.w_row;
    const Complex cn = ctx.forwarded[antenna];
    const auto& f2 = ch.tx_path_response;
    ctx.quad_num = cfg.source_power * std::norm(cn) * (f2 * f2.adjoint());
    ctx.lin_num = cfg.source_power * std::conj(cn) * std::conj(ctx.cross_gain) * f2;
    ctx.const_num = cfg.source_power * std::norm(ctx.cross_gain);
    ctx.quad_den = cfg.relay_noise_power * ctx.w_row.squaredNorm() * (f2 * f2.adjoint());
    ctx.lin_den = cfg.relay_noise_power * ctx.others_comb.dot(ctx.w_row) * f2;
    ctx.const_den =
        cfg.relay_noise_power * ctx.others_comb.squaredNorm() + cfg.dest_noise_power;
    return ctx;
}

}  // namespace

ReceiveContext build_receive_context(int antenna, const Eigen::MatrixXcd& W,
                                     const PositionSet& rx, const PositionSet& tx,
                                     const ChannelRealization& ch, const SystemConfig& cfg) {
    check_geometry(rx, W, cfg, "build_receive_context");
    if (antenna < 0 || antenna >= cfg.n_antennas)
        throw std::invalid_argument("build_receive_context: antenna index out of range");
    const Eigen::VectorXcd h1 = source_relay_channel(rx, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(tx, ch);
    return make_receive_context(antenna, W, h1, W.adjoint() * h2, ch, cfg);
}

TransmitContext build_transmit_context(int antenna, const Eigen::MatrixXcd& W,
                                       const PositionSet& rx, const PositionSet& tx,
                                       const ChannelRealization& ch, const SystemConfig& cfg) {
    check_geometry(tx, W, cfg, "build_transmit_context");
    if (antenna < 0 || antenna >= cfg.n_antennas)
        throw std::invalid_argument("build_transmit_context: antenna index out of range");
    const Eigen::VectorXcd h1 = source_relay_channel(rx, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(tx, ch);
    return make_transmit_context(antenna, W, h1, h2, ch, cfg);
}

double receive_objective(const Position& p, const ReceiveContext& ctx,
                         const ChannelRealization& ch) {
    return phase_profile_value(p, ctx.quad, ctx.lin, ch.rx_elevations, ch.rx_azimuths);
}

Eigen::Vector2d receive_gradient(const Position& p, const ReceiveContext& ctx,
                                 const ChannelRealization& ch) {
    return phase_profile_gradient(p, ctx.quad, ctx.lin, ch.rx_elevations, ch.rx_azimuths);
}

double transmit_objective(const Position& p, const TransmitContext& ctx,
                          const ChannelRealization& ch) {
    const double num =
        phase_profile_value(p, ctx.quad_num, ctx.lin_num, ch.tx_elevations, ch.tx_azimuths) +
        ctx.const_num;
    const double den =
        phase_profile_value(p, ctx.quad_den, ctx.lin_den, ch.tx_elevations, ch.tx_azimuths) +
        ctx.const_den;
    return std::log2(num) - std::log2(den);
}

Eigen::Vector2d transmit_gradient(const Position& p, const TransmitContext& ctx,
                                  const ChannelRealization& ch) {
    const double num =
        phase_profile_value(p, ctx.quad_num, ctx.lin_num, ch.tx_elevations, ch.tx_azimuths) +
        ctx.const_num;
    const double den =
        phase_profile_value(p, ctx.quad_den, ctx.lin_den, ch.tx_elevations, ch.tx_azimuths) +
        ctx.const_den;
    const Eigen::Vector2d gn =
        phase_profile_gradient(p, ctx.quad_num, ctx.lin_num, ch.tx_elevations, ch.tx_azimuths);
    const Eigen::Vector2d gd =
        phase_profile_gradient(p, ctx.quad_den, ctx.lin_den, ch.tx_elevations, ch.tx_azimuths);
    constexpr double ln2 = 0.6931471805599453094;
    return gn / (ln2 * num) - gd / (ln2 * den);
}

bool receive_feasible(const Position& p, int antenna, const PositionSet& rx,
                      const ReceiveContext& ctx, const ChannelRealization& ch,
                      const SystemConfig& cfg) {
    if (!in_region(p, cfg)) return false;
    if (!spacing_ok(p, antenna, rx, cfg.min_antenna_dist)) return false;
    const Complex h1n = receive_frv(p, ch).dot(ch.rx_path_response);
    const double fwd = (h1n * ctx.w_col + ctx.others_fwd).squaredNorm();
    return cfg.source_power * fwd <= ctx.power_margin + 1e-12;
}

bool transmit_feasible(const Position& p, int antenna, const PositionSet& tx,
                       const SystemConfig& cfg) {
    return in_region(p, cfg) && spacing_ok(p, antenna, tx, cfg.min_antenna_dist);
}

namespace {

// One accept-or-halve line search along the gradient; returns true and
// updates pos[antenna] when a feasible non-decreasing step exists.
template <typename Objective, typename Feasible>
bool ascend_antenna(PositionSet& pos, int antenna, const Eigen::Vector2d& grad, double f_cur,
                    const GaParams& ga, const Objective& objective, const Feasible& feasible,
                    int* halvings_out) {
    double step = ga.initial_step;
    for (int h = 0; h <= ga.max_halvings; ++h) {
        const Position cand{pos[antenna].x + step * grad[0], pos[antenna].y + step * grad[1]};
        if (feasible(cand) && objective(cand) >= f_cur) {
            pos[antenna] = cand;
            if (halvings_out) *halvings_out += h;
            return true;
        }
        step *= 0.5;
    }
    return false;
}

}  // namespace

PositionSet optimize_receive_positions(const PositionSet& rx, const Eigen::MatrixXcd& W,
                                       const PositionSet& tx, const ChannelRealization& ch,
                                       const SystemConfig& cfg,
                                       std::vector<SweepRecord>* trace) {
    check_geometry(rx, W, cfg, "optimize_receive_positions");
    if (tx.size() != rx.size())
        throw std::invalid_argument("optimize_receive_positions: tx position count mismatch");
    const Eigen::VectorXcd h2 = relay_dest_channel(tx, ch);
    const Eigen::VectorXcd combiner = W.adjoint() * h2;
    PositionSet pos = rx;
    Eigen::VectorXcd h1 = source_relay_channel(pos, ch);
    if (relay_power(W, h1, cfg) > cfg.relay_power_budget * (1.0 + 1e-6))
        throw std::invalid_argument(
            "optimize_receive_positions: weights exceed the relay power budget");

    double obj = std::norm(combiner.dot(h1));
    for (int sweep = 1; sweep <= cfg.ga.max_outer_iters; ++sweep) {
        int halvings = 0;
        for (int n = 0; n < cfg.n_antennas; ++n) {
            const ReceiveContext ctx = make_receive_context(n, W, h1, combiner, ch, cfg);
            const double f_cur = receive_objective(pos[n], ctx, ch);
            const Eigen::Vector2d grad = receive_gradient(pos[n], ctx, ch);
            const bool moved = ascend_antenna(
                pos, n, grad, f_cur, cfg.ga,
                [&](const Position& p) { return receive_objective(p, ctx, ch); },
                [&](const Position& p) { return receive_feasible(p, n, pos, ctx, ch, cfg); },
                &halvings);
            if (moved) h1[n] = receive_frv(pos[n], ch).dot(ch.rx_path_response);
        }
        const double new_obj = std::norm(combiner.dot(h1));
        if (trace) trace->push_back({sweep, new_obj, halvings});
        if (std::abs(new_obj - obj) <= cfg.ga.convergence_tol * std::max(obj, 1e-30)) break;
        obj = new_obj;
    }
    return pos;
}

PositionSet optimize_transmit_positions(const PositionSet& tx, const Eigen::MatrixXcd& W,
                                        const PositionSet& rx, const ChannelRealization& ch,
                                        const SystemConfig& cfg,
                                        std::vector<SweepRecord>* trace) {
    check_geometry(tx, W, cfg, "optimize_transmit_positions");
    if (rx.size() != tx.size())
        throw std::invalid_argument("optimize_transmit_positions: rx position count mismatch");
    const Eigen::VectorXcd h1 = source_relay_channel(rx, ch);
    PositionSet pos = tx;
    Eigen::VectorXcd h2 = relay_dest_channel(pos, ch);

    double obj = end_to_end_snr(W, h1, h2, cfg);
    for (int sweep = 1; sweep <= cfg.ga.max_outer_iters; ++sweep) {
        int halvings = 0;
        for (int n = 0; n < cfg.n_antennas; ++n) {
            const TransmitContext ctx = make_transmit_context(n, W, h1, h2, ch, cfg);
            const double f_cur = transmit_objective(pos[n], ctx, ch);
            const Eigen::Vector2d grad = transmit_gradient(pos[n], ctx, ch);
            const bool moved = ascend_antenna(
                pos, n, grad, f_cur, cfg.ga,
                [&](const Position& p) { return transmit_objective(p, ctx, ch); },
                [&](const Position& p) { return transmit_feasible(p, n, pos, cfg); }, &halvings);
            if (moved) h2[n] = transmit_frv(pos[n], ch).dot(ch.tx_path_response);
        }
        const double new_obj = end_to_end_snr(W, h1, h2, cfg);
        if (trace) trace->push_back({sweep, new_obj, halvings});
        if (std::abs(new_obj - obj) <= cfg.ga.convergence_tol * std::max(obj, 1e-30)) break;
        obj = new_obj;
    }
    return pos;
}

}  // namespace marelay
