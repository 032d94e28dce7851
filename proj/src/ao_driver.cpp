// ao_driver.cpp - two-stage position optimization alternated with weight design
#include "marelay/ao_driver.hpp"

#include <cmath>

#include <json.hpp>

namespace marelay {

double achievable_rate(double snr) { return 0.5 * std::log2(1.0 + snr); }

namespace {

void refresh_link(SolutionState& s, const ChannelRealization& ch, const SystemConfig& cfg) {
    const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(s.tx_positions, ch);
    s.snr = end_to_end_snr(s.weights, h1, h2, cfg);
    s.rate = achievable_rate(s.snr);
}

}  // namespace

SolutionState initialize(const SystemConfig& cfg, const ChannelRealization& ch) {
    cfg.validate();
    SolutionState s;
    s.rx_positions = fpa_grid(cfg);
    s.tx_positions = s.rx_positions;
    const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
    const Eigen::VectorXcd h2 = relay_dest_channel(s.tx_positions, ch);
    if (h1.norm() < 1e-12 || h2.norm() < 1e-12) {
        s.weights = Eigen::MatrixXcd::Zero(cfg.n_antennas, cfg.n_antennas);
        s.degenerate = true;
    } else {
        s.weights = matched_filter_weights(h1, h2, cfg);
    }
    refresh_link(s, ch, cfg);
    s.trace = {s.rate};
    return s;
}

SolutionState ao_solve(const SystemConfig& cfg, const ChannelRealization& ch,
                       const AoObserver& observer) {
    SolutionState s = initialize(cfg, ch);
    if (observer) observer(0, "init", s);
    double prev_rate = s.rate;
    for (int it = 1; it <= cfg.max_ao_iters; ++it) {
        // The receive stage treats the amplified-noise power as fixed; leave
        // it strictly inside the budget so every antenna has moves available.
        const double noise_power = cfg.relay_noise_power * s.weights.squaredNorm();
        if (noise_power >= cfg.relay_power_budget) {
            const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
            const double used = relay_power(s.weights, h1, cfg);
            s.weights *= 0.999 * std::sqrt(cfg.relay_power_budget / used);
        }
        s.rx_positions =
            optimize_receive_positions(s.rx_positions, s.weights, s.tx_positions, ch, cfg);
        if (observer) {
            refresh_link(s, ch, cfg);
            observer(it, "rx", s);
        }
        s.tx_positions =
            optimize_transmit_positions(s.tx_positions, s.weights, s.rx_positions, ch, cfg);
        if (observer) {
            refresh_link(s, ch, cfg);
            observer(it, "tx", s);
        }
        const Eigen::VectorXcd h1 = source_relay_channel(s.rx_positions, ch);
        const Eigen::VectorXcd h2 = relay_dest_channel(s.tx_positions, ch);
        const double held_snr = end_to_end_snr(s.weights, h1, h2, cfg);
        const WeightDesign wd = design_weights(h1, h2, cfg);
        const double cand_snr =
            wd.degenerate ? 0.0 : end_to_end_snr(wd.W, h1, h2, cfg);
        // The redesign is optimal for the current channels, so it can only
        // lose to rank-one recovery noise; keep the old weights in that case.
        if (cand_snr >= held_snr) {
            s.weights = wd.W;
            s.rank_residual = wd.rank_residual;
            s.sdp_iterations = wd.sdp_iterations;
            s.degenerate = wd.degenerate;
        }
        refresh_link(s, ch, cfg);
        if (observer) observer(it, "weights", s);
        s.trace.push_back(s.rate);
        s.iterations = it;
        if (std::abs(s.rate - prev_rate) <= cfg.ao_tol * std::max(prev_rate, 1e-30)) {
            s.converged = true;
            break;
        }
        prev_rate = s.rate;
    }
    return s;
}

namespace {

nlohmann::json positions_to_json(const PositionSet& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : ps) a.push_back({p.x, p.y});
    return a;
}

PositionSet positions_from_json(const nlohmann::json& a) {
    PositionSet ps;
    ps.reserve(a.size());
    for (const auto& e : a) ps.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    return ps;
}

}  // namespace

std::string state_to_json(const SolutionState& s) {
    nlohmann::json j;
    nlohmann::json w = nlohmann::json::array();
    for (Eigen::Index c = 0; c < s.weights.cols(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (Eigen::Index r = 0; r < s.weights.rows(); ++r)
            col.push_back({s.weights(r, c).real(), s.weights(r, c).imag()});
        w.push_back(col);
    }
    j["weights"] = w;
    j["rx_positions"] = positions_to_json(s.rx_positions);
    j["tx_positions"] = positions_to_json(s.tx_positions);
    j["snr"] = s.snr;
    j["rate"] = s.rate;
    j["trace"] = s.trace;
    j["iterations"] = s.iterations;
    j["converged"] = s.converged;
    j["rank_residual"] = s.rank_residual;
    j["sdp_iterations"] = s.sdp_iterations;
    j["degenerate"] = s.degenerate;
    return j.dump();
}

SolutionState state_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SolutionState s;
    const auto& w = j.at("weights");
    const Eigen::Index n = static_cast<Eigen::Index>(w.size());
    s.weights.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto& e = w.at(c).at(r);
            s.weights(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    s.rx_positions = positions_from_json(j.at("rx_positions"));
    s.tx_positions = positions_from_json(j.at("tx_positions"));
    s.snr = j.at("snr").get<double>();
    s.rate = j.at("rate").get<double>();
    s.trace = j.at("trace").get<std::vector<double>>();
    s.iterations = j.at("iterations").get<int>();
    s.converged = j.at("converged").get<bool>();
    s.rank_residual = j.at("rank_residual").get<double>();
    s.sdp_iterations = j.at("sdp_iterations").get<int>();
    s.degenerate = j.at("degenerate").get<bool>();
    return s;
}

}  // namespace marelay
