// channel.hpp - field-response channel model for both hops
#pragma once

#include <cstdint>
#include <string>

#include "marelay/types.hpp"

namespace marelay {

// One draw of the random propagation state. Angles are in radians; the
// path-response vectors carry the complex gains of the fixed source /
// destination sides. All geometry below is in wavelengths.
struct ChannelRealization {
    Eigen::ArrayXd rx_elevations;  // L_r
    Eigen::ArrayXd rx_azimuths;    // L_r
    Eigen::VectorXcd rx_path_response;  // g_1, L_r
    Eigen::ArrayXd tx_elevations;  // L_t
    Eigen::ArrayXd tx_azimuths;    // L_t
    Eigen::VectorXcd tx_path_response;  // f_2, L_t
};

// Per-path planar direction factors: a path at (elevation, azimuth) advances
// phase by k0 * (x * dir_x + y * dir_y) when the antenna moves to (x, y).
inline double path_dir_x(double elevation, double azimuth) {
    return std::sin(elevation) * std::cos(azimuth);
}
inline double path_dir_y(double elevation) { return std::cos(elevation); }

// Wavenumber; the wavelength is the internal length unit.
inline constexpr double k0 = 2.0 * kPi;

// Draws path angles uniform on [0, 2pi) and path gains CN(0, 1/L) i.i.d.,
// independently for the two hops. Deterministic in (seed, L_r, L_t).
ChannelRealization sample_channel(const SystemConfig& cfg, std::uint64_t seed);

// Pure per-index seed derivation (splitmix64), independent of call order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// Field-response vector at a receive-side position: entry i is
// exp(j * k0 * rho_i(pos)) with rho_i the projection of pos on path i.
Eigen::VectorXcd receive_frv(const Position& pos, const ChannelRealization& ch);
Eigen::VectorXcd transmit_frv(const Position& pos, const ChannelRealization& ch);

// Stacked per-antenna channels: entry n of the source->relay vector is
// receive_frv(pos_n)^H g_1; the relay->destination vector uses the transmit
// side analogously.
Eigen::VectorXcd source_relay_channel(const PositionSet& pos, const ChannelRealization& ch);
Eigen::VectorXcd relay_dest_channel(const PositionSet& pos, const ChannelRealization& ch);

// FNV-1a over the realization's raw doubles; stable fingerprint for pairing
// audits across sweep values.
std::uint64_t channel_hash(const ChannelRealization& ch);

// JSON round-trip; complex entries serialize as [re, im] pairs.
std::string channel_to_json(const ChannelRealization& ch);
ChannelRealization channel_from_json(const std::string& text);

}  // namespace marelay
