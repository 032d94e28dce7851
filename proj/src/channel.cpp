// channel.cpp - random channel draws and field-response evaluation
#include "marelay/channel.hpp"

#include <cstring>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace marelay {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t state = master_seed + index * 0xD1B54A32D192ED03ULL;
    return splitmix64(state);
}

ChannelRealization sample_channel(const SystemConfig& cfg, std::uint64_t seed) {
    if (cfg.n_paths_rx < 1 || cfg.n_paths_tx < 1)
        throw std::invalid_argument("sample_channel: path counts must be >= 1");
    // Two mixed words avoid correlated mt19937_64 states for adjacent seeds.
    std::uint64_t state = seed;
    std::seed_seq seq{splitmix64(state), splitmix64(state)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    ChannelRealization ch;
    auto draw_side = [&](int n_paths, Eigen::ArrayXd& elev, Eigen::ArrayXd& azim,
                         Eigen::VectorXcd& gains) {
        elev.resize(n_paths);
        azim.resize(n_paths);
        gains.resize(n_paths);
        for (int i = 0; i < n_paths; ++i) elev[i] = angle(rng);
        for (int i = 0; i < n_paths; ++i) azim[i] = angle(rng);
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / n_paths));
        for (int i = 0; i < n_paths; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            gains[i] = Complex(re, im);
        }
    };
    draw_side(cfg.n_paths_rx, ch.rx_elevations, ch.rx_azimuths, ch.rx_path_response);
    draw_side(cfg.n_paths_tx, ch.tx_elevations, ch.tx_azimuths, ch.tx_path_response);
    return ch;
}

namespace {

Eigen::VectorXcd frv(const Position& pos, const Eigen::ArrayXd& elev, const Eigen::ArrayXd& azim) {
    const auto n = elev.size();
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double rho = pos.x * path_dir_x(elev[i], azim[i]) + pos.y * path_dir_y(elev[i]);
        v[i] = std::polar(1.0, k0 * rho);
    }
    return v;
}

}  // namespace

Eigen::VectorXcd receive_frv(const Position& pos, const ChannelRealization& ch) {
    return frv(pos, ch.rx_elevations, ch.rx_azimuths);
}

Eigen::VectorXcd transmit_frv(const Position& pos, const ChannelRealization& ch) {
    return frv(pos, ch.tx_elevations, ch.tx_azimuths);
}

Eigen::VectorXcd source_relay_channel(const PositionSet& pos, const ChannelRealization& ch) {
    Eigen::VectorXcd h(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t n = 0; n < pos.size(); ++n)
        h[static_cast<Eigen::Index>(n)] = receive_frv(pos[n], ch).dot(ch.rx_path_response);
    return h;
}

Eigen::VectorXcd relay_dest_channel(const PositionSet& pos, const ChannelRealization& ch) {
    Eigen::VectorXcd h(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t n = 0; n < pos.size(); ++n)
        h[static_cast<Eigen::Index>(n)] = transmit_frv(pos[n], ch).dot(ch.tx_path_response);
    return h;
}

std::uint64_t channel_hash(const ChannelRealization& ch) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix_double = [&h](double d) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xFFULL;
            h *= 0x100000001B3ULL;
        }
    };
    auto mix_array = [&](const Eigen::ArrayXd& a) {
        for (Eigen::Index i = 0; i < a.size(); ++i) mix_double(a[i]);
    };
    auto mix_cvec = [&](const Eigen::VectorXcd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            mix_double(v[i].real());
            mix_double(v[i].imag());
        }
    };
    mix_array(ch.rx_elevations);
    mix_array(ch.rx_azimuths);
    mix_cvec(ch.rx_path_response);
    mix_array(ch.tx_elevations);
    mix_array(ch.tx_azimuths);
    mix_cvec(ch.tx_path_response);
    return h;
}

namespace {

nlohmann::json cvec_to_json(const Eigen::VectorXcd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back({v[i].real(), v[i].imag()});
    return a;
}

nlohmann::json array_to_json(const Eigen::ArrayXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXcd cvec_from_json(const nlohmann::json& a) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        v[static_cast<Eigen::Index>(i)] =
            Complex(a[i].at(0).get<double>(), a[i].at(1).get<double>());
    return v;
}

Eigen::ArrayXd array_from_json(const nlohmann::json& a) {
    Eigen::ArrayXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    return v;
}

}  // namespace

std::string channel_to_json(const ChannelRealization& ch) {
    nlohmann::json j;
    j["rx_elevations"] = array_to_json(ch.rx_elevations);
    j["rx_azimuths"] = array_to_json(ch.rx_azimuths);
    j["rx_path_response"] = cvec_to_json(ch.rx_path_response);
    j["tx_elevations"] = array_to_json(ch.tx_elevations);
    j["tx_azimuths"] = array_to_json(ch.tx_azimuths);
    j["tx_path_response"] = cvec_to_json(ch.tx_path_response);
    return j.dump();
}

ChannelRealization channel_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ChannelRealization ch;
    ch.rx_elevations = array_from_json(j.at("rx_elevations"));
    ch.rx_azimuths = array_from_json(j.at("rx_azimuths"));
    ch.rx_path_response = cvec_from_json(j.at("rx_path_response"));
    ch.tx_elevations = array_from_json(j.at("tx_elevations"));
    ch.tx_azimuths = array_from_json(j.at("tx_azimuths"));
    ch.tx_path_response = cvec_from_json(j.at("tx_path_response"));
    if (ch.rx_elevations.size() != ch.rx_azimuths.size() ||
        ch.rx_elevations.size() != ch.rx_path_response.size() ||
        ch.tx_elevations.size() != ch.tx_azimuths.size() ||
        ch.tx_elevations.size() != ch.tx_path_response.size())
        throw std::invalid_argument("channel_from_json: inconsistent array lengths");
    return ch;
}

}  // namespace marelay
