// types.hpp - shared configuration and geometry types for the MA relay library
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace marelay {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Antenna position in the planar region, in wavelengths.
struct Position {
    double x = 0.0;
    double y = 0.0;
};

using PositionSet = std::vector<Position>;

double distance(const Position& a, const Position& b);

// Smallest pairwise distance in a set; +inf for fewer than two positions.
double min_pairwise_distance(const PositionSet& ps);

// Gradient-ascent controls shared by the position optimizers.
struct GaParams {
    double initial_step = 1.0;      // wavelengths
    int max_halvings = 30;
    int max_outer_iters = 50;       // antenna sweeps
    double convergence_tol = 1e-5;  // relative objective change per sweep
};

// Interior-point controls for the weight-design SDP.
struct SdpParams {
    double feasibility_tol = 1e-8;
    double rank_tol = 1e-5;
    int max_iters = 100;
};

// Static system description. All lengths are in carrier wavelengths
// (wavelength == 1 internally); powers are linear (not dB).
struct SystemConfig {
    int n_antennas = 6;             // relay antennas N
    int n_paths_rx = 5;             // source->relay paths L_r
    int n_paths_tx = 5;             // relay->destination paths L_t
    double region_size = 3.0;       // side A of the square [-A/2, A/2]^2
    double min_antenna_dist = 0.5;  // minimum pairwise spacing D
    double source_power = 10.0;     // P_s
    double relay_power_budget = 10.0;  // P_tot
    double relay_noise_power = 1.0;    // sigma_r^2
    double dest_noise_power = 1.0;     // sigma_d^2
    double ao_tol = 1e-4;
    int max_ao_iters = 30;
    GaParams ga;
    SdpParams sdp;

    // Throws std::invalid_argument on any violated bound, including a region
    // too small to hold the half-wavelength reference grid at spacing >= D.
    void validate() const;
};

// Half-wavelength-spaced rows x cols reference grid centered at the origin,
// rows*cols == N with |rows - cols| minimized (rows >= cols), row-major
// order. Throws std::invalid_argument if the grid does not fit the region
// or violates the minimum spacing.
PositionSet fpa_grid(const SystemConfig& cfg);

bool in_region(const Position& p, const SystemConfig& cfg);

}  // namespace marelay
