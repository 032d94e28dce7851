// relay_weights.hpp - AF relay weight design via the lifted Charnes-Cooper SDP
#pragma once

#include "marelay/sdp.hpp"
#include "marelay/types.hpp"

namespace marelay {

// End-to-end SNR of the two-hop AF link for weight matrix W and per-antenna
// channels h1 (source->relay) and h2 (relay->destination).
double end_to_end_snr(const Eigen::MatrixXcd& W, const Eigen::VectorXcd& h1,
                      const Eigen::VectorXcd& h2, const SystemConfig& cfg);

// Transmit power spent by the relay: signal forwarding plus amplified noise.
double relay_power(const Eigen::MatrixXcd& W, const Eigen::VectorXcd& h1,
                   const SystemConfig& cfg);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Vectorized form of the weight problem: with w = vec(W) column-major,
//   h^H w          = h2^H W h1      (h = conj(h1) kron h2)
//   ||A^H w||      = ||h2^H W||     (A = I kron h2)
//   B^H w          = W h1           (B = conj(h1) kron I)
struct LiftedProblem {
    Eigen::VectorXcd h;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
    int n_antennas = 0;
};

LiftedProblem lift_problem(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2);

// [[Re H, -Im H], [Im H, Re H]]; maps Hermitian psd to symmetric psd and
// doubles each eigenvalue's multiplicity.
Eigen::MatrixXd hermitian_to_real_embedding(const Eigen::MatrixXcd& H);

// Adjoint of the embedding on symmetric matrices: for any symmetric X,
// <embed(H)/2, X> == Re tr(H * hermitian_from_real(X)), and X psd implies a
// psd result.
Eigen::MatrixXcd hermitian_from_real(const Eigen::MatrixXd& X);

// Charnes-Cooper transform of the SNR maximization under the relay power
// budget: a linear SDP in (Q_tilde, tau) whose optimal objective equals
// 1/snr*. Solved after the real embedding by the interior-point method.
struct CcSolution {
    Eigen::MatrixXcd q_tilde;  // N^2 x N^2, psd
    double tau = 0.0;
    double objective = 0.0;    // = 1 / optimal SNR
    sdp::Solution ipm;         // diagnostics of the real-embedded solve
};

// Throws std::runtime_error if the interior-point method fails to converge
// within cfg.sdp tolerances.
CcSolution solve_charnes_cooper_sdp(const LiftedProblem& lp, const SystemConfig& cfg);

// 1 - lambda_max / trace; zero iff Q is exactly rank one.
double rank_one_residual(const Eigen::MatrixXcd& Q);

// Principal rank-one factor of q_tilde / tau, reshaped column-major to W.
Eigen::MatrixXcd recover_weights(const CcSolution& cc, int n_antennas);

// W = alpha * h2 h1^H with alpha > 0 spending the full power budget.
// Throws std::invalid_argument if either channel is (numerically) zero.
Eigen::MatrixXcd matched_filter_weights(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                                        const SystemConfig& cfg);

struct WeightDesign {
    Eigen::MatrixXcd W;
    double snr = 0.0;
    double rank_residual = 0.0;
    int sdp_iterations = 0;
    bool degenerate = false;  // zero channel; W forced to zero
};

// Full design pipeline: lift, solve, recover. Degenerate (zero) channels
// yield the zero matrix with snr 0 instead of an error.
WeightDesign design_weights(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                            const SystemConfig& cfg);

}  // namespace marelay
