// relay_weights.cpp - SNR-optimal AF weights through the lifted SDP
#include "marelay/relay_weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace marelay {

namespace {

void check_pair(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2, const char* where) {
    if (h1.size() != h2.size() || h1.size() == 0)
        throw std::invalid_argument(std::string(where) + ": h1/h2 must be same nonzero length");
}

}  // namespace

double end_to_end_snr(const Eigen::MatrixXcd& W, const Eigen::VectorXcd& h1,
                      const Eigen::VectorXcd& h2, const SystemConfig& cfg) {
    check_pair(h1, h2, "end_to_end_snr");
    if (W.rows() != h1.size() || W.cols() != h1.size())
        throw std::invalid_argument("end_to_end_snr: W must be N x N");
    const Complex gain = h2.adjoint() * W * h1;
    const double noise_fwd = (h2.adjoint() * W).squaredNorm();
    return cfg.source_power * std::norm(gain) /
           (cfg.relay_noise_power * noise_fwd + cfg.dest_noise_power);
}

double relay_power(const Eigen::MatrixXcd& W, const Eigen::VectorXcd& h1,
                   const SystemConfig& cfg) {
    if (W.rows() != h1.size() || W.cols() != h1.size())
        throw std::invalid_argument("relay_power: W must be N x N");
    return cfg.source_power * (W * h1).squaredNorm() + cfg.relay_noise_power * W.squaredNorm();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

LiftedProblem lift_problem(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2) {
    check_pair(h1, h2, "lift_problem");
    const Eigen::Index n = h1.size();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    LiftedProblem lp;
    lp.h = kron(h1.conjugate(), h2);
    lp.A = kron(eye, h2);
    lp.B = kron(h1.conjugate(), eye);
    lp.n_antennas = static_cast<int>(n);
    return lp;
}

Eigen::MatrixXd hermitian_to_real_embedding(const Eigen::MatrixXcd& H) {
    const Eigen::Index n = H.rows();
    if (H.cols() != n) throw std::invalid_argument("hermitian_to_real_embedding: square input");
    Eigen::MatrixXd R(2 * n, 2 * n);
    R.topLeftCorner(n, n) = H.real();
    R.topRightCorner(n, n) = -H.imag();
    R.bottomLeftCorner(n, n) = H.imag();
    R.bottomRightCorner(n, n) = H.real();
    return R;
}

Eigen::MatrixXcd hermitian_from_real(const Eigen::MatrixXd& X) {
    const Eigen::Index n2 = X.rows();
    if (X.cols() != n2 || n2 % 2 != 0)
        throw std::invalid_argument("hermitian_from_real: even-dimension square input");
    const Eigen::Index n = n2 / 2;
    Eigen::MatrixXcd H(n, n);
    H.real() = 0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
    H.imag() = 0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
    // Exact Hermitian symmetrization; X's numerical asymmetry is the caller's.
    return 0.5 * (H + H.adjoint()).eval();
}

CcSolution solve_charnes_cooper_sdp(const LiftedProblem& lp, const SystemConfig& cfg) {
    const Eigen::Index nn = lp.h.size();
    const int n_ant = lp.n_antennas;
    if (nn != Eigen::Index(n_ant) * n_ant)
        throw std::invalid_argument("solve_charnes_cooper_sdp: inconsistent lifted problem");

    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(nn, nn);
    const Eigen::MatrixXcd fwd_noise = cfg.relay_noise_power * (lp.A * lp.A.adjoint());
    const Eigen::MatrixXcd power_quad =
        cfg.source_power * (lp.B * lp.B.adjoint()) + cfg.relay_noise_power * eye;
    const Eigen::MatrixXcd signal_quad = cfg.source_power * (lp.h * lp.h.adjoint());

    // Variables: X = embed(Q_tilde), x = (tau, power slack).
    sdp::Problem p;
    p.C = 0.5 * hermitian_to_real_embedding(fwd_noise);
    p.c = Eigen::Vector2d(cfg.dest_noise_power, 0.0);
    p.A = {0.5 * hermitian_to_real_embedding(power_quad),
           0.5 * hermitian_to_real_embedding(signal_quad)};
    p.a = {Eigen::Vector2d(-cfg.relay_power_budget, 1.0), Eigen::Vector2d(0.0, 0.0)};
    p.b = Eigen::Vector2d(0.0, 1.0);

    sdp::Options opts;
    opts.max_iters = cfg.sdp.max_iters;
    CcSolution cc;
    cc.ipm = sdp::solve(p, opts);
    const double tol = cfg.sdp.feasibility_tol;
    if (!cc.ipm.converged || cc.ipm.primal_infeas > tol || cc.ipm.dual_infeas > tol) {
        std::ostringstream msg;
        msg << "solve_charnes_cooper_sdp: interior-point method did not converge"
            << " (iters=" << cc.ipm.iterations << ", gap=" << cc.ipm.rel_gap
            << ", pinf=" << cc.ipm.primal_infeas << ", dinf=" << cc.ipm.dual_infeas << ")";
        throw std::runtime_error(msg.str());
    }
    cc.q_tilde = hermitian_from_real(cc.ipm.X);
    cc.tau = cc.ipm.x[0];
    cc.objective = cc.ipm.primal_obj;
    if (!(cc.tau > 0.0) || !(cc.objective > 0.0))
        throw std::runtime_error("solve_charnes_cooper_sdp: degenerate transform solution");
    return cc;
}

double rank_one_residual(const Eigen::MatrixXcd& Q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q, Eigen::EigenvaluesOnly);
    const double tr = Q.real().trace();
    if (!(tr > 0.0)) return 1.0;
    return 1.0 - es.eigenvalues().maxCoeff() / tr;
}

Eigen::MatrixXcd recover_weights(const CcSolution& cc, int n_antennas) {
    const Eigen::Index nn = Eigen::Index(n_antennas) * n_antennas;
    if (cc.q_tilde.rows() != nn)
        throw std::invalid_argument("recover_weights: dimension mismatch");
    if (!(cc.tau > 0.0)) throw std::runtime_error("recover_weights: tau must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cc.q_tilde / cc.tau);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("recover_weights: eigendecomposition failed");
    const Eigen::Index top = nn - 1;  // eigenvalues ascend
    const double lmax = std::max(es.eigenvalues()[top], 0.0);
    const Eigen::VectorXcd w = std::sqrt(lmax) * es.eigenvectors().col(top);
    return Eigen::Map<const Eigen::MatrixXcd>(w.data(), n_antennas, n_antennas);
}

Eigen::MatrixXcd matched_filter_weights(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                                        const SystemConfig& cfg) {
    check_pair(h1, h2, "matched_filter_weights");
    const double n1 = h1.squaredNorm();
    const double n2 = h2.squaredNorm();
    if (n1 < 1e-24 || n2 < 1e-24)
        throw std::invalid_argument("matched_filter_weights: zero channel");
    const double alpha = std::sqrt(
        cfg.relay_power_budget /
        (cfg.source_power * n1 * n1 * n2 + cfg.relay_noise_power * n1 * n2));
    return alpha * (h2 * h1.adjoint());
}

WeightDesign design_weights(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                            const SystemConfig& cfg) {
    check_pair(h1, h2, "design_weights");
    WeightDesign wd;
    if (h1.norm() < 1e-12 || h2.norm() < 1e-12) {
        wd.W = Eigen::MatrixXcd::Zero(h1.size(), h1.size());
        wd.degenerate = true;
        return wd;
    }
    const LiftedProblem lp = lift_problem(h1, h2);
    const CcSolution cc = solve_charnes_cooper_sdp(lp, cfg);
    wd.W = recover_weights(cc, lp.n_antennas);
    wd.snr = end_to_end_snr(wd.W, h1, h2, cfg);
    wd.rank_residual = rank_one_residual(cc.q_tilde);
    wd.sdp_iterations = cc.ipm.iterations;
    return wd;
}

}  // namespace marelay
