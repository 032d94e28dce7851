// sdp.hpp - small dense semidefinite programming solver
//
// Standard form over the product cone S+^n x R+^k:
//   minimize    <C, X> + c.x
//   subject to  <A_i, X> + a_i.x = b_i   (i = 1..m)
//               X symmetric positive semidefinite, x >= 0
// Inner products are trace products on the matrix block. The solver is an
// infeasible-start primal-dual interior-point method with the HKM search
// direction and Mehrotra predictor-corrector steps; fine for the small dense
// problems this library produces (n up to a few hundred, m small).
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace marelay::sdp {

struct Problem {
    Eigen::MatrixXd C;               // n x n symmetric cost
    Eigen::VectorXd c;               // k-vector cost on the nonnegative block
    std::vector<Eigen::MatrixXd> A;  // m symmetric constraint matrices
    std::vector<Eigen::VectorXd> a;  // m rows acting on the nonnegative block
    Eigen::VectorXd b;               // m right-hand sides
};

struct Options {
    double gap_tol = 1e-10;    // relative duality gap
    double feas_tol = 1e-9;    // relative primal/dual residual norms
    int max_iters = 100;
    double step_frac = 0.98;   // fraction of the distance to the cone boundary
};

struct Solution {
    Eigen::MatrixXd X;
    Eigen::VectorXd x;
    Eigen::VectorXd y;   // equality multipliers
    Eigen::MatrixXd Z;   // dual matrix slack
    Eigen::VectorXd z;   // dual vector slack
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double rel_gap = 0.0;
    double primal_infeas = 0.0;
    double dual_infeas = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Throws std::invalid_argument on inconsistent dimensions. Never throws on
// numerical trouble; inspect `converged` and the residuals instead.
Solution solve(const Problem& prob, const Options& opts = {});

}  // namespace marelay::sdp
