// sdp.cpp - infeasible-start HKM predictor-corrector interior-point method
#include "marelay/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace marelay::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest alpha with v + alpha*dv >= 0.
double max_step_nonneg(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double alpha = kInf;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
    return alpha;
}

// Largest alpha with S + alpha*D psd, given the Cholesky factor L of S:
// 1/alpha = -lambda_min(L^-1 D L^-T).
double max_step_psd(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& D) {
    const auto& L = llt.matrixL();
    Eigen::MatrixXd W = L.solve(D);
    W = L.solve(W.transpose()).transpose();
    W = 0.5 * (W + W.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    return lmin >= -1e-14 ? kInf : -1.0 / lmin;
}

double trace_dot(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    return A.cwiseProduct(B.transpose()).sum();
}

struct Scaled {
    Problem p;
    double s_obj = 1.0;
    Eigen::VectorXd s_con;
};

Scaled scale_problem(const Problem& in) {
    Scaled s;
    s.p = in;
    const std::size_t m = in.A.size();
    s.s_con.resize(static_cast<Eigen::Index>(m));
    double obj_norm = std::max(in.C.norm(), in.c.size() ? in.c.lpNorm<Eigen::Infinity>() : 0.0);
    s.s_obj = std::max(1.0, obj_norm);
    s.p.C /= s.s_obj;
    s.p.c /= s.s_obj;
    for (std::size_t i = 0; i < m; ++i) {
        double norm = std::max(in.A[i].norm(),
                               in.a[i].size() ? in.a[i].lpNorm<Eigen::Infinity>() : 0.0);
        const double si = std::max(1.0, norm);
        s.s_con[static_cast<Eigen::Index>(i)] = si;
        s.p.A[i] /= si;
        s.p.a[i] /= si;
        s.p.b[static_cast<Eigen::Index>(i)] /= si;
    }
    return s;
}

}  // namespace

Solution solve(const Problem& prob, const Options& opts) {
    const Eigen::Index n = prob.C.rows();
    const Eigen::Index k = prob.c.size();
    const std::size_t m = prob.A.size();
    if (prob.C.cols() != n) throw std::invalid_argument("sdp::solve: C must be square");
    if (prob.a.size() != m || static_cast<std::size_t>(prob.b.size()) != m)
        throw std::invalid_argument("sdp::solve: constraint counts disagree");
    for (std::size_t i = 0; i < m; ++i)
        if (prob.A[i].rows() != n || prob.A[i].cols() != n || prob.a[i].size() != k)
            throw std::invalid_argument("sdp::solve: constraint dimension mismatch");
    if (m == 0) throw std::invalid_argument("sdp::solve: need at least one constraint");

    const Scaled sc = scale_problem(prob);
    const Problem& p = sc.p;
    const Eigen::Index mm = static_cast<Eigen::Index>(m);

    // Initial point: a comfortably interior multiple of the identity.
    const double bmax = p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0;
    const double rho_p = std::max({10.0, std::sqrt(double(n + k)), double(n) * bmax});
    const double rho_d = std::max(10.0, std::sqrt(double(n + k)));
    Eigen::MatrixXd X = rho_p * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Z = rho_d * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(k, rho_p);
    Eigen::VectorXd z = Eigen::VectorXd::Constant(k, rho_d);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(mm);

    const double b_ref = 1.0 + p.b.norm();
    const double c_ref = 1.0 + std::sqrt(p.C.squaredNorm() + p.c.squaredNorm());

    Solution sol;
    Eigen::VectorXd rp(mm);
    Eigen::MatrixXd Rd(n, n);
    Eigen::VectorXd rd(k);
    Eigen::MatrixXd M(mm, mm);
    Eigen::VectorXd rhs(mm);

    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        for (Eigen::Index i = 0; i < mm; ++i)
            rp[i] = p.b[i] - trace_dot(p.A[i], X) - p.a[i].dot(x);
        Rd = p.C - Z;
        rd = p.c - z;
        for (Eigen::Index i = 0; i < mm; ++i) {
            Rd -= y[i] * p.A[i];
            rd -= y[i] * p.a[i];
        }
        const double mu = (X.cwiseProduct(Z).sum() + x.dot(z)) / double(n + k);
        const double pobj = trace_dot(p.C, X) + p.c.dot(x);
        const double dobj = p.b.dot(y);
        sol.rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        sol.primal_infeas = rp.norm() / b_ref;
        sol.dual_infeas = std::sqrt(Rd.squaredNorm() + rd.squaredNorm()) / c_ref;
        if (sol.rel_gap <= opts.gap_tol && sol.primal_infeas <= opts.feas_tol &&
            sol.dual_infeas <= opts.feas_tol) {
            sol.converged = true;
            break;
        }
        if (!std::isfinite(mu) || mu > 1e32) break;

        Eigen::LLT<Eigen::MatrixXd> lltX(X);
        Eigen::LLT<Eigen::MatrixXd> lltZ(Z);
        if (lltX.info() != Eigen::Success || lltZ.info() != Eigen::Success) break;
        const Eigen::MatrixXd Zi = lltZ.solve(Eigen::MatrixXd::Identity(n, n));
        const Eigen::MatrixXd XRdZi = X * (Rd * Zi);

        // Schur complement; identical for the predictor and corrector solves.
        std::vector<Eigen::MatrixXd> XAZi(m);
        for (std::size_t j = 0; j < m; ++j) XAZi[j] = X * (p.A[j] * Zi);
        for (Eigen::Index i = 0; i < mm; ++i)
            for (Eigen::Index j = 0; j < mm; ++j) {
                double v = trace_dot(p.A[static_cast<std::size_t>(i)],
                                     XAZi[static_cast<std::size_t>(j)]);
                for (Eigen::Index l = 0; l < k; ++l)
                    v += p.a[static_cast<std::size_t>(i)][l] * x[l] *
                         p.a[static_cast<std::size_t>(j)][l] / z[l];
                M(i, j) = v;
            }
        M = 0.5 * (M + M.transpose()).eval();
        Eigen::LDLT<Eigen::MatrixXd> lltM(M);
        if (lltM.info() != Eigen::Success) break;

        auto solve_direction = [&](double sigma_mu, const Eigen::MatrixXd* corrM,
                                   const Eigen::VectorXd* corrv, Eigen::MatrixXd& dX,
                                   Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::MatrixXd& dZ,
                                   Eigen::VectorXd& dz) {
            Eigen::MatrixXd G = -X - XRdZi;
            if (sigma_mu != 0.0) G += sigma_mu * Zi;
            if (corrM) G -= *corrM * Zi;
            Eigen::VectorXd rc = -x.cwiseProduct(z);
            if (sigma_mu != 0.0) rc.array() += sigma_mu;
            if (corrv) rc -= *corrv;
            const Eigen::VectorXd vfix = (rc - x.cwiseProduct(rd)).cwiseQuotient(z);
            for (Eigen::Index i = 0; i < mm; ++i)
                rhs[i] = rp[i] - trace_dot(p.A[static_cast<std::size_t>(i)], G) -
                         p.a[static_cast<std::size_t>(i)].dot(vfix);
            dy = lltM.solve(rhs);
            dZ = Rd;
            dz = rd;
            Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < mm; ++i) {
                dZ -= dy[i] * p.A[static_cast<std::size_t>(i)];
                dz -= dy[i] * p.a[static_cast<std::size_t>(i)];
                S += dy[i] * p.A[static_cast<std::size_t>(i)];
            }
            dX = G + X * (S * Zi);
            dX = 0.5 * (dX + dX.transpose()).eval();
            dx = (rc - x.cwiseProduct(dz)).cwiseQuotient(z);
        };

        Eigen::MatrixXd dXa, dZa, dX, dZ;
        Eigen::VectorXd dxa, dya, dza, dx, dy, dz;
        solve_direction(0.0, nullptr, nullptr, dXa, dxa, dya, dZa, dza);

        double ap = std::min({1.0, max_step_psd(lltX, dXa), max_step_nonneg(x, dxa)});
        double ad = std::min({1.0, max_step_psd(lltZ, dZa), max_step_nonneg(z, dza)});
        const double mu_aff = ((X + ap * dXa).cwiseProduct(Z + ad * dZa).sum() +
                               (x + ap * dxa).dot(z + ad * dza)) /
                              double(n + k);
        double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
        sigma = std::min(1.0, std::max(1e-8, sigma));

        const Eigen::MatrixXd corrM = dXa * dZa;
        const Eigen::VectorXd corrv = dxa.cwiseProduct(dza);
        solve_direction(sigma * mu, &corrM, &corrv, dX, dx, dy, dZ, dz);

        ap = std::min({1.0, opts.step_frac * max_step_psd(lltX, dX),
                       opts.step_frac * max_step_nonneg(x, dx)});
        ad = std::min({1.0, opts.step_frac * max_step_psd(lltZ, dZ),
                       opts.step_frac * max_step_nonneg(z, dz)});
        if (!(ap > 1e-12) || !(ad > 1e-12)) break;

        X += ap * dX;
        x += ap * dx;
        y += ad * dy;
        Z += ad * dZ;
        z += ad * dz;
        X = 0.5 * (X + X.transpose()).eval();
        Z = 0.5 * (Z + Z.transpose()).eval();
    }

    sol.iterations = iter;
    sol.X = X;
    sol.x = x;
    sol.Z = sc.s_obj * Z;
    sol.z = sc.s_obj * z;
    sol.y.resize(mm);
    for (Eigen::Index i = 0; i < mm; ++i) sol.y[i] = y[i] * sc.s_obj / sc.s_con[i];

    // Report objectives and residuals in the caller's units.
    sol.primal_obj = trace_dot(prob.C, sol.X) + prob.c.dot(sol.x);
    sol.dual_obj = prob.b.dot(sol.y);
    Eigen::VectorXd rp0(mm);
    for (Eigen::Index i = 0; i < mm; ++i)
        rp0[i] = prob.b[i] - trace_dot(prob.A[i], sol.X) - prob.a[i].dot(sol.x);
    Eigen::MatrixXd Rd0 = prob.C - sol.Z;
    Eigen::VectorXd rd0 = prob.c - sol.z;
    for (Eigen::Index i = 0; i < mm; ++i) {
        Rd0 -= sol.y[i] * prob.A[i];
        rd0 -= sol.y[i] * prob.a[i];
    }
    sol.primal_infeas = rp0.norm() / (1.0 + prob.b.norm());
    sol.dual_infeas = std::sqrt(Rd0.squaredNorm() + rd0.squaredNorm()) /
                      (1.0 + std::sqrt(prob.C.squaredNorm() + prob.c.squaredNorm()));
    sol.rel_gap = std::abs(sol.primal_obj - sol.dual_obj) /
                  (1.0 + std::abs(sol.primal_obj) + std::abs(sol.dual_obj));
    return sol;
}

}  // namespace marelay::sdp
