#pragma once

// Implementation of detail::HsdeSolver::run and platelim::solve. Kept out of
// conic.hpp for readability only; conic.hpp includes this at the end.

#include <cstdio>

namespace platelim {
namespace detail {

inline ConicSolution HsdeSolver::run() {
    ConicSolution sol;
    delta_ = st_.regularization;

    const Vec e = cone_identity();
    Vec x = e, z = e, y = Vec::Zero(m_);
    double tau = 1.0, kappa = 1.0;

    if (!update_scaling(x, z) || !factorize()) {
        sol.status = SolveStatus::numerical;
        return sol;
    }

    // Least-squares style initialization through the identity-scaled KKT
    // system, then shift the cone coordinates into the interior.
    {
        Vec r1 = Vec::Zero(n_ + m_);
        r1.tail(m_) = b_;
        Vec w1 = kkt_solve(r1);
        x = w1.head(n_);
        bring_to_cone(x);

        Vec r2 = Vec::Zero(n_ + m_);
        r2.head(n_) = c_;
        Vec w2 = kkt_solve(r2);
        y = w2.tail(m_);
        Vec ztilde = w2.head(n_);
        z.setZero();
        for (int j = 0; j < n_; ++j)
            if (is_cone_col_[j]) z(j) = ztilde(j);
        bring_to_cone(z);
    }

    const Vec b0 = b_.cwiseQuotient(dr_);
    const Vec c0 = c_.cwiseQuotient(dc_);
    const double norm_b0 = b0.norm(), norm_c0 = c0.norm();

    Vec cand_x, cand_y, cand_z;
    ResidualReport cand_res;
    double cand_pobj = std::numeric_limits<double>::quiet_NaN();
    int stall_count = 0;
    bool done = false;

    auto finalize_point = [&](SolveStatus status, bool reduced) {
        sol.status = status;
        sol.reduced_accuracy = reduced;
        sol.x.assign(cand_x.data(), cand_x.data() + n_);
        sol.y.assign(cand_y.data(), cand_y.data() + m_);
        sol.z.assign(cand_z.data(), cand_z.data() + n_);
        sol.objective = cand_pobj;
        sol.primal_residual = cand_res.primal;
        sol.dual_residual = cand_res.dual;
        sol.gap = cand_res.gap;
        done = true;
    };

    for (int iter = 0;; ++iter) {
        const Vec rp = A_ * x - b_ * tau;
        const Vec rd = At_ * y + z - c_ * tau;
        const double rg = c_.dot(x) - b_.dot(y) + kappa;
        const double mu = (x.dot(z) + tau * kappa) / (cone_degree_ + 1.0);

        // Candidate in the original (unequilibrated) coordinates.
        cand_x = dc_.cwiseProduct(x) / tau;
        cand_y = dr_.cwiseProduct(y) / tau;
        cand_z = z.cwiseQuotient(dc_) / tau;
        const Vec ax = (A_ * x).cwiseQuotient(dr_) / tau;
        const Vec aty = (At_ * y).cwiseQuotient(dc_) / tau;
        cand_res.primal = (ax - b0).norm() / (1.0 + norm_b0);
        cand_res.dual = (aty + cand_z - c0).norm() / (1.0 + norm_c0);
        cand_pobj = c_.dot(x) / tau;
        const double dobj = b_.dot(y) / tau;
        cand_res.gap =
            std::abs(cand_pobj - dobj) / (1.0 + std::abs(cand_pobj) + std::abs(dobj));

        IterationRecord rec;
        rec.iter = iter;
        rec.mu = mu;
        rec.primal_residual = cand_res.primal;
        rec.dual_residual = cand_res.dual;
        rec.gap = cand_res.gap;
        rec.primal_objective = cand_pobj;
        rec.dual_objective = dobj;
        rec.tau = tau;
        rec.kappa = kappa;
        sol.trace.push_back(rec);
        sol.iterations = iter;
        if (st_.verbose)
            std::printf("iter %3d  mu %.3e  pres %.3e  dres %.3e  gap %.3e  tau %.3e\n", iter, mu,
                        cand_res.primal, cand_res.dual, cand_res.gap, tau);

        if (cand_res.primal <= st_.tol_feas && cand_res.dual <= st_.tol_feas &&
            cand_res.gap <= st_.tol_gap) {
            finalize_point(SolveStatus::optimal, false);
            break;
        }
        if (cand_res.primal <= 10.0 * st_.tol_feas && cand_res.dual <= 10.0 * st_.tol_feas &&
            cand_res.gap <= 10.0 * st_.tol_gap) {
            if (++stall_count >= 5) {
                finalize_point(SolveStatus::optimal, true);
                break;
            }
        } else {
            stall_count = 0;
        }

        // Infeasibility certificates from the homogeneous iterate.
        const double by = b_.dot(y);
        if (by > 0.0 && kappa >= tau) {
            const Vec cert = (At_ * y + z).cwiseQuotient(dc_) / by;
            if (cert.norm() <= st_.tol_feas * (1.0 + norm_c0)) {
                cand_y = dr_.cwiseProduct(y) / by;
                cand_z = z.cwiseQuotient(dc_) / by;
                cand_x.setZero();
                cand_pobj = std::numeric_limits<double>::quiet_NaN();
                finalize_point(SolveStatus::primal_infeasible, false);
                break;
            }
        }
        const double cx = c_.dot(x);
        if (cx < 0.0 && kappa >= tau) {
            const Vec cert = (A_ * x).cwiseQuotient(dr_) / (-cx);
            if (cert.norm() <= st_.tol_feas * (1.0 + norm_b0)) {
                cand_x = dc_.cwiseProduct(x) / (-cx);
                cand_y.setZero();
                cand_z.setZero();
                cand_pobj = std::numeric_limits<double>::quiet_NaN();
                finalize_point(SolveStatus::dual_infeasible, false);
                break;
            }
        }

        if (iter >= st_.max_iter) {
            finalize_point(SolveStatus::max_iter, false);
            break;
        }

        if (!update_scaling(x, z) || !factorize()) {
            finalize_point(SolveStatus::numerical, false);
            break;
        }

        Vec r1(n_ + m_);
        r1.head(n_) = -c_;
        r1.tail(m_) = b_;
        const Vec u1 = kkt_solve(r1);

        // Affine (predictor) direction.
        Vec lam_sq(n_);
        jordan_product(lambda_, lambda_, lam_sq);
        Direction da =
            solve_direction(1.0, rd, rp, rg, -lam_sq, -tau * kappa, u1, tau, kappa);

        double alpha_aff = step_to_boundary(x, da.dx, 1.0);
        alpha_aff = std::min(alpha_aff, step_to_boundary(z, da.dz, 1.0));
        if (da.dtau < 0.0) alpha_aff = std::min(alpha_aff, -tau / da.dtau);
        if (da.dkappa < 0.0) alpha_aff = std::min(alpha_aff, -kappa / da.dkappa);
        alpha_aff = std::clamp(alpha_aff, 0.0, 1.0);

        const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3.0), 1e-8, 0.999);

        // Combined (centering + corrector) direction.
        Vec wdx(n_), wdz(n_), corr(n_);
        apply_winv(da.dx, wdx);
        apply_w(da.dz, wdz);
        jordan_product(wdx, wdz, corr);
        Vec ds = sigma * mu * e - lam_sq - corr;
        const double dkap = sigma * mu - tau * kappa - da.dtau * da.dkappa;
        Direction d = solve_direction(1.0 - sigma, rd, rp, rg, ds, dkap, u1, tau, kappa);

        const double inf = std::numeric_limits<double>::infinity();
        double alpha = step_to_boundary(x, d.dx, inf);
        alpha = std::min(alpha, step_to_boundary(z, d.dz, inf));
        if (d.dtau < 0.0) alpha = std::min(alpha, -tau / d.dtau);
        if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa / d.dkappa);
        alpha = std::min(1.0, 0.99 * alpha);

        // Keep strictly inside the cone; back off on rounding spill.
        int backoff = 0;
        while (backoff < 30) {
            Vec xn = x + alpha * d.dx;
            Vec zn = z + alpha * d.dz;
            if (tau + alpha * d.dtau > 0.0 && kappa + alpha * d.dkappa > 0.0 &&
                in_cone_interior(xn) && in_cone_interior(zn))
                break;
            alpha *= 0.5;
            ++backoff;
        }
        if (backoff >= 30 || !(alpha > 0.0)) {
            finalize_point(SolveStatus::numerical, false);
            break;
        }

        x += alpha * d.dx;
        y += alpha * d.dy;
        z += alpha * d.dz;
        tau += alpha * d.dtau;
        kappa += alpha * d.dkappa;

        sol.trace.back().step = alpha;
        sol.trace.back().sigma = sigma;
    }

    (void)done;
    return sol;
}

}  // namespace detail

inline ConicSolution solve(const ConicProgram& program, const SolverSettings& settings) {
    program.validate();
    detail::HsdeSolver solver(program, settings);
    return solver.run();
}

}  // namespace platelim
