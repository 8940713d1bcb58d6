#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace platelim {

enum class ConeKind { free_block, nonneg, soc };

struct ConeSpec {
    ConeKind kind;
    int dim;
};

struct ConicTriplet {
    int row;
    int col;
    double value;
};

// Standard-form cone program: min c'x subject to Ax = b, x in K, where K is
// an ordered product of free blocks, nonnegative orthants and second-order
// cones partitioning the columns.
struct ConicProgram {
    int rows = 0;
    int cols = 0;
    std::vector<ConicTriplet> entries;
    std::vector<double> rhs;
    std::vector<double> objective;
    std::vector<ConeSpec> cones;

    void validate() const {
        if (rows < 0 || cols <= 0) throw std::invalid_argument("conic: bad dimensions");
        if (static_cast<int>(rhs.size()) != rows) throw std::invalid_argument("conic: rhs size mismatch");
        if (static_cast<int>(objective.size()) != cols)
            throw std::invalid_argument("conic: objective size mismatch");
        long long dim_sum = 0;
        for (const ConeSpec& c : cones) {
            if (c.dim < 1 || (c.kind == ConeKind::soc && c.dim < 2))
                throw std::invalid_argument("conic: invalid cone dimension");
            dim_sum += c.dim;
        }
        if (dim_sum != cols) throw std::invalid_argument("conic: cone dims do not sum to column count");
        std::vector<char> row_seen(rows, 0);
        for (const ConicTriplet& t : entries) {
            if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
                throw std::invalid_argument("conic: entry out of range");
            if (!std::isfinite(t.value)) throw std::invalid_argument("conic: non-finite entry");
            row_seen[t.row] = 1;
        }
        for (int i = 0; i < rows; ++i)
            if (!row_seen[i])
                throw std::invalid_argument("conic: row " + std::to_string(i) + " has no entries");
        for (double v : rhs)
            if (!std::isfinite(v)) throw std::invalid_argument("conic: non-finite rhs");
        for (double v : objective)
            if (!std::isfinite(v)) throw std::invalid_argument("conic: non-finite objective");
    }
};

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, max_iter, numerical };

inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::primal_infeasible: return "primal_infeasible";
        case SolveStatus::dual_infeasible: return "dual_infeasible";
        case SolveStatus::max_iter: return "max_iter";
        case SolveStatus::numerical: return "numerical";
    }
    return "?";
}

struct SolverSettings {
    double tol_feas = 1e-8;
    double tol_gap = 1e-8;
    int max_iter = 200;
    bool equilibrate = true;
    double regularization = 1e-8;
    bool verbose = false;
};

struct IterationRecord {
    int iter = 0;
    double mu = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    double step = 0.0;
    double sigma = 0.0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double tau = 0.0;
    double kappa = 0.0;
};

struct ConicSolution {
    SolveStatus status = SolveStatus::numerical;
    bool reduced_accuracy = false;
    std::vector<double> x, y, z;
    double objective = std::numeric_limits<double>::quiet_NaN();
    double primal_residual = std::numeric_limits<double>::infinity();
    double dual_residual = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    int iterations = 0;
    std::vector<IterationRecord> trace;
};

struct ResidualReport {
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
};

namespace detail {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

inline SpMat to_sparse(const ConicProgram& p) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(p.entries.size());
    for (const ConicTriplet& t : p.entries) trips.emplace_back(t.row, t.col, t.value);
    SpMat A(p.rows, p.cols);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

}  // namespace detail

// Relative KKT residuals of a candidate triple at the given program data.
inline ResidualReport residuals(const ConicProgram& p, const std::vector<double>& x,
                                const std::vector<double>& y, const std::vector<double>& z) {
    if (static_cast<int>(x.size()) != p.cols || static_cast<int>(y.size()) != p.rows ||
        static_cast<int>(z.size()) != p.cols)
        throw std::invalid_argument("residuals: dimension mismatch");
    detail::SpMat A = detail::to_sparse(p);
    detail::Vec xv = Eigen::Map<const detail::Vec>(x.data(), p.cols);
    detail::Vec yv = Eigen::Map<const detail::Vec>(y.data(), p.rows);
    detail::Vec zv = Eigen::Map<const detail::Vec>(z.data(), p.cols);
    detail::Vec b = Eigen::Map<const detail::Vec>(p.rhs.data(), p.rows);
    detail::Vec c = Eigen::Map<const detail::Vec>(p.objective.data(), p.cols);
    ResidualReport r;
    r.primal = (A * xv - b).norm() / (1.0 + b.norm());
    r.dual = (A.transpose() * yv + zv - c).norm() / (1.0 + c.norm());
    const double px = c.dot(xv), dy = b.dot(yv);
    r.gap = std::abs(px - dy) / (1.0 + std::abs(px) + std::abs(dy));
    return r;
}

namespace detail {

// Interior-point solver on the homogeneous self-dual embedding with
// Nesterov-Todd scaling and a Mehrotra predictor-corrector step. The KKT
// system [W^-2 A'; A 0] is factored as a statically regularized
// quasi-definite LDL' with the AMD ordering computed once.
class HsdeSolver {
  public:
    HsdeSolver(const ConicProgram& prog, const SolverSettings& settings)
        : p_(prog), st_(settings), n_(prog.cols), m_(prog.rows) {
        A_ = to_sparse(prog);
        b_ = Eigen::Map<const Vec>(prog.rhs.data(), m_);
        c_ = Eigen::Map<const Vec>(prog.objective.data(), n_);
        norm_b_orig_ = b_.norm();
        norm_c_orig_ = c_.norm();
        build_cone_layout();
        dr_ = Vec::Ones(m_);
        dc_ = Vec::Ones(n_);
        if (st_.equilibrate) equilibrate();
        At_ = A_.transpose();
    }

    ConicSolution run();

  private:
    struct SocBlock {
        int offset;
        int dim;
        double eta = 1.0;
        Vec v;  // normalized NT point, v' J v = 1
    };

    const ConicProgram& p_;
    SolverSettings st_;
    int n_, m_;
    SpMat A_, At_;
    Vec b_, c_;
    double norm_b_orig_, norm_c_orig_;
    Vec dr_, dc_;  // equilibration scalings: A_scaled = diag(dr) A diag(dc)

    std::vector<int> nonneg_idx_;
    std::vector<SocBlock> socs_;
    std::vector<char> is_cone_col_;
    double cone_degree_ = 0.0;

    Vec nn_w_;      // nonneg scaling w_i
    Vec lambda_;    // scaled point, cone coordinates only (full length, 0 on free)

    // KKT machinery
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    SpMat kkt_;
    bool analyzed_ = false;
    double delta_ = 1e-8;
    std::vector<Eigen::MatrixXd> soc_winv2_;  // dense W^-2 per SOC block

    void build_cone_layout() {
        int off = 0;
        is_cone_col_.assign(n_, 0);
        for (const ConeSpec& cs : p_.cones) {
            if (cs.kind == ConeKind::nonneg) {
                for (int k = 0; k < cs.dim; ++k) {
                    nonneg_idx_.push_back(off + k);
                    is_cone_col_[off + k] = 1;
                }
                cone_degree_ += cs.dim;
            } else if (cs.kind == ConeKind::soc) {
                SocBlock sb;
                sb.offset = off;
                sb.dim = cs.dim;
                sb.v = Vec::Zero(cs.dim);
                sb.v(0) = 1.0;
                socs_.push_back(sb);
                for (int k = 0; k < cs.dim; ++k) is_cone_col_[off + k] = 1;
                cone_degree_ += 1.0;
            }
            off += cs.dim;
        }
        soc_winv2_.resize(socs_.size());
    }

    // Ruiz equilibration; columns of a cone block share one scaling factor so
    // the scaled block cone equals the original cone.
    void equilibrate() {
        for (int pass = 0; pass < 5; ++pass) {
            Vec row_max = Vec::Zero(m_);
            Vec col_max = Vec::Zero(n_);
            for (int j = 0; j < A_.outerSize(); ++j) {
                for (SpMat::InnerIterator it(A_, j); it; ++it) {
                    const double a = std::abs(it.value());
                    row_max(it.row()) = std::max(row_max(it.row()), a);
                    col_max(j) = std::max(col_max(j), a);
                }
            }
            int off = 0;
            for (const ConeSpec& cs : p_.cones) {
                if (cs.kind != ConeKind::free_block && cs.kind != ConeKind::nonneg) {
                    double blk = 0.0;
                    for (int k = 0; k < cs.dim; ++k) blk = std::max(blk, col_max(off + k));
                    for (int k = 0; k < cs.dim; ++k) col_max(off + k) = blk;
                }
                off += cs.dim;
            }
            Vec rs = row_max.unaryExpr([](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 1.0; });
            Vec csc = col_max.unaryExpr([](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 1.0; });
            for (int j = 0; j < A_.outerSize(); ++j)
                for (SpMat::InnerIterator it(A_, j); it; ++it)
                    it.valueRef() *= rs(it.row()) * csc(j);
            dr_ = dr_.cwiseProduct(rs);
            dc_ = dc_.cwiseProduct(csc);
        }
        b_ = dr_.asDiagonal() * b_;
        c_ = dc_.asDiagonal() * c_;
    }

    static void soc_parts(const Vec& u, int off, int dim, double& u0, double& tail_sq) {
        u0 = u(off);
        tail_sq = u.segment(off + 1, dim - 1).squaredNorm();
    }

    // lambda = W z = W^-1 x; false if x or z leaves the cone interior.
    bool update_scaling(const Vec& x, const Vec& z) {
        nn_w_.resize(static_cast<int>(nonneg_idx_.size()));
        for (size_t i = 0; i < nonneg_idx_.size(); ++i) {
            const int j = nonneg_idx_[i];
            if (!(x(j) > 0.0) || !(z(j) > 0.0)) return false;
            nn_w_(static_cast<int>(i)) = std::sqrt(x(j) / z(j));
        }
        for (size_t s = 0; s < socs_.size(); ++s) {
            SocBlock& sb = socs_[s];
            double x0, xt, z0, zt;
            soc_parts(x, sb.offset, sb.dim, x0, xt);
            soc_parts(z, sb.offset, sb.dim, z0, zt);
            const double xres = x0 * x0 - xt;
            const double zres = z0 * z0 - zt;
            if (!(xres > 0.0) || !(zres > 0.0) || !(x0 > 0.0) || !(z0 > 0.0)) return false;
            const double xnorm = std::sqrt(xres), znorm = std::sqrt(zres);
            Vec xb = x.segment(sb.offset, sb.dim) / xnorm;
            Vec zb = z.segment(sb.offset, sb.dim) / znorm;
            const double gamma = std::sqrt(0.5 * (1.0 + xb.dot(zb)));
            sb.v.resize(sb.dim);
            sb.v(0) = (xb(0) + zb(0)) / (2.0 * gamma);
            sb.v.tail(sb.dim - 1) =
                (xb.tail(sb.dim - 1) - zb.tail(sb.dim - 1)) / (2.0 * gamma);
            sb.eta = std::sqrt(xnorm / znorm);

            // W^-2 = eta^-2 P(J v) = eta^-2 (2 vt vt' - J) with vt = J v
            // (P(v)^{1/2} is the scaling matrix, so no squaring here).
            Vec vt = sb.v;
            vt.tail(sb.dim - 1) *= -1.0;
            Eigen::MatrixXd H = 2.0 * vt * vt.transpose();
            H(0, 0) -= 1.0;
            for (int k = 1; k < sb.dim; ++k) H(k, k) += 1.0;
            soc_winv2_[s] = H / (sb.eta * sb.eta);
        }
        lambda_ = Vec::Zero(n_);
        apply_w(z, lambda_);
        return true;
    }

    // out = W u on cone coordinates (free coordinates zeroed). For an SOC
    // block W = eta [[a, q'], [q, I + q q'/(1+a)]] with (a, q) = v, the
    // symmetric square root of the quadratic representation P(v).
    void apply_w(const Vec& u, Vec& out) const {
        out.setZero();
        for (size_t i = 0; i < nonneg_idx_.size(); ++i) {
            const int j = nonneg_idx_[i];
            out(j) = nn_w_(static_cast<int>(i)) * u(j);
        }
        for (const SocBlock& sb : socs_) {
            const double a = sb.v(0);
            const auto q = sb.v.tail(sb.dim - 1);
            const double u0 = u(sb.offset);
            const auto u1 = u.segment(sb.offset + 1, sb.dim - 1);
            const double zeta = q.dot(u1);
            out(sb.offset) = sb.eta * (a * u0 + zeta);
            out.segment(sb.offset + 1, sb.dim - 1) =
                sb.eta * (u1 + (u0 + zeta / (1.0 + a)) * q);
        }
    }

    // out = W^-1 u on cone coordinates; W^-1 = eta^-1 [[a, -q'], [-q, I + q q'/(1+a)]].
    void apply_winv(const Vec& u, Vec& out) const {
        out.setZero();
        for (size_t i = 0; i < nonneg_idx_.size(); ++i) {
            const int j = nonneg_idx_[i];
            out(j) = u(j) / nn_w_(static_cast<int>(i));
        }
        for (const SocBlock& sb : socs_) {
            const double a = sb.v(0);
            const auto q = sb.v.tail(sb.dim - 1);
            const double u0 = u(sb.offset);
            const auto u1 = u.segment(sb.offset + 1, sb.dim - 1);
            const double zeta = q.dot(u1);
            out(sb.offset) = (a * u0 - zeta) / sb.eta;
            out.segment(sb.offset + 1, sb.dim - 1) =
                (u1 + (-u0 + zeta / (1.0 + a)) * q) / sb.eta;
        }
    }

    // Jordan product u o v on cone coordinates.
    void jordan_product(const Vec& u, const Vec& v, Vec& out) const {
        out.setZero();
        for (int j : nonneg_idx_) out(j) = u(j) * v(j);
        for (const SocBlock& sb : socs_) {
            const auto us = u.segment(sb.offset, sb.dim);
            const auto vs = v.segment(sb.offset, sb.dim);
            out(sb.offset) = us.dot(vs);
            out.segment(sb.offset + 1, sb.dim - 1) =
                us(0) * vs.tail(sb.dim - 1) + vs(0) * us.tail(sb.dim - 1);
        }
    }

    // Solves lambda o out = d blockwise.
    void jordan_solve(const Vec& d, Vec& out) const {
        out.setZero();
        for (size_t i = 0; i < nonneg_idx_.size(); ++i) {
            const int j = nonneg_idx_[i];
            out(j) = d(j) / (lambda_(j));
        }
        for (const SocBlock& sb : socs_) {
            const auto ls = lambda_.segment(sb.offset, sb.dim);
            const auto ds = d.segment(sb.offset, sb.dim);
            const double det = ls(0) * ls(0) - ls.tail(sb.dim - 1).squaredNorm();
            const double q0 = (ls(0) * ds(0) - ls.tail(sb.dim - 1).dot(ds.tail(sb.dim - 1))) / det;
            out(sb.offset) = q0;
            out.segment(sb.offset + 1, sb.dim - 1) =
                (ds.tail(sb.dim - 1) - q0 * ls.tail(sb.dim - 1)) / ls(0);
        }
    }

    // Cone identity on cone coordinates.
    Vec cone_identity() const {
        Vec e = Vec::Zero(n_);
        for (int j : nonneg_idx_) e(j) = 1.0;
        for (const SocBlock& sb : socs_) e(sb.offset) = 1.0;
        return e;
    }

    // Largest step length alpha such that u + alpha du stays in the cone,
    // capped at `cap`.
    double step_to_boundary(const Vec& u, const Vec& du, double cap) const {
        double alpha = cap;
        for (int j : nonneg_idx_) {
            if (du(j) < 0.0) alpha = std::min(alpha, -u(j) / du(j));
        }
        for (const SocBlock& sb : socs_) {
            const auto us = u.segment(sb.offset, sb.dim);
            const auto ds = du.segment(sb.offset, sb.dim);
            const double a = ds(0) * ds(0) - ds.tail(sb.dim - 1).squaredNorm();
            const double bq = 2.0 * (us(0) * ds(0) - us.tail(sb.dim - 1).dot(ds.tail(sb.dim - 1)));
            const double cq = us(0) * us(0) - us.tail(sb.dim - 1).squaredNorm();
            double root = std::numeric_limits<double>::infinity();
            if (cq <= 0.0) {
                root = 0.0;
            } else if (std::abs(a) < 1e-300) {
                if (bq < 0.0) root = -cq / bq;
            } else {
                const double disc = bq * bq - 4.0 * a * cq;
                // Exit root (-bq - sqrt(disc))/(2a) in the cancellation-free
                // form 2c/(-bq + sqrt(disc)); for a > 0 it exists only when
                // bq < 0 and disc >= 0, for a < 0 always (cq > 0).
                if (a > 0.0) {
                    if (bq < 0.0 && disc >= 0.0) root = 2.0 * cq / (-bq + std::sqrt(disc));
                } else {
                    root = 2.0 * cq / (-bq + std::sqrt(std::max(disc, 0.0)));
                }
            }
            // the first component must also stay positive
            if (ds(0) < 0.0) root = std::min(root, -us(0) / ds(0));
            if (root >= 0.0) alpha = std::min(alpha, root);
        }
        return alpha;
    }

    void assemble_kkt() {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(A_.nonZeros() + n_ + m_ + 16 * socs_.size());
        // (1,1) block: delta on free columns, z/x + delta on nonneg, dense
        // W^-2 (+ delta) on SOC blocks; lower triangle only.
        std::vector<char> handled(n_, 0);
        for (size_t i = 0; i < nonneg_idx_.size(); ++i) {
            const int j = nonneg_idx_[i];
            const double w = nn_w_(static_cast<int>(i));
            trips.emplace_back(j, j, 1.0 / (w * w) + delta_);
            handled[j] = 1;
        }
        for (size_t s = 0; s < socs_.size(); ++s) {
            const SocBlock& sb = socs_[s];
            const Eigen::MatrixXd& M = soc_winv2_[s];
            for (int r = 0; r < sb.dim; ++r) {
                for (int cidx = 0; cidx <= r; ++cidx) {
                    double v = M(r, cidx);
                    if (r == cidx) v += delta_;
                    trips.emplace_back(sb.offset + r, sb.offset + cidx, v);
                }
                handled[sb.offset + r] = 1;
            }
        }
        for (int j = 0; j < n_; ++j)
            if (!handled[j]) trips.emplace_back(j, j, delta_);
        // (2,1) block: A at rows n..n+m-1.
        for (int j = 0; j < A_.outerSize(); ++j)
            for (SpMat::InnerIterator it(A_, j); it; ++it)
                trips.emplace_back(n_ + static_cast<int>(it.row()), j, it.value());
        // (2,2) block: -delta.
        for (int i = 0; i < m_; ++i) trips.emplace_back(n_ + i, n_ + i, -delta_);

        kkt_.resize(n_ + m_, n_ + m_);
        kkt_.setFromTriplets(trips.begin(), trips.end());
        kkt_.makeCompressed();
    }

    // Factorizes the current KKT matrix, bumping the regularization if the
    // factorization reports a zero pivot.
    bool factorize() {
        for (int attempt = 0; attempt < 4; ++attempt) {
            assemble_kkt();
            if (!analyzed_) {
                ldlt_.analyzePattern(kkt_);
                analyzed_ = true;
            }
            ldlt_.factorize(kkt_);
            if (ldlt_.info() == Eigen::Success) return true;
            delta_ *= 100.0;
        }
        return false;
    }

    // Solves K w = r with one step of iterative refinement against the
    // unregularized matrix.
    Vec kkt_solve(const Vec& r) const {
        Vec w = ldlt_.solve(r);
        Vec kw = kkt_.selfadjointView<Eigen::Lower>() * w;
        kw.head(n_) -= delta_ * w.head(n_);
        kw.tail(m_) += delta_ * w.tail(m_);
        Vec res = r - kw;
        w += ldlt_.solve(res);
        return w;
    }

    struct Direction {
        Vec dx, dy, dz;
        double dtau = 0.0, dkappa = 0.0;
    };

    // Solves the Newton system for the given complementarity right-hand
    // sides; f scales the feasibility residuals (1 for the affine step,
    // 1 - sigma for the combined step).
    Direction solve_direction(double f, const Vec& rd, const Vec& rp, double rg, const Vec& ds,
                              double dkap, const Vec& u1, double tau, double kappa) {
        Vec dhat(n_);
        jordan_solve(ds, dhat);
        Vec winv_dhat(n_);
        apply_winv(dhat, winv_dhat);

        Vec rhs2(n_ + m_);
        rhs2.head(n_) = winv_dhat + f * rd;  // W^-1 (lambda \ ds) - R_d with R_d = -f rd
        rhs2.tail(m_) = -f * rp;             // R_p
        Vec w2 = kkt_solve(rhs2);

        const Vec u2x = w2.head(n_);
        const Vec xi2 = w2.tail(m_);
        const Vec u1x = u1.head(n_);
        const Vec xi1 = u1.tail(m_);

        const double denom = c_.dot(u1x) + b_.dot(xi1) - kappa / tau;
        const double numer = -f * rg - dkap / tau - c_.dot(u2x) - b_.dot(xi2);
        Direction d;
        d.dtau = numer / denom;
        d.dx = u2x + d.dtau * u1x;
        Vec xi = xi2 + d.dtau * xi1;
        d.dy = -xi;
        // dz = W^-1 dhat - W^-2 dx on cone coordinates, 0 on free ones.
        Vec wdx(n_), w2dx(n_);
        apply_winv(d.dx, wdx);
        apply_winv(wdx, w2dx);
        d.dz = winv_dhat - w2dx;
        d.dkappa = (dkap - kappa * d.dtau) / tau;
        return d;
    }

    // Shifts cone coordinates into the interior: u + (1 + worst violation) e.
    void bring_to_cone(Vec& u) const {
        double worst = -std::numeric_limits<double>::infinity();
        for (int j : nonneg_idx_) worst = std::max(worst, -u(j));
        for (const SocBlock& sb : socs_)
            worst = std::max(worst, u.segment(sb.offset + 1, sb.dim - 1).norm() - u(sb.offset));
        if (worst >= 0.0) {
            const Vec e = cone_identity();
            u += (1.0 + worst) * e;
        }
    }

    bool in_cone_interior(const Vec& u) const {
        for (int j : nonneg_idx_)
            if (!(u(j) > 0.0)) return false;
        for (const SocBlock& sb : socs_) {
            if (!(u(sb.offset) > 0.0)) return false;
            if (!(u(sb.offset) * u(sb.offset) >
                  u.segment(sb.offset + 1, sb.dim - 1).squaredNorm()))
                return false;
        }
        return true;
    }
};

}  // namespace detail

inline ConicSolution solve(const ConicProgram& program, const SolverSettings& settings = {});

}  // namespace platelim

#include "platelim/conic_solve_impl.hpp"
