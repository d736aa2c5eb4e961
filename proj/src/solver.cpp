#include "fairsoc/solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fairsoc/certificates.hpp"

namespace fairsoc {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
        case SolveStatus::DualInfeasible: return "DualInfeasible";
        case SolveStatus::IterationLimit: return "IterationLimit";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

namespace {

constexpr double kStepFraction = 0.99;
constexpr double kSigmaMin = 1e-4;
constexpr double kSigmaMax = 0.9999;

struct ConeLayout {
    int free = 0;
    int lin = 0;
    std::vector<int> socs;  // block dims, contiguous after the linear block
    int total = 0;

    int lin_start() const { return free; }
    int soc_start() const { return free + lin; }
    // Barrier degree: one per linear coordinate, one per SOC block.
    double degree() const { return lin + static_cast<double>(socs.size()); }
};

// Nesterov-Todd scaling of the cone part. The linear block stores w_i =
// sqrt(x_i / z_i); each SOC block stores eta and the normalized scaling
// point wbar (with wbar0^2 - ||wbar_tail||^2 = 1) plus dense W / W^-1 /
// W^-2 matrices, which are tiny for the block sizes seen here.
struct NTScaling {
    Eigen::VectorXd w_lin;
    struct SocBlock {
        Eigen::MatrixXd W, Winv, Winv2;
    };
    std::vector<SocBlock> socs;
    Eigen::VectorXd lambda;  // scaled point W^-1 x = W z; zero on free coords

    bool update(const ConeLayout& lay, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
        lambda = Eigen::VectorXd::Zero(lay.total);
        w_lin.resize(lay.lin);
        for (int i = 0; i < lay.lin; ++i) {
            const double xi = x[lay.lin_start() + i];
            const double zi = z[lay.lin_start() + i];
            if (!(xi > 0.0) || !(zi > 0.0)) return false;
            w_lin[i] = std::sqrt(xi / zi);
            lambda[lay.lin_start() + i] = std::sqrt(xi * zi);
        }
        socs.assign(lay.socs.size(), {});
        int off = lay.soc_start();
        for (std::size_t k = 0; k < lay.socs.size(); ++k) {
            const int dim = lay.socs[k];
            const auto xb = x.segment(off, dim);
            const auto zb = z.segment(off, dim);
            const double xres = xb[0] * xb[0] - xb.tail(dim - 1).squaredNorm();
            const double zres = zb[0] * zb[0] - zb.tail(dim - 1).squaredNorm();
            if (!(xres > 0.0) || !(zres > 0.0) || !(xb[0] > 0.0) || !(zb[0] > 0.0)) return false;
            const double xnorm = std::sqrt(xres);
            const double znorm = std::sqrt(zres);
            const Eigen::VectorXd xu = xb / xnorm;
            const Eigen::VectorXd zu = zb / znorm;
            const double gamma = std::sqrt(0.5 * (1.0 + xu.dot(zu)));
            Eigen::VectorXd wbar(dim);
            wbar[0] = (0.5 / gamma) * (xu[0] + zu[0]);
            wbar.tail(dim - 1) = (0.5 / gamma) * (xu.tail(dim - 1) - zu.tail(dim - 1));
            const double eta = std::sqrt(xnorm / znorm);

            auto& blk = socs[k];
            const double a = wbar[0];
            const Eigen::VectorXd q = wbar.tail(dim - 1);
            Eigen::MatrixXd base(dim, dim);
            base(0, 0) = a;
            base.block(0, 1, 1, dim - 1) = q.transpose();
            base.block(1, 0, dim - 1, 1) = q;
            base.block(1, 1, dim - 1, dim - 1) =
                Eigen::MatrixXd::Identity(dim - 1, dim - 1) + q * q.transpose() / (1.0 + a);
            blk.W = eta * base;
            Eigen::MatrixXd base_inv = base;  // J * base * J
            base_inv.block(0, 1, 1, dim - 1) *= -1.0;
            base_inv.block(1, 0, dim - 1, 1) *= -1.0;
            blk.Winv = base_inv / eta;
            blk.Winv2 = blk.Winv * blk.Winv;
            lambda.segment(off, dim) = blk.Winv * xb;
            off += dim;
        }
        return lambda.allFinite();
    }

    // out = W v (cone part; free coordinates zeroed).
    Eigen::VectorXd apply_W(const ConeLayout& lay, const Eigen::VectorXd& v) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(lay.total);
        out.segment(lay.lin_start(), lay.lin) =
            w_lin.cwiseProduct(v.segment(lay.lin_start(), lay.lin));
        int off = lay.soc_start();
        for (std::size_t k = 0; k < lay.socs.size(); ++k) {
            const int dim = lay.socs[k];
            out.segment(off, dim).noalias() = socs[k].W * v.segment(off, dim);
            off += dim;
        }
        return out;
    }

    Eigen::VectorXd apply_Winv(const ConeLayout& lay, const Eigen::VectorXd& v) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(lay.total);
        out.segment(lay.lin_start(), lay.lin) =
            v.segment(lay.lin_start(), lay.lin).cwiseQuotient(w_lin);
        int off = lay.soc_start();
        for (std::size_t k = 0; k < lay.socs.size(); ++k) {
            const int dim = lay.socs[k];
            out.segment(off, dim).noalias() = socs[k].Winv * v.segment(off, dim);
            off += dim;
        }
        return out;
    }

    Eigen::VectorXd apply_Winv2(const ConeLayout& lay, const Eigen::VectorXd& v) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(lay.total);
        out.segment(lay.lin_start(), lay.lin) = v.segment(lay.lin_start(), lay.lin)
                                                    .cwiseQuotient(w_lin)
                                                    .cwiseQuotient(w_lin);
        int off = lay.soc_start();
        for (std::size_t k = 0; k < lay.socs.size(); ++k) {
            const int dim = lay.socs[k];
            out.segment(off, dim).noalias() = socs[k].Winv2 * v.segment(off, dim);
            off += dim;
        }
        return out;
    }
};

// Jordan product over the cone part (free coords stay zero).
Eigen::VectorXd jordan_product(const ConeLayout& lay, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(lay.total);
    out.segment(lay.lin_start(), lay.lin) =
        u.segment(lay.lin_start(), lay.lin).cwiseProduct(v.segment(lay.lin_start(), lay.lin));
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        const auto ub = u.segment(off, dim);
        const auto vb = v.segment(off, dim);
        out[off] = ub.dot(vb);
        out.segment(off + 1, dim - 1) =
            ub[0] * vb.tail(dim - 1) + vb[0] * ub.tail(dim - 1);
        off += dim;
    }
    return out;
}

// Solves L(lambda) g = r blockwise (the arrow operator of the scaled point).
Eigen::VectorXd jordan_divide(const ConeLayout& lay, const Eigen::VectorXd& lambda,
                              const Eigen::VectorXd& r) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(lay.total);
    out.segment(lay.lin_start(), lay.lin) =
        r.segment(lay.lin_start(), lay.lin)
            .cwiseQuotient(lambda.segment(lay.lin_start(), lay.lin));
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        const auto lb = lambda.segment(off, dim);
        const auto rb = r.segment(off, dim);
        const double det = lb[0] * lb[0] - lb.tail(dim - 1).squaredNorm();
        const double g0 = (lb[0] * rb[0] - lb.tail(dim - 1).dot(rb.tail(dim - 1))) / det;
        out[off] = g0;
        out.segment(off + 1, dim - 1) = (rb.tail(dim - 1) - g0 * lb.tail(dim - 1)) / lb[0];
        off += dim;
    }
    return out;
}

// Identity element of the cone part.
Eigen::VectorXd cone_identity(const ConeLayout& lay) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(lay.total);
    e.segment(lay.lin_start(), lay.lin).setOnes();
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        e[off] = 1.0;
        off += dim;
    }
    return e;
}

// Shifts the cone part of v onto the cone interior (free part untouched).
void bring_to_cone(const ConeLayout& lay, Eigen::VectorXd& v) {
    double alpha = -kStepFraction;
    for (int i = 0; i < lay.lin; ++i) {
        const double vi = v[lay.lin_start() + i];
        if (vi <= 0.0) alpha = std::max(alpha, -vi);
    }
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        const double res = v[off] - v.segment(off + 1, dim - 1).norm();
        if (res <= 0.0) alpha = std::max(alpha, -res);
        off += dim;
    }
    const double shift = 1.0 + alpha;
    v.segment(lay.lin_start(), lay.lin).array() += shift;
    off = lay.soc_start();
    for (int dim : lay.socs) {
        v[off] += shift;
        off += dim;
    }
}

// Largest step alpha with p + alpha * dp staying in the cone (cone part only;
// returns +inf when the whole ray stays inside).
double max_cone_step(const ConeLayout& lay, const Eigen::VectorXd& p, const Eigen::VectorXd& dp) {
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lay.lin; ++i) {
        const double d = dp[lay.lin_start() + i];
        if (d < 0.0) alpha = std::min(alpha, -p[lay.lin_start() + i] / d);
    }
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        const auto pb = p.segment(off, dim);
        const auto db = dp.segment(off, dim);
        const double a = db[0] * db[0] - db.tail(dim - 1).squaredNorm();
        const double bq = 2.0 * (pb[0] * db[0] - pb.tail(dim - 1).dot(db.tail(dim - 1)));
        const double cq = pb[0] * pb[0] - pb.tail(dim - 1).squaredNorm();
        if (db[0] < 0.0) alpha = std::min(alpha, -pb[0] / db[0]);
        const double disc = bq * bq - 4.0 * a * cq;
        if (std::abs(a) < 1e-300) {
            if (bq < 0.0) alpha = std::min(alpha, -cq / bq);
        } else if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double qt = -0.5 * (bq + (bq >= 0.0 ? sq : -sq));
            const double r1 = qt / a;
            const double r2 = (qt != 0.0) ? cq / qt : std::numeric_limits<double>::infinity();
            for (double r : {r1, r2}) {
                if (r > 0.0) alpha = std::min(alpha, r);
            }
        }
        off += dim;
    }
    return alpha;
}

double soc_dist(double t, const Eigen::VectorXd& v) {
    const double vn = v.norm();
    if (t >= vn) return 0.0;
    if (t <= -vn) return std::sqrt(t * t + vn * vn);
    return (vn - t) / std::sqrt(2.0);
}

// Distance of v to the cone (dual=true pins free coordinates to zero).
double cone_dist(const ConeLayout& lay, const Eigen::VectorXd& v, bool dual) {
    double sq = 0.0;
    if (dual) sq += v.head(lay.free).squaredNorm();
    for (int i = 0; i < lay.lin; ++i) {
        const double neg = std::min(v[lay.lin_start() + i], 0.0);
        sq += neg * neg;
    }
    int off = lay.soc_start();
    for (int dim : lay.socs) {
        const double d = soc_dist(v[off], v.segment(off + 1, dim - 1));
        sq += d * d;
        off += dim;
    }
    return std::sqrt(sq);
}

// Quasi-definite KKT system [D + delta*I, A'; A, -delta*I] with a fixed
// sparsity pattern across iterations: analyze once, refactorize per
// iteration, and polish solves with refinement against the unregularized
// system.
class KktSystem {
  public:
    KktSystem(const StandardConicForm& form, const ConeLayout& lay, double reg)
        : form_(form), lay_(lay), reg_(reg), n_(lay.total), m_(form.num_rows()) {
        for (int i = 0; i < lay_.free; ++i) diag_slot_.push_back(trips_.size()), trips_.emplace_back(i, i, reg_);
        for (int i = 0; i < lay_.lin; ++i) {
            diag_slot_.push_back(trips_.size());
            trips_.emplace_back(lay_.lin_start() + i, lay_.lin_start() + i, 1.0);
        }
        int off = lay_.soc_start();
        for (int dim : lay_.socs) {
            soc_slot_.push_back(trips_.size());
            for (int r = 0; r < dim; ++r)
                for (int col = 0; col < dim; ++col) trips_.emplace_back(off + r, off + col, 0.0);
            off += dim;
        }
        for (int col = 0; col < form_.A.outerSize(); ++col) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(form_.A, col); it; ++it) {
                trips_.emplace_back(n_ + static_cast<int>(it.row()), static_cast<int>(it.col()),
                                    it.value());
                trips_.emplace_back(static_cast<int>(it.col()), n_ + static_cast<int>(it.row()),
                                    it.value());
            }
        }
        for (int r = 0; r < m_; ++r) trips_.emplace_back(n_ + r, n_ + r, -reg_);
        K_.resize(n_ + m_, n_ + m_);
        K_.setFromTriplets(trips_.begin(), trips_.end());
        K_.makeCompressed();
        ldlt_.analyzePattern(K_);
    }

    bool factorize(const NTScaling& scaling) {
        scaling_ = &scaling;
        for (int i = 0; i < lay_.lin; ++i) {
            const double w = scaling.w_lin[i];
            trips_[diag_slot_[static_cast<std::size_t>(lay_.free + i)]] = {
                lay_.lin_start() + i, lay_.lin_start() + i, 1.0 / (w * w) + reg_};
        }
        int off = lay_.soc_start();
        for (std::size_t k = 0; k < lay_.socs.size(); ++k) {
            const int dim = lay_.socs[k];
            std::size_t slot = soc_slot_[k];
            for (int r = 0; r < dim; ++r) {
                for (int col = 0; col < dim; ++col) {
                    double v = scaling.socs[k].Winv2(r, col);
                    if (r == col) v += reg_;
                    trips_[slot++] = {off + r, off + col, v};
                }
            }
            off += dim;
        }
        K_.setFromTriplets(trips_.begin(), trips_.end());
        ldlt_.factorize(K_);
        return ldlt_.info() == Eigen::Success;
    }

    // Solves D u + A'v = r1, A u = r2 (unregularized targets) with two
    // rounds of iterative refinement against the factorization of the
    // regularized matrix.
    void solve(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, Eigen::VectorXd& u,
               Eigen::VectorXd& v) const {
        Eigen::VectorXd rhs(n_ + m_);
        rhs.head(n_) = r1;
        rhs.tail(m_) = r2;
        Eigen::VectorXd sol = ldlt_.solve(rhs);
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXd resid = rhs - apply_unregularized(sol);
            sol += ldlt_.solve(resid);
        }
        u = sol.head(n_);
        v = sol.tail(m_);
    }

  private:
    Eigen::VectorXd apply_unregularized(const Eigen::VectorXd& sol) const {
        Eigen::VectorXd out(n_ + m_);
        const Eigen::VectorXd u = sol.head(n_);
        const Eigen::VectorXd v = sol.tail(m_);
        out.head(n_) = scaling_->apply_Winv2(lay_, u);
        out.head(n_).noalias() += form_.A.transpose() * v;
        out.tail(m_).noalias() = form_.A * u;
        return out;
    }

    const StandardConicForm& form_;
    const ConeLayout& lay_;
    double reg_;
    int n_, m_;
    std::vector<Eigen::Triplet<double>> trips_;
    std::vector<std::size_t> diag_slot_;
    std::vector<std::size_t> soc_slot_;
    Eigen::SparseMatrix<double> K_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt_;
    const NTScaling* scaling_ = nullptr;
};

void validate_settings(const SolverSettings& s) {
    if (!(s.feas_tol > 0.0) || !(s.gap_tol > 0.0) || !(s.cert_tol > 0.0) ||
        !(s.static_reg > 0.0)) {
        throw std::invalid_argument("solver settings: tolerances must be positive");
    }
    if (s.max_iterations < 1) {
        throw std::invalid_argument("solver settings: max iterations must be >= 1");
    }
}

}  // namespace

Solution solve(const StandardConicForm& form, const SolverSettings& settings) {
    validate_settings(settings);

    ConeLayout lay;
    lay.free = form.free_dim;
    lay.lin = form.nonneg_dim;
    lay.socs = form.soc_dims;
    lay.total = form.num_cols();

    const int n = lay.total;
    const int m = form.num_rows();
    const double norm_b = form.b.norm();
    const double norm_c = form.c.norm();
    const double degree = lay.degree();

    Solution result;
    auto finish_unknown = [&](SolveStatus status, double pres, double dres, double gap,
                              int iters) {
        result.status = status;
        result.residuals = {pres, dres, gap, iters};
        return result;
    };

    KktSystem kkt(form, lay, settings.static_reg);

    // Initial point: least-squares primal/dual solves under identity scaling,
    // cone parts shifted into the interior.
    NTScaling scaling;
    scaling.w_lin = Eigen::VectorXd::Ones(lay.lin);
    for (int dim : lay.socs) {
        NTScaling::SocBlock blk;
        blk.W = Eigen::MatrixXd::Identity(dim, dim);
        blk.Winv = blk.W;
        blk.Winv2 = blk.W;
        scaling.socs.push_back(blk);
    }
    if (!kkt.factorize(scaling)) {
        return finish_unknown(SolveStatus::NumericalFailure, 0, 0, 0, 0);
    }

    Eigen::VectorXd x(n), y(m), z(n);
    {
        // Least-norm x with A x = b, then shift its cone part inside.
        Eigen::VectorXd u, v;
        kkt.solve(Eigen::VectorXd::Zero(n), form.b, u, v);
        x = u;
        bring_to_cone(lay, x);

        // Least-norm z = c - A'y, shifted inside; free slots stay zero.
        Eigen::VectorXd u2, v2;
        kkt.solve(form.c, Eigen::VectorXd::Zero(m), u2, v2);
        y = v2;
        z = u2;
        bring_to_cone(lay, z);
        z.head(lay.free).setZero();
    }
    double tau = 1.0;
    double kappa = 1.0;

    if (settings.trace) {
        *settings.trace << "iter        mu       pres       dres     relgap      step\n";
    }

    int stall = 0;
    double pres = 0.0, dres = 0.0, relgap = 0.0;
    for (int iter = 0; iter <= settings.max_iterations; ++iter) {
        const Eigen::VectorXd rho_p = form.A * x - form.b * tau;
        const Eigen::VectorXd rho_d = form.c * tau - form.A.transpose() * y - z;
        const double cx = form.c.dot(x);
        const double by = form.b.dot(y);
        const double rho_g = kappa + cx - by;
        const double mu = (x.dot(z) + tau * kappa) / (degree + 1.0);

        const double pobj = cx / tau;
        const double dobj = by / tau;
        pres = rho_p.norm() / (tau * (1.0 + norm_b));
        dres = rho_d.norm() / (tau * (1.0 + norm_c));
        relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (!std::isfinite(mu) || !std::isfinite(pres) || !std::isfinite(dres)) {
            return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter);
        }

        if (pres <= settings.feas_tol && dres <= settings.feas_tol &&
            relgap <= settings.gap_tol) {
            result.status = SolveStatus::Optimal;
            result.x = x / tau;
            result.y = y / tau;
            result.z = z / tau;
            result.objective = form.objective_value(result.x);
            result.residuals = {pres, dres, relgap, iter};
            return result;
        }

        if (tau < kappa) {
            if (by > 0.0) {
                const double pinf_res = cone_dist(lay, -(form.A.transpose() * y), true) / by;
                if (pinf_res <= settings.cert_tol &&
                    verify_primal_infeasibility(form, y, settings.cert_tol)) {
                    result.status = SolveStatus::PrimalInfeasible;
                    result.certificate = y / y.norm();
                    result.y = result.certificate;
                    result.residuals = {pres, dres, relgap, iter};
                    return result;
                }
            }
            if (cx < 0.0) {
                const double dinf_res =
                    ((form.A * x).norm() + cone_dist(lay, x, false)) / (-cx);
                if (dinf_res <= settings.cert_tol &&
                    verify_dual_infeasibility(form, x, settings.cert_tol)) {
                    result.status = SolveStatus::DualInfeasible;
                    result.certificate = x / (-cx);
                    result.x = result.certificate;
                    result.residuals = {pres, dres, relgap, iter};
                    return result;
                }
            }
        }

        if (iter == settings.max_iterations) break;

        if (!scaling.update(lay, x, z)) {
            return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter);
        }
        if (!kkt.factorize(scaling)) {
            return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter);
        }

        Eigen::VectorXd dx_c, vy_c;
        kkt.solve(form.c, -form.b, dx_c, vy_c);
        const Eigen::VectorXd dy_c = -vy_c;
        const double denom = kappa / tau + form.c.dot(dx_c) - form.b.dot(dy_c);
        if (!(denom > 0.0) || !std::isfinite(denom)) {
            return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter);
        }

        auto direction = [&](const Eigen::VectorXd& rhs_x, const Eigen::VectorXd& rhs_y,
                             double rhs3, const Eigen::VectorXd& winv_ds, double rhs_kappa,
                             Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& dz,
                             double& dtau, double& dkappa) {
            Eigen::VectorXd u, v;
            kkt.solve(rhs_x, rhs_y, u, v);
            const Eigen::VectorXd dy2 = -v;
            dtau = (rhs3 - form.b.dot(dy2) + form.c.dot(u)) / denom;
            dx = u - dtau * dx_c;
            dy = dy2 - dtau * dy_c;
            dz = winv_ds - scaling.apply_Winv2(lay, dx);
            dkappa = (rhs_kappa - kappa * dtau) / tau;
        };

        // Affine (predictor) direction.
        Eigen::VectorXd dx_a, dy_a, dz_a;
        double dtau_a, dkappa_a;
        {
            const Eigen::VectorXd winv_ds = -z;  // W^-1 (-lambda)
            const Eigen::VectorXd rhs_x = -rho_d + winv_ds;
            const Eigen::VectorXd rhs_y = -rho_p;
            const double rhs_kappa = -tau * kappa;
            const double rhs3 = rho_g + rhs_kappa / tau;
            direction(rhs_x, rhs_y, rhs3, winv_ds, rhs_kappa, dx_a, dy_a, dz_a, dtau_a,
                      dkappa_a);
        }

        double alpha_aff = std::min({max_cone_step(lay, x, dx_a), max_cone_step(lay, z, dz_a),
                                     dtau_a < 0.0 ? -tau / dtau_a
                                                  : std::numeric_limits<double>::infinity(),
                                     dkappa_a < 0.0 ? -kappa / dkappa_a
                                                    : std::numeric_limits<double>::infinity(),
                                     1.0});
        const double sigma =
            std::clamp(std::pow(1.0 - alpha_aff, 3.0), kSigmaMin, kSigmaMax);

        // Combined (centering + corrector) direction.
        Eigen::VectorXd dx, dy, dz;
        double dtau, dkappa;
        {
            const Eigen::VectorXd corr = jordan_product(lay, scaling.apply_Winv(lay, dx_a),
                                                        scaling.apply_W(lay, dz_a));
            Eigen::VectorXd rhs_s =
                -jordan_product(lay, scaling.lambda, scaling.lambda) - corr +
                sigma * mu * cone_identity(lay);
            const Eigen::VectorXd ds = jordan_divide(lay, scaling.lambda, rhs_s);
            const Eigen::VectorXd winv_ds = scaling.apply_Winv(lay, ds);
            const Eigen::VectorXd rhs_x = -(1.0 - sigma) * rho_d + winv_ds;
            const Eigen::VectorXd rhs_y = -(1.0 - sigma) * rho_p;
            const double rhs_kappa = -tau * kappa - dtau_a * dkappa_a + sigma * mu;
            const double rhs3 = (1.0 - sigma) * rho_g + rhs_kappa / tau;
            direction(rhs_x, rhs_y, rhs3, winv_ds, rhs_kappa, dx, dy, dz, dtau, dkappa);
        }

        double alpha = kStepFraction *
                       std::min({max_cone_step(lay, x, dx), max_cone_step(lay, z, dz),
                                 dtau < 0.0 ? -tau / dtau
                                            : std::numeric_limits<double>::infinity(),
                                 dkappa < 0.0 ? -kappa / dkappa
                                              : std::numeric_limits<double>::infinity()});
        alpha = std::min(alpha, 1.0);

        if (settings.trace) {
            settings.trace->precision(6);
            *settings.trace << iter << "  " << mu << "  " << pres << "  " << dres << "  "
                            << relgap << "  " << alpha << "\n";
        }

        if (!(alpha > 1e-10)) {
            if (++stall >= 2) {
                return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter);
            }
        } else {
            stall = 0;
        }

        x += alpha * dx;
        y += alpha * dy;
        z += alpha * dz;
        z.head(lay.free).setZero();
        tau += alpha * dtau;
        kappa += alpha * dkappa;
        if (!(tau > 0.0) || !(kappa > 0.0) || !x.allFinite() || !z.allFinite()) {
            return finish_unknown(SolveStatus::NumericalFailure, pres, dres, relgap, iter + 1);
        }
    }

    result.x = x / tau;
    result.y = y / tau;
    result.z = z / tau;
    result.objective = form.objective_value(result.x);
    return finish_unknown(SolveStatus::IterationLimit, pres, dres, relgap,
                          settings.max_iterations);
}

ProgramSolution solve_program(const ConicProgram& program, const SolverSettings& settings) {
    const StandardConicForm form = to_standard_form(program);
    const Solution sol = solve(form, settings);
    ProgramSolution out;
    out.status = sol.status;
    out.residuals = sol.residuals;
    if (sol.status == SolveStatus::Optimal) {
        out.values = form.recover_variables(sol.x);
        out.objective = sol.objective;
    }
    return out;
}

}  // namespace fairsoc
