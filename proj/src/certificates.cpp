#include "fairsoc/certificates.hpp"

#include <algorithm>
#include <cmath>

namespace fairsoc {

namespace {

// Squared Euclidean distance from (t, v) to the Lorentz cone ||v|| <= t.
double soc_distance_sq(double t, const Eigen::VectorXd& v) {
    const double vn = v.norm();
    if (t >= vn) return 0.0;
    if (t <= -vn) return t * t + vn * vn;
    const double gap = (vn - t) / std::sqrt(2.0);
    return gap * gap;
}

// Distance to the cone (primal K) or its dual (free part pinned to zero).
double cone_distance(const StandardConicForm& form, const Eigen::VectorXd& v, bool dual) {
    double dist_sq = 0.0;
    if (dual) {
        dist_sq += v.head(form.free_dim).squaredNorm();
    }
    for (int i = form.free_dim; i < form.free_dim + form.nonneg_dim; ++i) {
        const double neg = std::min(v[i], 0.0);
        dist_sq += neg * neg;
    }
    int offset = form.free_dim + form.nonneg_dim;
    for (int dim : form.soc_dims) {
        dist_sq += soc_distance_sq(v[offset], v.segment(offset + 1, dim - 1));
        offset += dim;
    }
    return std::sqrt(dist_sq);
}

}  // namespace

bool verify_primal_infeasibility(const StandardConicForm& form, const Eigen::VectorXd& y,
                                 double tol) {
    if (y.size() != form.num_rows()) return false;
    const double norm = y.norm();
    if (!(norm > 0.0) || !y.allFinite()) return false;
    const Eigen::VectorXd yn = y / norm;
    const double by = form.b.dot(yn);
    if (!(by > 0.0)) return false;
    const Eigen::VectorXd v = -(form.A.transpose() * yn);
    return cone_distance(form, v, /*dual=*/true) <= tol * by;
}

bool verify_dual_infeasibility(const StandardConicForm& form, const Eigen::VectorXd& ray,
                               double tol) {
    if (ray.size() != form.num_cols()) return false;
    const double norm = ray.norm();
    if (!(norm > 0.0) || !ray.allFinite()) return false;
    const Eigen::VectorXd xn = ray / norm;
    const double improvement = -form.c.dot(xn);
    if (!(improvement > 0.0)) return false;
    if ((form.A * xn).norm() > tol * improvement) return false;
    return cone_distance(form, xn, /*dual=*/false) <= tol * improvement;
}

}  // namespace fairsoc
