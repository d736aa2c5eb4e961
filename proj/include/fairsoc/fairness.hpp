#pragma once

#include <optional>
#include <span>

#include "fairsoc/conic_program.hpp"

namespace fairsoc {

/// Scaling factor (1 - eps) + eps * sqrt(n): the convex combination of 1 and
/// sqrt(n) that interpolates between the two ends of the norm-equivalence
/// inequality ||u||_2 <= ||u||_1 <= sqrt(n) ||u||_2 on nonnegative vectors.
/// eps = 0 demands nothing; eps = 1 forces all components equal.
double fairness_scale(double eps, int n);

/// Jain index (sum u)^2 / (n * sum u^2), in [1/n, 1]. The all-zero vector is
/// defined as 1 (perfectly equal); utility_stats flags that case.
double jain_index(std::span<const double> u);

/// Jain-index level equivalent to exactly eps-fair: fairness_scale^2 / n.
/// Strictly increasing, maps [0,1] onto [1/n, 1].
double jain_level_for_eps(double eps, int n);

/// Inverse of jain_level_for_eps: (sqrt(n*J) - 1) / (sqrt(n) - 1). n >= 2.
double eps_for_jain_level(double jain, int n);

/// Upper bound on the squared coefficient of variation implied by eps-
/// fairness: n/(n-1) * (n / fairness_scale^2 - 1). Strictly decreasing from
/// n at eps = 0 to 0 at eps = 1. n >= 2.
double cv_squared_bound(double eps, int n);

struct FairnessStats {
    double mean = 0.0;
    double variance = 0.0;             // sample variance, divisor n-1
    std::optional<double> cv;          // sigma / mu; empty for the zero vector
    double jain = 1.0;
    bool degenerate = false;           // all-zero input
};

/// Sample mean/variance, coefficient of variation, and Jain index. n >= 2.
FairnessStats utility_stats(std::span<const double> u);

/// Membership test for "at least eps-fair":
/// fairness_scale(eps,n) * ||u||_2 <= ||u||_1 + tol.
bool is_at_least_eps_fair(std::span<const double> u, double eps, double tol = 1e-8);

/// Parametric utility 1/(1-alpha) * sum u_i^(1-alpha) (log-sum at alpha = 1).
/// Evaluation-only comparison baseline; alpha >= 1 requires strictly
/// positive components.
double alpha_fair_utility(std::span<const double> u, double alpha);

/// Negative p-norm utility, p >= 1 or infinity.
double p_norm_utility(std::span<const double> u, double p);

/// Adds the fairness constraint on a list of utility expressions:
/// fairness_scale(eps,n) * ||u||_2 <= sum u_i, encoded through one epigraph
/// variable t = (sum u_i) / fairness_scale plus the cone ||u||_2 <= t. The
/// caller must keep each utility expression nonnegative; bare-variable
/// expressions are validated against their declared lower bound. At eps = 1
/// the constraint is installed in its exact equality form u_1 = ... = u_n
/// instead of the (then boundary-only) cone. Returns a constraint id.
int add_fairness_constraint(ConicProgram& program, std::span<const LinearExpr> utilities,
                            double eps);

}  // namespace fairsoc
