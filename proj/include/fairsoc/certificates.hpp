#pragma once

#include <Eigen/Dense>

#include "fairsoc/standard_form.hpp"

namespace fairsoc {

/// Standalone Farkas check for "A x = b, x in K has no solution": after
/// normalizing y to unit length, requires b'y > 0 and -A'y in the dual cone
/// (zero on free coordinates, nonnegative on the linear block, Lorentz on
/// SOC blocks) within tol * b'y. Shares no code with the solver core so it
/// can vouch for the solver's infeasibility classifications.
bool verify_primal_infeasibility(const StandardConicForm& form, const Eigen::VectorXd& y,
                                 double tol);

/// Standalone improving-ray check: after normalizing the ray to unit length,
/// requires c'ray < 0, ||A ray|| <= tol * (-c'ray), and ray in K within the
/// same tolerance.
bool verify_dual_infeasibility(const StandardConicForm& form, const Eigen::VectorXd& ray,
                               double tol);

}  // namespace fairsoc
