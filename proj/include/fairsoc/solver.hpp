#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "fairsoc/standard_form.hpp"

namespace fairsoc {

struct SolverSettings {
    double feas_tol = 1e-8;   // primal/dual feasibility tolerance
    double gap_tol = 1e-8;    // relative duality-gap tolerance
    double cert_tol = 1e-8;   // infeasibility-certificate tolerance
    int max_iterations = 200;
    double static_reg = 1e-10;  // static KKT regularization magnitude
    std::ostream* trace = nullptr;  // per-iteration log when set
};

enum class SolveStatus {
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
    IterationLimit,
    NumericalFailure,
};

const char* to_string(SolveStatus status);

struct ResidualReport {
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

/// Outcome of one solve. Optimal solutions report the de-homogenized primal
/// and dual point together with the original-sense objective value. An
/// infeasibility status carries the certificate vector: the Farkas dual
/// (normalized to unit length) for PrimalInfeasible, an improving ray scaled
/// to c'ray = -1 for DualInfeasible. IterationLimit and NumericalFailure mean
/// "unknown" and must never be interpreted as infeasibility.
struct Solution {
    SolveStatus status = SolveStatus::NumericalFailure;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd z;
    double objective = 0.0;
    ResidualReport residuals;
    Eigen::VectorXd certificate;
};

/// Solves a standard-form LP+SOC problem with a homogeneous self-dual
/// path-following interior-point method (Nesterov-Todd scaling, Mehrotra
/// predictor-corrector). Free variables enter the quasi-definite KKT system
/// directly; the system is refactorized every iteration with static
/// regularization and iterative refinement. Fully deterministic: the same
/// form and settings produce bit-identical iterates.
Solution solve(const StandardConicForm& form, const SolverSettings& settings = {});

/// Lower-and-solve convenience for builder programs; values are mapped back
/// to the original variables through the standard-form back-map.
struct ProgramSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> values;
    double objective = 0.0;
    ResidualReport residuals;
};

ProgramSolution solve_program(const ConicProgram& program, const SolverSettings& settings = {});

}  // namespace fairsoc
