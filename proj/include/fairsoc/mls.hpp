#pragma once

#include <vector>

#include "fairsoc/conic_program.hpp"
#include "fairsoc/network.hpp"
#include "fairsoc/solver.hpp"

namespace fairsoc {

/// A built load-shedding problem together with the variable handles needed
/// to read the solution back.
struct MlsProgram {
    ConicProgram program;
    std::vector<VariableId> shed;      // one per load, in case load order
    std::vector<VariableId> dispatch;  // one per generator
    std::vector<VariableId> angle;     // one per bus
    std::vector<VariableId> flow;      // one per in-service line
};

/// DC minimum-load-shedding problem: angles are free with one reference
/// fixed per connected component, flows obey p = b * (theta_i - theta_j)
/// within thermal limits, nodal balance holds at every bus, sheds live in
/// [0, d_max], and the objective minimizes total shed.
MlsProgram build_mls(const NetworkCase& net);

/// build_mls plus the fairness constraint over the shed vector (population
/// size = number of loads).
MlsProgram build_fair_mls(const NetworkCase& net, double eps);

/// Minimum p-norm-of-shed variant over the same feasible set. Supported
/// p: 1 (plain sum), 2, 4, 8 (tower-of-squares cones), and infinity
/// (min-max epigraph).
MlsProgram build_pnorm_mls(const NetworkCase& net, double p);

struct MlsSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    double total_shed = 0.0;
    std::vector<double> shed;
    std::vector<double> dispatch;
    std::vector<double> angle;
    double jain = 1.0;
    ResidualReport residuals;
};

/// Solves a built MLS program and maps the solution back onto the network
/// quantities. Sheds within solver tolerance below zero are clamped to zero
/// for reporting.
MlsSolution solve_mls(const MlsProgram& mls, const SolverSettings& settings = {});

/// Uniformly samples distinct k-line damage scenarios, keeping those whose
/// base minimum load shed exceeds the configured threshold. Deterministic
/// for a fixed seed; reports exhaustion when the attempt budget runs out
/// before reaching the target count.
ScenarioSet generate_scenarios(const NetworkCase& net, const ScenarioGenConfig& config,
                               const SolverSettings& settings = {});

}  // namespace fairsoc
