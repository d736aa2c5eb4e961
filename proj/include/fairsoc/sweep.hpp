#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairsoc/mls.hpp"
#include "fairsoc/network.hpp"

namespace fairsoc {

enum class RowStatus { Optimal, Infeasible, Unknown };
const char* to_string(RowStatus status);

enum class SweepKind { Eps, PNorm };

struct SweepRow {
    int scenario_id = 0;
    SweepKind kind = SweepKind::Eps;
    double param = 0.0;
    RowStatus status = RowStatus::Unknown;
    std::optional<double> total_shed;
    std::optional<double> jain;
    std::optional<double> efficiency_loss_pct;
    double wall_ms = 0.0;
};

/// Full (scenario x parameter) grid of results in scenario-major order; every
/// cell is present with an explicit status. The efficiency loss of a row is
/// relative to the scenario's own no-fairness baseline (the eps = 0 or p = 1
/// cell) and only set when both cells are Optimal with positive baseline.
struct SweepReport {
    SweepKind kind = SweepKind::Eps;
    std::string case_fingerprint;
    std::uint64_t seed = 0;
    std::vector<double> grid;
    int scenario_count = 0;
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    int jobs = 0;  // 0 = all cores; 1 = serial reference path
    SolverSettings solver;
};

/// Solves the fairness-constrained problem for every (scenario, eps) cell.
/// The grid must contain 0 (the efficiency baseline). Solver failures are
/// recorded as Unknown, never as Infeasible.
SweepReport eps_sweep(const NetworkCase& net, const ScenarioSet& scenarios,
                      const std::vector<double>& eps_grid, const SweepOptions& options = {});

/// Same pipeline for the p-norm comparison; the set must contain 1.
SweepReport pnorm_sweep(const NetworkCase& net, const ScenarioSet& scenarios,
                        const std::vector<double>& p_set, const SweepOptions& options = {});

struct EpsMaxResult {
    double value = 0.0;
    int solves = 0;
    bool ok = false;
    std::string message;
};

/// Bisection for the largest eps keeping the fair problem feasible,
/// maintaining (lo feasible, hi infeasible) until hi - lo <= tol. Requires a
/// feasible base problem; an uncertified solver status aborts the search.
EpsMaxResult eps_max(const NetworkCase& net, const DamageScenario& scenario, double tol = 1e-3,
                     const SolverSettings& settings = {});

struct MonotonicityAudit {
    int shed_pair_violations = 0;       // z decreasing as eps grows (Optimal pairs)
    int scenarios_with_shed_violation = 0;
    int jain_pair_violations = 0;       // achieved Jain index decreasing as param grows
    int scenarios_with_jain_violation = 0;
    int order_violations = 0;           // Optimal at a larger param than an Infeasible
    int unknown_rows = 0;
};

/// Per-scenario monotonicity checks over the report grid. Shed monotonicity
/// uses tolerance 1e-6 * (1 + |z|); rows with Unknown status are skipped and
/// tallied separately. Achieved-Jain monotonicity is reported for both
/// parameter kinds but is only a theorem-backed expectation for the shed
/// objective, not the index itself.
MonotonicityAudit monotonicity_audit(const SweepReport& report);

struct InfeasibilityTable {
    std::vector<double> params;
    std::vector<int> optimal;
    std::vector<int> infeasible;
    std::vector<int> unknown;
};

/// Per-parameter status counts in grid order; Unknown stays a separate
/// column and is never merged into the infeasible count.
InfeasibilityTable infeasibility_table(const SweepReport& report);

/// Deterministic CSV with a fixed header and 9-significant-digit values.
/// wall_ms is written as 0 unless include_timing is set, so default exports
/// are byte-identical across runs. export -> import -> export round-trips
/// bit-exactly.
void export_csv(const SweepReport& report, std::ostream& os, bool include_timing = false);
void export_csv_file(const SweepReport& report, const std::string& path,
                     bool include_timing = false);
SweepReport import_csv(std::istream& is);
SweepReport import_csv_file(const std::string& path);

/// Shared numeric formatting for reports: shortest %.9g form.
std::string format_sig9(double v);

}  // namespace fairsoc
