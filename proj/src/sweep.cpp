#include "fairsoc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fairsoc {

const char* to_string(RowStatus status) {
    switch (status) {
        case RowStatus::Optimal: return "Optimal";
        case RowStatus::Infeasible: return "Infeasible";
        case RowStatus::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

RowStatus classify(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return RowStatus::Optimal;
        case SolveStatus::PrimalInfeasible: return RowStatus::Infeasible;
        default: return RowStatus::Unknown;
    }
}

SweepRow run_cell(const NetworkCase& damaged, SweepKind kind, int scenario_id, double param,
                  const SolverSettings& solver) {
    const auto start = std::chrono::steady_clock::now();
    const MlsProgram prog = kind == SweepKind::Eps ? build_fair_mls(damaged, param)
                                                   : build_pnorm_mls(damaged, param);
    const MlsSolution sol = solve_mls(prog, solver);
    SweepRow row;
    row.scenario_id = scenario_id;
    row.kind = kind;
    row.param = param;
    row.status = classify(sol.status);
    if (row.status == RowStatus::Optimal) {
        row.total_shed = sol.total_shed;
        row.jain = sol.jain;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return row;
}

SweepReport run_sweep(const NetworkCase& net, const ScenarioSet& scenarios, SweepKind kind,
                      const std::vector<double>& grid, double baseline_param,
                      const SweepOptions& options) {
    if (grid.empty()) {
        throw std::invalid_argument("sweep: empty parameter grid");
    }
    if (std::find(grid.begin(), grid.end(), baseline_param) == grid.end()) {
        throw std::invalid_argument(
            "sweep: grid must contain the baseline parameter (0 for eps, 1 for p)");
    }

    SweepReport report;
    report.kind = kind;
    report.case_fingerprint = net.fingerprint();
    report.seed = scenarios.seed;
    report.grid = grid;
    report.scenario_count = static_cast<int>(scenarios.scenarios.size());

    const int nparams = static_cast<int>(grid.size());
    const int cells = report.scenario_count * nparams;
    report.rows.resize(static_cast<std::size_t>(cells));

    // The damaged cases are shared read-only across all cells of a scenario.
    std::vector<NetworkCase> damaged;
    damaged.reserve(scenarios.scenarios.size());
    for (const auto& sc : scenarios.scenarios) {
        damaged.push_back(apply_damage(net, sc));
    }

    auto work = [&](int cell) {
        const int s = cell / nparams;
        const int g = cell % nparams;
        report.rows[static_cast<std::size_t>(cell)] =
            run_cell(damaged[static_cast<std::size_t>(s)], kind, s, grid[g], options.solver);
    };

    if (options.jobs == 1) {
        // Serial reference path; kept separate so tests can compare it
        // against the parallel execution.
        for (int cell = 0; cell < cells; ++cell) work(cell);
    } else {
#ifdef _OPENMP
        const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int cell = 0; cell < cells; ++cell) work(cell);
#else
        for (int cell = 0; cell < cells; ++cell) work(cell);
#endif
    }

    // Efficiency loss vs the scenario's own baseline cell.
    const int base_idx = static_cast<int>(
        std::find(grid.begin(), grid.end(), baseline_param) - grid.begin());
    for (int s = 0; s < report.scenario_count; ++s) {
        const SweepRow& base = report.rows[static_cast<std::size_t>(s * nparams + base_idx)];
        if (base.status != RowStatus::Optimal || !base.total_shed ||
            !(*base.total_shed > 0.0)) {
            continue;
        }
        const double z0 = *base.total_shed;
        for (int g = 0; g < nparams; ++g) {
            SweepRow& row = report.rows[static_cast<std::size_t>(s * nparams + g)];
            if (row.status == RowStatus::Optimal && row.total_shed && *row.total_shed > 0.0) {
                row.efficiency_loss_pct = (*row.total_shed - z0) / *row.total_shed * 100.0;
            }
        }
    }
    return report;
}

}  // namespace

SweepReport eps_sweep(const NetworkCase& net, const ScenarioSet& scenarios,
                      const std::vector<double>& eps_grid, const SweepOptions& options) {
    for (double e : eps_grid) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw std::invalid_argument("eps grid values must lie in [0, 1]");
        }
    }
    return run_sweep(net, scenarios, SweepKind::Eps, eps_grid, 0.0, options);
}

SweepReport pnorm_sweep(const NetworkCase& net, const ScenarioSet& scenarios,
                        const std::vector<double>& p_set, const SweepOptions& options) {
    return run_sweep(net, scenarios, SweepKind::PNorm, p_set, 1.0, options);
}

EpsMaxResult eps_max(const NetworkCase& net, const DamageScenario& scenario, double tol,
                     const SolverSettings& settings) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("eps_max: tolerance must be positive");
    }
    EpsMaxResult result;
    const NetworkCase damaged = apply_damage(net, scenario);

    auto status_at = [&](double eps) {
        ++result.solves;
        return classify(solve_mls(build_fair_mls(damaged, eps), settings).status);
    };

    const RowStatus base = status_at(0.0);
    if (base != RowStatus::Optimal) {
        result.message = base == RowStatus::Infeasible ? "base problem infeasible"
                                                       : "base problem status unknown";
        return result;
    }
    const RowStatus top = status_at(1.0);
    if (top == RowStatus::Optimal) {
        result.value = 1.0;
        result.ok = true;
        return result;
    }
    if (top == RowStatus::Unknown) {
        result.message = "uncertified solver status at eps=1";
        return result;
    }

    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const RowStatus st = status_at(mid);
        if (st == RowStatus::Optimal) {
            lo = mid;
        } else if (st == RowStatus::Infeasible) {
            hi = mid;
        } else {
            result.message = "uncertified solver status at eps=" + std::to_string(mid);
            return result;
        }
    }
    result.value = lo;
    result.ok = true;
    return result;
}

MonotonicityAudit monotonicity_audit(const SweepReport& report) {
    MonotonicityAudit audit;
    const int nparams = static_cast<int>(report.grid.size());
    for (int s = 0; s < report.scenario_count; ++s) {
        bool shed_bad = false, jain_bad = false;
        for (int i = 0; i < nparams; ++i) {
            const SweepRow& a = report.rows[static_cast<std::size_t>(s * nparams + i)];
            if (a.status == RowStatus::Unknown) {
                ++audit.unknown_rows;
                continue;
            }
            for (int j = i + 1; j < nparams; ++j) {
                const SweepRow& b = report.rows[static_cast<std::size_t>(s * nparams + j)];
                if (a.status == RowStatus::Infeasible && b.status == RowStatus::Optimal) {
                    ++audit.order_violations;
                }
                if (a.status != RowStatus::Optimal || b.status != RowStatus::Optimal) continue;
                if (report.kind == SweepKind::Eps && a.total_shed && b.total_shed &&
                    *b.total_shed < *a.total_shed - 1e-6 * (1.0 + std::abs(*a.total_shed))) {
                    ++audit.shed_pair_violations;
                    shed_bad = true;
                }
                if (a.jain && b.jain && *b.jain < *a.jain - 1e-6) {
                    ++audit.jain_pair_violations;
                    jain_bad = true;
                }
            }
        }
        if (shed_bad) ++audit.scenarios_with_shed_violation;
        if (jain_bad) ++audit.scenarios_with_jain_violation;
    }
    return audit;
}

InfeasibilityTable infeasibility_table(const SweepReport& report) {
    InfeasibilityTable table;
    table.params = report.grid;
    const int nparams = static_cast<int>(report.grid.size());
    table.optimal.assign(static_cast<std::size_t>(nparams), 0);
    table.infeasible.assign(static_cast<std::size_t>(nparams), 0);
    table.unknown.assign(static_cast<std::size_t>(nparams), 0);
    for (int s = 0; s < report.scenario_count; ++s) {
        for (int g = 0; g < nparams; ++g) {
            const SweepRow& row = report.rows[static_cast<std::size_t>(s * nparams + g)];
            switch (row.status) {
                case RowStatus::Optimal: ++table.optimal[static_cast<std::size_t>(g)]; break;
                case RowStatus::Infeasible:
                    ++table.infeasible[static_cast<std::size_t>(g)];
                    break;
                case RowStatus::Unknown: ++table.unknown[static_cast<std::size_t>(g)]; break;
            }
        }
    }
    return table;
}

}  // namespace fairsoc
