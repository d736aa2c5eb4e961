#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairsoc/fairness.hpp"
#include "fairsoc/matpower.hpp"
#include "fairsoc/mls.hpp"
#include "fairsoc/sweep.hpp"

namespace {

using namespace fairsoc;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitExhausted = 4;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field == "inf" || field == "Inf" || field == "INF") {
            out.push_back(kInf);
        } else {
            out.push_back(std::stod(field));
        }
    }
    if (out.empty()) {
        throw std::runtime_error("empty value list: '" + text + "'");
    }
    return out;
}

std::vector<double> default_eps_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    return grid;
}

ScenarioSet read_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open scenario file: " + path);
    }
    return read_scenarios(in);
}

std::vector<double> quartiles(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        const double pos = q * (static_cast<double>(values.size()) - 1.0);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

void print_sweep_summary(const SweepReport& report, std::ostream& os) {
    const InfeasibilityTable table = infeasibility_table(report);
    const char* pname = report.kind == SweepKind::Eps ? "eps" : "p";
    os << "status counts per " << pname << ":\n";
    os << "  " << pname << "      optimal  infeasible  unknown\n";
    for (std::size_t i = 0; i < table.params.size(); ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "  %-8s %7d  %10d  %7d\n",
                      format_sig9(table.params[i]).c_str(), table.optimal[i],
                      table.infeasible[i], table.unknown[i]);
        os << buf;
    }
    for (std::size_t g = 0; g < report.grid.size(); ++g) {
        std::vector<double> losses;
        for (const auto& row : report.rows) {
            if (row.param == report.grid[g] && row.efficiency_loss_pct) {
                losses.push_back(*row.efficiency_loss_pct);
            }
        }
        if (losses.empty()) continue;
        const auto q = quartiles(losses);
        os << "efficiency loss % at " << pname << "=" << format_sig9(report.grid[g])
           << ": min " << format_sig9(q[0]) << "  q1 " << format_sig9(q[1]) << "  median "
           << format_sig9(q[2]) << "  q3 " << format_sig9(q[3]) << "  max "
           << format_sig9(q[4]) << "\n";
    }
    const MonotonicityAudit audit = monotonicity_audit(report);
    os << "monotonicity audit: shed-pair violations " << audit.shed_pair_violations
       << ", jain-violating scenarios " << audit.scenarios_with_jain_violation
       << ", order violations " << audit.order_violations << ", unknown rows "
       << audit.unknown_rows << "\n";
}

struct CommonSolverFlags {
    double tol_feas = 1e-8;
    double tol_gap = 1e-8;
    bool verbose = false;

    SolverSettings settings() const {
        SolverSettings s;
        s.feas_tol = tol_feas;
        s.gap_tol = tol_gap;
        if (verbose) s.trace = &std::cerr;
        return s;
    }
};

void add_solver_flags(CLI::App* cmd, CommonSolverFlags& flags) {
    cmd->add_option("--tol-feas", flags.tol_feas, "feasibility tolerance")
        ->envname("FAIRSOC_TOL_FEAS");
    cmd->add_option("--tol-gap", flags.tol_gap, "duality-gap tolerance")
        ->envname("FAIRSOC_TOL_GAP");
    cmd->add_flag("--verbose", flags.verbose, "per-iteration solver trace on stderr")
        ->envname("FAIRSOC_VERBOSE");
}

int run_solve(const std::string& case_path, const std::string& scenario_spec,
              const std::string& scenario_file, int scenario_index,
              std::optional<double> eps, const std::string& p_spec,
              const CommonSolverFlags& flags) {
    const NetworkCase base = load_case_file(case_path);

    DamageScenario scenario;
    if (!scenario_spec.empty()) {
        for (double v : parse_double_list(scenario_spec)) {
            scenario.removed_lines.push_back(static_cast<int>(v));
        }
    } else if (!scenario_file.empty()) {
        const ScenarioSet set = read_scenario_file(scenario_file);
        if (scenario_index < 0 || scenario_index >= static_cast<int>(set.scenarios.size())) {
            throw std::runtime_error("scenario index out of range");
        }
        scenario = set.scenarios[static_cast<std::size_t>(scenario_index)];
    }
    const NetworkCase net = apply_damage(base, scenario);

    MlsProgram prog;
    if (eps) {
        prog = build_fair_mls(net, *eps);
    } else if (!p_spec.empty()) {
        prog = build_pnorm_mls(net, parse_double_list(p_spec).at(0));
    } else {
        prog = build_mls(net);
    }
    const MlsSolution sol = solve_mls(prog, flags.settings());

    std::cout << "case: " << base.name << " (fingerprint " << base.fingerprint() << ")\n";
    std::cout << "status: " << to_string(sol.status) << "\n";
    if (sol.status == SolveStatus::Optimal) {
        std::cout << "total shed: " << format_sig9(sol.total_shed) << " pu\n";
        std::cout << "jain index: " << format_sig9(sol.jain) << "\n";
        if (eps) {
            std::cout << "target jain level: "
                      << format_sig9(jain_level_for_eps(
                             *eps, static_cast<int>(net.loads.size())))
                      << "\n";
        }
        std::cout << "sheds (bus: pu):\n";
        for (std::size_t i = 0; i < net.loads.size(); ++i) {
            std::cout << "  " << net.loads[i].bus << ": " << format_sig9(sol.shed[i]) << "\n";
        }
        return kExitOk;
    }
    if (sol.status == SolveStatus::PrimalInfeasible) return kExitInfeasible;
    return kExitUnknown;
}

int run_scenarios(const std::string& case_path, int k, int count, std::uint64_t seed,
                  const std::string& out_path, double shed_threshold,
                  std::int64_t max_attempts, const CommonSolverFlags& flags) {
    const NetworkCase net = load_case_file(case_path);
    ScenarioGenConfig config;
    config.lines_out = k;
    config.target = count;
    config.seed = seed;
    config.shed_threshold = shed_threshold;
    config.max_attempts = max_attempts;
    const ScenarioSet set = generate_scenarios(net, config, flags.settings());

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    write_scenarios(set, out);
    std::cout << "wrote " << set.scenarios.size() << " scenarios to " << out_path << " ("
              << set.attempts << " attempts, k=" << set.lines_out << ", seed=" << set.seed
              << ")\n";
    if (set.exhausted) {
        std::cerr << "warning: " << set.diagnostic << "\n";
        return kExitExhausted;
    }
    return kExitOk;
}

int run_sweep_cmd(const std::string& case_path, const std::string& scenario_file,
                  const std::string& generate_spec, const std::string& kind,
                  const std::string& eps_grid_spec, const std::string& p_set_spec,
                  const std::string& out_path, int jobs, bool timing,
                  const CommonSolverFlags& flags) {
    const NetworkCase net = load_case_file(case_path);

    ScenarioSet set;
    if (!scenario_file.empty()) {
        set = read_scenario_file(scenario_file);
    } else {
        const auto parts = parse_double_list(generate_spec);
        if (parts.size() != 3) {
            throw std::runtime_error("--generate expects k,count,seed");
        }
        ScenarioGenConfig config;
        config.lines_out = static_cast<int>(parts[0]);
        config.target = static_cast<int>(parts[1]);
        config.seed = static_cast<std::uint64_t>(parts[2]);
        set = generate_scenarios(net, config, flags.settings());
        if (set.exhausted) {
            std::cerr << "warning: " << set.diagnostic << "\n";
        }
    }

    SweepOptions options;
    options.jobs = jobs;
    options.solver = flags.settings();

    SweepReport report;
    if (kind == "eps") {
        report = eps_sweep(net, set,
                           eps_grid_spec.empty() ? default_eps_grid()
                                                 : parse_double_list(eps_grid_spec),
                           options);
    } else if (kind == "p") {
        report = pnorm_sweep(net, set,
                             p_set_spec.empty() ? std::vector<double>{1, 2, 4, 8, kInf}
                                                : parse_double_list(p_set_spec),
                             options);
    } else {
        throw std::runtime_error("--kind must be 'eps' or 'p'");
    }

    std::cout << "config: case=" << case_path << " fingerprint=" << report.case_fingerprint
              << " kind=" << kind << " scenarios=" << report.scenario_count
              << " seed=" << report.seed << " jobs=" << jobs << " grid=";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        if (i > 0) std::cout << ",";
        std::cout << format_sig9(report.grid[i]);
    }
    std::cout << " tol_feas=" << flags.tol_feas << " tol_gap=" << flags.tol_gap << "\n";

    export_csv_file(report, out_path, timing);
    std::cout << "wrote " << report.rows.size() << " rows to " << out_path << "\n";
    print_sweep_summary(report, std::cout);
    return kExitOk;
}

int run_epsmax(const std::string& case_path, const std::string& scenario_file, double tol,
               const CommonSolverFlags& flags) {
    const NetworkCase net = load_case_file(case_path);
    const ScenarioSet set = read_scenario_file(scenario_file);
    std::cout << "scenario_id,eps_max,solves\n";
    for (std::size_t i = 0; i < set.scenarios.size(); ++i) {
        const EpsMaxResult r = eps_max(net, set.scenarios[i], tol, flags.settings());
        if (r.ok) {
            std::cout << i << "," << format_sig9(r.value) << "," << r.solves << "\n";
        } else {
            std::cout << i << ",error(" << r.message << ")," << r.solves << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairness-constrained conic optimization toolkit"};
    app.require_subcommand(1);

    CommonSolverFlags flags;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one load-shedding instance");
    std::string case_path, scenario_spec, scenario_file, p_spec;
    int scenario_index = 0;
    double eps_value = 0.0;
    solve_cmd->add_option("--case", case_path, "MATPOWER case file")
        ->required()
        ->envname("FAIRSOC_CASE");
    solve_cmd->add_option("--scenario", scenario_spec, "comma-separated damaged line ids");
    solve_cmd->add_option("--scenarios", scenario_file, "scenario file (with --index)");
    solve_cmd->add_option("--index", scenario_index, "scenario index into --scenarios");
    auto* eps_opt = solve_cmd->add_option("--eps", eps_value, "fairness level in [0,1]");
    solve_cmd->add_option("--p", p_spec, "p-norm objective (1,2,4,8,inf)");
    add_solver_flags(solve_cmd, flags);

    // scenarios
    auto* scen_cmd = app.add_subcommand("scenarios", "generate damage scenarios");
    int gen_k = 5, gen_count = 200;
    std::uint64_t gen_seed = 0;
    std::string scen_out;
    double shed_threshold = 1e-4;
    std::int64_t max_attempts = 0;
    scen_cmd->add_option("--case", case_path, "MATPOWER case file")
        ->required()
        ->envname("FAIRSOC_CASE");
    scen_cmd->add_option("--k", gen_k, "damaged lines per scenario");
    scen_cmd->add_option("--count", gen_count, "number of scenarios");
    scen_cmd->add_option("--seed", gen_seed, "RNG seed")->envname("FAIRSOC_SEED");
    scen_cmd->add_option("--out", scen_out, "output scenario file")->required();
    scen_cmd->add_option("--shed-threshold", shed_threshold,
                         "keep scenarios with base shed above this");
    scen_cmd->add_option("--max-attempts", max_attempts, "sampling budget (0 = auto)");
    add_solver_flags(scen_cmd, flags);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and export CSV");
    std::string kind = "eps", eps_grid_spec, p_set_spec, sweep_out, generate_spec;
    int jobs = 0;
    bool timing = false;
    sweep_cmd->add_option("--case", case_path, "MATPOWER case file")
        ->required()
        ->envname("FAIRSOC_CASE");
    sweep_cmd->add_option("--scenarios", scenario_file, "scenario file");
    sweep_cmd->add_option("--generate", generate_spec, "generate scenarios: k,count,seed");
    sweep_cmd->add_option("--kind", kind, "sweep kind: eps or p");
    sweep_cmd->add_option("--eps-grid", eps_grid_spec, "comma-separated eps values");
    sweep_cmd->add_option("--p-set", p_set_spec, "comma-separated p values (inf allowed)");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
    sweep_cmd->add_option("--jobs", jobs, "parallel workers (0 = all cores, 1 = serial)")
        ->envname("FAIRSOC_JOBS");
    sweep_cmd->add_flag("--timing", timing, "record wall times in the CSV");
    add_solver_flags(sweep_cmd, flags);

    // epsmax
    auto* epsmax_cmd = app.add_subcommand("epsmax", "bisection for the feasibility edge");
    double epsmax_tol = 1e-3;
    epsmax_cmd->add_option("--case", case_path, "MATPOWER case file")
        ->required()
        ->envname("FAIRSOC_CASE");
    epsmax_cmd->add_option("--scenarios", scenario_file, "scenario file")->required();
    epsmax_cmd->add_option("--tol", epsmax_tol, "bisection tolerance");
    add_solver_flags(epsmax_cmd, flags);

    try {
        app.parse(argc, argv);

        if (solve_cmd->parsed()) {
            if (!scenario_spec.empty() && !scenario_file.empty()) {
                throw std::runtime_error("give either --scenario or --scenarios, not both");
            }
            if (*eps_opt && !p_spec.empty()) {
                throw std::runtime_error("give either --eps or --p, not both");
            }
            if (*eps_opt && !(eps_value >= 0.0 && eps_value <= 1.0)) {
                throw std::runtime_error("--eps must lie in [0, 1]");
            }
            std::optional<double> eps;
            if (*eps_opt) eps = eps_value;
            return run_solve(case_path, scenario_spec, scenario_file, scenario_index, eps,
                             p_spec, flags);
        }
        if (scen_cmd->parsed()) {
            return run_scenarios(case_path, gen_k, gen_count, gen_seed, scen_out,
                                 shed_threshold, max_attempts, flags);
        }
        if (sweep_cmd->parsed()) {
            if (scenario_file.empty() == generate_spec.empty()) {
                throw std::runtime_error("give exactly one of --scenarios or --generate");
            }
            return run_sweep_cmd(case_path, scenario_file, generate_spec, kind, eps_grid_spec,
                                 p_set_spec, sweep_out, jobs, timing, flags);
        }
        if (epsmax_cmd->parsed()) {
            return run_epsmax(case_path, scenario_file, epsmax_tol, flags);
        }
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
