#include "fairsoc/mls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "fairsoc/fairness.hpp"

namespace fairsoc {

namespace {

// Lowest bus id of each connected component gets its angle pinned to zero.
std::vector<int> gauge_buses(const NetworkCase& net) {
    const int nb = static_cast<int>(net.buses.size());
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& line : net.lines) {
        const int a = find(net.bus_index(line.from_bus));
        const int b = find(net.bus_index(line.to_bus));
        if (a != b) parent[a] = b;
    }
    std::map<int, int> lowest;  // component root -> lowest bus index
    for (int i = 0; i < nb; ++i) {
        const int root = find(i);
        auto [it, fresh] = lowest.try_emplace(root, i);
        if (!fresh && net.buses[i].id < net.buses[it->second].id) it->second = i;
    }
    std::vector<int> refs;
    for (const auto& [root, idx] : lowest) refs.push_back(idx);
    std::sort(refs.begin(), refs.end());
    return refs;
}

MlsProgram build_base(const NetworkCase& net) {
    if (net.buses.empty()) {
        throw std::invalid_argument("build_mls: case has no buses");
    }
    MlsProgram mls;
    auto& prog = mls.program;

    for (std::size_t i = 0; i < net.buses.size(); ++i) {
        mls.angle.push_back(prog.add_variable(-kInf, kInf));
    }
    for (const auto& gen : net.generators) {
        mls.dispatch.push_back(prog.add_variable(gen.pmin, gen.pmax));
    }
    for (const auto& line : net.lines) {
        mls.flow.push_back(line.limit == kInf ? prog.add_variable(-kInf, kInf)
                                              : prog.add_variable(-line.limit, line.limit));
    }
    for (const auto& load : net.loads) {
        mls.shed.push_back(prog.add_variable(0.0, load.max_shed));
    }

    // Flow law per line.
    for (std::size_t l = 0; l < net.lines.size(); ++l) {
        const auto& line = net.lines[l];
        const VariableId ti = mls.angle[static_cast<std::size_t>(net.bus_index(line.from_bus))];
        const VariableId tj = mls.angle[static_cast<std::size_t>(net.bus_index(line.to_bus))];
        prog.add_equality(LinearExpr(mls.flow[l]) - line.susceptance * ti +
                          line.susceptance * tj);
    }

    // Nodal balance: generation minus served demand equals net outflow.
    for (std::size_t b = 0; b < net.buses.size(); ++b) {
        LinearExpr balance;
        for (std::size_t g = 0; g < net.generators.size(); ++g) {
            if (net.bus_index(net.generators[g].bus) == static_cast<int>(b)) {
                balance += mls.dispatch[g];
            }
        }
        for (std::size_t d = 0; d < net.loads.size(); ++d) {
            if (net.bus_index(net.loads[d].bus) == static_cast<int>(b)) {
                balance += mls.shed[d];
                balance -= net.loads[d].max_shed;
            }
        }
        for (std::size_t l = 0; l < net.lines.size(); ++l) {
            if (net.bus_index(net.lines[l].from_bus) == static_cast<int>(b)) {
                balance -= mls.flow[l];
            }
            if (net.bus_index(net.lines[l].to_bus) == static_cast<int>(b)) {
                balance += mls.flow[l];
            }
        }
        prog.add_equality(balance);
    }

    for (int ref : gauge_buses(net)) {
        prog.add_equality(LinearExpr(mls.angle[static_cast<std::size_t>(ref)]));
    }

    LinearExpr total;
    for (const auto& d : mls.shed) total += d;
    prog.set_objective(Sense::Minimize, total);
    return mls;
}

}  // namespace

MlsProgram build_mls(const NetworkCase& net) { return build_base(net); }

MlsProgram build_fair_mls(const NetworkCase& net, double eps) {
    MlsProgram mls = build_base(net);
    std::vector<LinearExpr> utilities(mls.shed.begin(), mls.shed.end());
    add_fairness_constraint(mls.program, utilities, eps);
    return mls;
}

MlsProgram build_pnorm_mls(const NetworkCase& net, double p) {
    MlsProgram mls = build_base(net);
    auto& prog = mls.program;
    const auto& shed = mls.shed;

    if (p == 1.0) {
        return mls;  // identical objective
    }
    const VariableId t = prog.add_variable(-kInf, kInf);
    if (std::isinf(p)) {
        for (const auto& d : shed) {
            prog.add_inequality(LinearExpr(d) - LinearExpr(t));
        }
    } else if (p == 2.0) {
        std::vector<LinearExpr> members(shed.begin(), shed.end());
        prog.add_soc(LinearExpr(t), std::move(members));
    } else if (p == 4.0 || p == 8.0) {
        // Tower of squares: d_i^2 <= v_i t, (v_i^2 <= w_i t,) ||last|| <= t.
        auto rotated = [&](VariableId num, VariableId scale_a, VariableId scale_b) {
            // num^2 <= scale_a * scale_b via ||(2 num, a - b)|| <= a + b
            prog.add_soc(LinearExpr(scale_a) + LinearExpr(scale_b),
                         {2.0 * num, LinearExpr(scale_a) - LinearExpr(scale_b)});
        };
        std::vector<VariableId> level;
        for (const auto& d : shed) {
            const VariableId v = prog.add_variable(-kInf, kInf);
            rotated(d, v, t);
            level.push_back(v);
        }
        if (p == 8.0) {
            std::vector<VariableId> next;
            for (const auto& v : level) {
                const VariableId w = prog.add_variable(-kInf, kInf);
                rotated(v, w, t);
                next.push_back(w);
            }
            level = next;
        }
        std::vector<LinearExpr> members(level.begin(), level.end());
        prog.add_soc(LinearExpr(t), std::move(members));
    } else {
        throw std::invalid_argument("build_pnorm_mls: supported p values are 1, 2, 4, 8, inf");
    }
    prog.set_objective(Sense::Minimize, LinearExpr(t));
    return mls;
}

MlsSolution solve_mls(const MlsProgram& mls, const SolverSettings& settings) {
    const ProgramSolution sol = solve_program(mls.program, settings);
    MlsSolution out;
    out.status = sol.status;
    out.residuals = sol.residuals;
    if (sol.status != SolveStatus::Optimal) {
        return out;
    }
    auto value = [&](VariableId v) { return sol.values[static_cast<std::size_t>(v.value)]; };
    for (const auto& d : mls.shed) {
        out.shed.push_back(std::max(0.0, value(d)));
    }
    for (const auto& g : mls.dispatch) {
        out.dispatch.push_back(value(g));
    }
    for (const auto& a : mls.angle) {
        out.angle.push_back(value(a));
    }
    out.total_shed = std::accumulate(out.shed.begin(), out.shed.end(), 0.0);
    out.jain = out.shed.empty() ? 1.0 : jain_index(out.shed);
    return out;
}

namespace {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t cutoff = max - max % bound;
    std::uint64_t r = rng();
    while (r >= cutoff) r = rng();
    return r % bound;
}

}  // namespace

ScenarioSet generate_scenarios(const NetworkCase& net, const ScenarioGenConfig& config,
                               const SolverSettings& settings) {
    const int nlines = static_cast<int>(net.lines.size());
    if (config.lines_out >= nlines) {
        throw std::invalid_argument("generate_scenarios: k must be below the line count");
    }
    if (config.lines_out < 1 || config.target < 0) {
        throw std::invalid_argument("generate_scenarios: bad k or target");
    }

    ScenarioSet set;
    set.lines_out = config.lines_out;
    set.seed = config.seed;
    const std::int64_t budget =
        config.max_attempts > 0 ? config.max_attempts
                                : 200 * static_cast<std::int64_t>(std::max(config.target, 1));

    std::mt19937_64 rng(config.seed);
    std::set<std::vector<int>> seen;
    std::vector<int> ids(static_cast<std::size_t>(nlines));
    std::iota(ids.begin(), ids.end(), 0);

    while (static_cast<int>(set.scenarios.size()) < config.target && set.attempts < budget) {
        ++set.attempts;
        // Partial Fisher-Yates draw of a k-subset.
        for (int i = 0; i < config.lines_out; ++i) {
            const int j = i + static_cast<int>(bounded_draw(
                                  rng, static_cast<std::uint64_t>(nlines - i)));
            std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
        }
        DamageScenario sc;
        sc.removed_lines.assign(ids.begin(), ids.begin() + config.lines_out);
        std::sort(sc.removed_lines.begin(), sc.removed_lines.end());
        if (!seen.insert(sc.removed_lines).second) continue;

        const NetworkCase damaged = apply_damage(net, sc);
        const MlsSolution base = solve_mls(build_mls(damaged), settings);
        if (base.status == SolveStatus::Optimal && base.total_shed > config.shed_threshold) {
            set.scenarios.push_back(std::move(sc));
        }
    }
    if (static_cast<int>(set.scenarios.size()) < config.target) {
        set.exhausted = true;
        set.diagnostic = "attempt budget " + std::to_string(budget) + " exhausted after " +
                         std::to_string(set.scenarios.size()) + "/" +
                         std::to_string(config.target) + " scenarios";
    }
    return set;
}

}  // namespace fairsoc
