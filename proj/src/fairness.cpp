#include "fairsoc/fairness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fairsoc {

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps must lie in [0, 1], got " + std::to_string(eps));
    }
}

void check_n(int n, int minimum) {
    if (n < minimum) {
        throw std::invalid_argument("population size must be >= " + std::to_string(minimum));
    }
}

void check_nonnegative(std::span<const double> u) {
    for (double v : u) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("utility vector must be componentwise nonnegative");
        }
    }
}

}  // namespace

double fairness_scale(double eps, int n) {
    check_eps(eps);
    check_n(n, 1);
    return 1.0 - eps + eps * std::sqrt(static_cast<double>(n));
}

double jain_index(std::span<const double> u) {
    check_n(static_cast<int>(u.size()), 1);
    check_nonnegative(u);
    double sum = 0.0, sum_sq = 0.0;
    for (double v : u) {
        sum += v;
        sum_sq += v * v;
    }
    if (sum_sq == 0.0) return 1.0;  // all-zero: perfectly equal by convention
    return sum * sum / (static_cast<double>(u.size()) * sum_sq);
}

double jain_level_for_eps(double eps, int n) {
    const double k = fairness_scale(eps, n);
    return k * k / static_cast<double>(n);
}

double eps_for_jain_level(double jain, int n) {
    check_n(n, 2);
    const double nd = static_cast<double>(n);
    if (!(jain >= 1.0 / nd - 1e-15 && jain <= 1.0 + 1e-15)) {
        throw std::invalid_argument("Jain index must lie in [1/n, 1]");
    }
    return (std::sqrt(nd * jain) - 1.0) / (std::sqrt(nd) - 1.0);
}

double cv_squared_bound(double eps, int n) {
    check_n(n, 2);
    const double k = fairness_scale(eps, n);
    const double nd = static_cast<double>(n);
    return nd / (nd - 1.0) * (nd / (k * k) - 1.0);
}

FairnessStats utility_stats(std::span<const double> u) {
    const int n = static_cast<int>(u.size());
    check_n(n, 2);
    check_nonnegative(u);
    double sum = 0.0, sum_sq = 0.0;
    for (double v : u) {
        sum += v;
        sum_sq += v * v;
    }
    const double nd = static_cast<double>(n);
    FairnessStats stats;
    stats.mean = sum / nd;
    stats.variance = std::max(0.0, (sum_sq - nd * stats.mean * stats.mean) / (nd - 1.0));
    stats.degenerate = sum_sq == 0.0;
    stats.jain = stats.degenerate ? 1.0 : sum * sum / (nd * sum_sq);
    if (!stats.degenerate && stats.mean > 0.0) {
        stats.cv = std::sqrt(stats.variance) / stats.mean;
    }
    return stats;
}

bool is_at_least_eps_fair(std::span<const double> u, double eps, double tol) {
    check_nonnegative(u);
    const double k = fairness_scale(eps, static_cast<int>(u.size()));
    double norm1 = 0.0, norm2_sq = 0.0;
    for (double v : u) {
        norm1 += v;
        norm2_sq += v * v;
    }
    return k * std::sqrt(norm2_sq) <= norm1 + tol;
}

double alpha_fair_utility(std::span<const double> u, double alpha) {
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("alpha must be >= 0");
    }
    check_nonnegative(u);
    if (alpha >= 1.0) {
        for (double v : u) {
            if (v <= 0.0) {
                throw std::invalid_argument(
                    "alpha >= 1 requires strictly positive utilities");
            }
        }
    }
    if (alpha == 1.0) {
        double acc = 0.0;
        for (double v : u) acc += std::log(v);
        return acc;
    }
    double acc = 0.0;
    for (double v : u) acc += std::pow(v, 1.0 - alpha);
    return acc / (1.0 - alpha);
}

double p_norm_utility(std::span<const double> u, double p) {
    check_nonnegative(u);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u) m = std::max(m, v);
        return -m;
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("p must be >= 1 or infinity");
    }
    double acc = 0.0;
    for (double v : u) acc += std::pow(v, p);
    return -std::pow(acc, 1.0 / p);
}

int add_fairness_constraint(ConicProgram& program, std::span<const LinearExpr> utilities,
                            double eps) {
    check_eps(eps);
    if (utilities.empty()) {
        throw std::invalid_argument("add_fairness_constraint: empty utility list");
    }
    for (const auto& u : utilities) {
        // Validate declared bounds where the expression is a bare variable.
        if (u.terms().size() == 1 && u.terms()[0].coeff > 0.0 && u.constant() == 0.0) {
            if (program.bounds(u.terms()[0].var).lower < 0.0) {
                throw std::invalid_argument(
                    "add_fairness_constraint: utility variable may go negative");
            }
        }
    }
    const int n = static_cast<int>(utilities.size());
    if (eps == 1.0) {
        // Exact equality form; the cone would touch its boundary at every
        // feasible point, which starves the interior-point method.
        int first = -1;
        for (int i = 0; i + 1 < n; ++i) {
            const int id = program.add_equality(utilities[i] - utilities[i + 1]);
            if (first < 0) first = id;
        }
        if (n == 1) {
            first = program.add_inequality(-utilities[0]);  // u >= 0, trivially fair
        }
        return first;
    }
    const double k = fairness_scale(eps, n);
    const VariableId t = program.add_variable(-kInf, kInf);
    LinearExpr total;
    for (const auto& u : utilities) total += u;
    program.add_equality(total - k * t);
    std::vector<LinearExpr> members(utilities.begin(), utilities.end());
    return program.add_soc(LinearExpr(t), std::move(members));
}

}  // namespace fairsoc
