#include "fairsoc/conic_program.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fairsoc {

VariableId ConicProgram::add_variable(double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper)) {
        throw std::invalid_argument("add_variable: NaN bound");
    }
    if (lower > upper) {
        throw std::invalid_argument("add_variable: inverted bounds [" + std::to_string(lower) +
                                    ", " + std::to_string(upper) + "]");
    }
    if (lower == kInf || upper == -kInf) {
        throw std::invalid_argument("add_variable: bound forces an infinite value");
    }
    bounds_.push_back({lower, upper});
    return {num_variables() - 1};
}

Bounds ConicProgram::bounds(VariableId var) const {
    if (!var.valid() || var.value >= num_variables()) {
        throw std::invalid_argument("bounds: unknown variable");
    }
    return bounds_[static_cast<std::size_t>(var.value)];
}

void ConicProgram::validate_expr(const LinearExpr& expr) const {
    for (const auto& t : expr.terms()) {
        if (!t.var.valid() || t.var.value >= num_variables()) {
            throw std::invalid_argument("expression references unknown variable");
        }
    }
}

void ConicProgram::set_objective(Sense sense, LinearExpr objective) {
    validate_expr(objective);
    sense_ = sense;
    objective_ = std::move(objective);
}

int ConicProgram::add_equality(LinearExpr expr) {
    validate_expr(expr);
    equalities_.push_back(std::move(expr));
    return static_cast<int>(equalities_.size()) - 1;
}

int ConicProgram::add_inequality(LinearExpr expr) {
    validate_expr(expr);
    inequalities_.push_back(std::move(expr));
    return static_cast<int>(inequalities_.size()) - 1;
}

int ConicProgram::add_soc(LinearExpr t, std::vector<LinearExpr> members) {
    if (members.empty()) {
        throw std::invalid_argument("add_soc: empty member list");
    }
    validate_expr(t);
    for (const auto& m : members) {
        validate_expr(m);
    }
    socs_.push_back({std::move(t), std::move(members)});
    return static_cast<int>(socs_.size()) - 1;
}

namespace {

void print_expr(std::ostream& os, const LinearExpr& expr) {
    bool first = true;
    for (const auto& t : expr.terms()) {
        if (!first) os << " + ";
        os << t.coeff << "*x" << t.var.value;
        first = false;
    }
    if (expr.constant() != 0.0 || first) {
        if (!first) os << " + ";
        os << expr.constant();
    }
}

}  // namespace

void ConicProgram::dump(std::ostream& os) const {
    os << (sense_ == Sense::Minimize ? "minimize " : "maximize ");
    print_expr(os, objective_);
    os << "\nvariables (" << num_variables() << "):\n";
    for (int i = 0; i < num_variables(); ++i) {
        const auto& b = bounds_[static_cast<std::size_t>(i)];
        os << "  x" << i << " in [" << b.lower << ", " << b.upper << "]\n";
    }
    os << "equalities (" << equalities_.size() << "):\n";
    for (const auto& e : equalities_) {
        os << "  ";
        print_expr(os, e);
        os << " == 0\n";
    }
    os << "inequalities (" << inequalities_.size() << "):\n";
    for (const auto& e : inequalities_) {
        os << "  ";
        print_expr(os, e);
        os << " <= 0\n";
    }
    os << "second-order cones (" << socs_.size() << "):\n";
    for (const auto& soc : socs_) {
        os << "  ||(";
        for (std::size_t i = 0; i < soc.members.size(); ++i) {
            if (i > 0) os << "; ";
            print_expr(os, soc.members[i]);
        }
        os << ")|| <= ";
        print_expr(os, soc.t);
        os << "\n";
    }
}

}  // namespace fairsoc
