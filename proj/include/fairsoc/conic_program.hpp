#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "fairsoc/linear_expr.hpp"

namespace fairsoc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };

struct Bounds {
    double lower = -kInf;
    double upper = kInf;
};

struct SocConstraint {
    LinearExpr t;                   // right-hand side: ||members||_2 <= t
    std::vector<LinearExpr> members;
};

/// Mutable builder for LP+SOC problems over named variables. Programs are
/// constructed incrementally, then frozen into a StandardConicForm for
/// solving; the builder itself is not meant for concurrent mutation.
class ConicProgram {
  public:
    /// Adds a variable with box bounds; either side may be infinite.
    /// Throws std::invalid_argument on inverted or NaN bounds.
    VariableId add_variable(double lower, double upper);

    int num_variables() const { return static_cast<int>(bounds_.size()); }
    Bounds bounds(VariableId var) const;

    void set_objective(Sense sense, LinearExpr objective);
    Sense objective_sense() const { return sense_; }
    const LinearExpr& objective() const { return objective_; }

    /// expr == 0. Returns the row id.
    int add_equality(LinearExpr expr);
    /// expr <= 0. Returns the row id.
    int add_inequality(LinearExpr expr);
    /// ||members||_2 <= t. Returns the cone id. Throws if members is empty.
    int add_soc(LinearExpr t, std::vector<LinearExpr> members);

    const std::vector<LinearExpr>& equalities() const { return equalities_; }
    const std::vector<LinearExpr>& inequalities() const { return inequalities_; }
    const std::vector<SocConstraint>& soc_constraints() const { return socs_; }

    /// Human-readable listing of variables, constraints, and cones.
    void dump(std::ostream& os) const;

  private:
    void validate_expr(const LinearExpr& expr) const;

    std::vector<Bounds> bounds_;
    Sense sense_ = Sense::Minimize;
    LinearExpr objective_;
    std::vector<LinearExpr> equalities_;
    std::vector<LinearExpr> inequalities_;
    std::vector<SocConstraint> socs_;
};

}  // namespace fairsoc
