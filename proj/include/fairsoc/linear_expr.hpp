#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <vector>

namespace fairsoc {

/// Opaque handle into a program's variable table.
struct VariableId {
    int value = -1;

    bool valid() const { return value >= 0; }
    friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

struct LinearTerm {
    VariableId var;
    double coeff = 0.0;
};

/// Sparse affine expression: sum of (variable, coefficient) terms plus a
/// constant offset. Terms are kept sorted by variable with duplicates merged
/// and zero coefficients dropped; all coefficients must be finite.
class LinearExpr {
  public:
    LinearExpr() = default;
    LinearExpr(double constant);  // NOLINT: implicit by design
    LinearExpr(VariableId var);   // NOLINT: implicit by design
    LinearExpr(std::initializer_list<LinearTerm> terms, double constant = 0.0);

    static LinearExpr term(VariableId var, double coeff);

    const std::vector<LinearTerm>& terms() const { return terms_; }
    double constant() const { return constant_; }
    bool is_constant() const { return terms_.empty(); }

    /// Evaluates the expression given a dense assignment indexed by VariableId.
    double evaluate(std::span<const double> values) const;

    LinearExpr& operator+=(const LinearExpr& rhs);
    LinearExpr& operator-=(const LinearExpr& rhs);
    LinearExpr& operator*=(double scale);

  private:
    void normalize();

    std::vector<LinearTerm> terms_;
    double constant_ = 0.0;
};

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs);
LinearExpr operator-(LinearExpr lhs, const LinearExpr& rhs);
LinearExpr operator-(LinearExpr expr);
LinearExpr operator*(double scale, LinearExpr expr);
LinearExpr operator*(LinearExpr expr, double scale);
LinearExpr operator*(double coeff, VariableId var);

}  // namespace fairsoc
