#include "fairsoc/linear_expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsoc {

namespace {

void check_finite(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("LinearExpr: coefficient or constant is not finite");
    }
}

}  // namespace

LinearExpr::LinearExpr(double constant) : constant_(constant) { check_finite(constant); }

LinearExpr::LinearExpr(VariableId var) {
    if (!var.valid()) {
        throw std::invalid_argument("LinearExpr: invalid variable handle");
    }
    terms_.push_back({var, 1.0});
}

LinearExpr::LinearExpr(std::initializer_list<LinearTerm> terms, double constant)
    : terms_(terms), constant_(constant) {
    check_finite(constant);
    for (const auto& t : terms_) {
        check_finite(t.coeff);
        if (!t.var.valid()) {
            throw std::invalid_argument("LinearExpr: invalid variable handle");
        }
    }
    normalize();
}

LinearExpr LinearExpr::term(VariableId var, double coeff) {
    LinearExpr e;
    check_finite(coeff);
    if (!var.valid()) {
        throw std::invalid_argument("LinearExpr: invalid variable handle");
    }
    if (coeff != 0.0) {
        e.terms_.push_back({var, coeff});
    }
    return e;
}

double LinearExpr::evaluate(std::span<const double> values) const {
    double acc = constant_;
    for (const auto& t : terms_) {
        acc += t.coeff * values[static_cast<std::size_t>(t.var.value)];
    }
    return acc;
}

void LinearExpr::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        VariableId var = terms_[i].var;
        double coeff = 0.0;
        while (i < terms_.size() && terms_[i].var == var) {
            coeff += terms_[i].coeff;
            ++i;
        }
        check_finite(coeff);
        if (coeff != 0.0) {
            terms_[out++] = {var, coeff};
        }
    }
    terms_.resize(out);
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& rhs) {
    constant_ += rhs.constant_;
    check_finite(constant_);
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    normalize();
    return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& rhs) {
    constant_ -= rhs.constant_;
    check_finite(constant_);
    for (const auto& t : rhs.terms_) {
        terms_.push_back({t.var, -t.coeff});
    }
    normalize();
    return *this;
}

LinearExpr& LinearExpr::operator*=(double scale) {
    check_finite(scale);
    constant_ *= scale;
    for (auto& t : terms_) {
        t.coeff *= scale;
    }
    normalize();
    return *this;
}

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs) { return lhs += rhs; }
LinearExpr operator-(LinearExpr lhs, const LinearExpr& rhs) { return lhs -= rhs; }
LinearExpr operator-(LinearExpr expr) { return expr *= -1.0; }
LinearExpr operator*(double scale, LinearExpr expr) { return expr *= scale; }
LinearExpr operator*(LinearExpr expr, double scale) { return expr *= scale; }
LinearExpr operator*(double coeff, VariableId var) { return LinearExpr::term(var, coeff); }

}  // namespace fairsoc
