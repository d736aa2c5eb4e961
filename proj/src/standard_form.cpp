#include "fairsoc/standard_form.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fairsoc {

std::vector<ConeBlock> StandardConicForm::blocks() const {
    std::vector<ConeBlock> out;
    if (free_dim > 0) out.push_back({ConeType::Free, free_dim});
    if (nonneg_dim > 0) out.push_back({ConeType::NonNegative, nonneg_dim});
    for (int d : soc_dims) out.push_back({ConeType::SecondOrder, d});
    return out;
}

double StandardConicForm::objective_value(const Eigen::VectorXd& x) const {
    const double inner = c.dot(x);
    return (maximize ? -inner : inner) + objective_constant;
}

std::vector<double> StandardConicForm::recover_variables(const Eigen::VectorXd& x) const {
    std::vector<double> values(back_map.size());
    for (std::size_t i = 0; i < back_map.size(); ++i) {
        const auto& m = back_map[i];
        values[i] = m.column >= 0 ? m.scale * x[m.column] + m.offset : m.offset;
    }
    return values;
}

namespace {

struct RowAccum {
    std::vector<std::pair<int, double>> entries;
    double constant = 0.0;
};

}  // namespace

StandardConicForm to_standard_form(const ConicProgram& program) {
    const int nvar = program.num_variables();

    StandardConicForm form;
    form.maximize = program.objective_sense() == Sense::Maximize;
    form.back_map.resize(static_cast<std::size_t>(nvar));

    // Variable classification. Fixed variables are substituted out; a
    // one-sided bound maps onto a shifted (possibly negated) nonnegative
    // coordinate; two-sided bounds additionally get a partner slack row.
    int free_count = 0;
    int nonneg_count = 0;
    std::vector<int> boxed;  // variables needing s + s' = u - l
    for (int v = 0; v < nvar; ++v) {
        const Bounds bd = program.bounds({v});
        auto& back = form.back_map[static_cast<std::size_t>(v)];
        if (bd.lower == bd.upper) {
            back = {-1, 0.0, bd.lower};
        } else if (bd.lower == -kInf && bd.upper == kInf) {
            back = {free_count++, 1.0, 0.0};  // placeholder; free block starts at 0
        } else if (bd.upper == kInf) {
            back = {nonneg_count++, 1.0, bd.lower};  // column offset by free_dim later
        } else if (bd.lower == -kInf) {
            back = {nonneg_count++, -1.0, bd.upper};
        } else {
            back = {nonneg_count++, 1.0, bd.lower};
            boxed.push_back(v);
        }
    }
    form.free_dim = free_count;

    // Column layout: free | variable nonneg coords | box partner slacks |
    // inequality slacks | SOC blocks. Shift the nonneg placeholders.
    const int box_slack_base = free_count + nonneg_count;
    const int ineq_slack_base = box_slack_base + static_cast<int>(boxed.size());
    const int soc_base =
        ineq_slack_base + static_cast<int>(program.inequalities().size());
    form.nonneg_dim = soc_base - free_count;

    int next_free = 0;
    int next_nonneg = form.free_dim;
    for (int v = 0; v < nvar; ++v) {
        auto& back = form.back_map[static_cast<std::size_t>(v)];
        if (back.column < 0) continue;
        const Bounds bd = program.bounds({v});
        back.column = (bd.lower == -kInf && bd.upper == kInf) ? next_free++ : next_nonneg++;
    }

    int total_cols = soc_base;
    std::vector<int> soc_first_col;
    for (const auto& soc : program.soc_constraints()) {
        soc_first_col.push_back(total_cols);
        const int dim = 1 + static_cast<int>(soc.members.size());
        form.soc_dims.push_back(dim);
        total_cols += dim;
    }

    // Substitutes original variables with their standard-form columns.
    auto substitute = [&](const LinearExpr& expr) {
        RowAccum row;
        row.constant = expr.constant();
        for (const auto& t : expr.terms()) {
            const auto& back = form.back_map[static_cast<std::size_t>(t.var.value)];
            if (back.column < 0) {
                row.constant += t.coeff * back.offset;
            } else {
                row.entries.emplace_back(back.column, t.coeff * back.scale);
                row.constant += t.coeff * back.offset;
            }
        }
        return row;
    };

    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> rhs;
    auto push_row = [&](const RowAccum& row, double target) {
        const int r = static_cast<int>(rhs.size());
        for (const auto& [col, coeff] : row.entries) {
            trips.emplace_back(r, col, coeff);
        }
        rhs.push_back(target - row.constant);
        return r;
    };

    for (const auto& eq : program.equalities()) {
        push_row(substitute(eq), 0.0);
    }
    for (std::size_t i = 0; i < program.inequalities().size(); ++i) {
        RowAccum row = substitute(program.inequalities()[i]);
        row.entries.emplace_back(ineq_slack_base + static_cast<int>(i), 1.0);
        push_row(row, 0.0);
    }
    for (std::size_t i = 0; i < boxed.size(); ++i) {
        const int v = boxed[i];
        const Bounds bd = program.bounds({v});
        RowAccum row;
        row.entries.emplace_back(form.back_map[static_cast<std::size_t>(v)].column, 1.0);
        row.entries.emplace_back(box_slack_base + static_cast<int>(i), 1.0);
        push_row(row, bd.upper - bd.lower);
    }
    for (std::size_t s = 0; s < program.soc_constraints().size(); ++s) {
        const auto& soc = program.soc_constraints()[s];
        const int first = soc_first_col[s];
        RowAccum trow = substitute(soc.t);
        trow.entries.emplace_back(first, -1.0);
        push_row(trow, 0.0);
        for (std::size_t m = 0; m < soc.members.size(); ++m) {
            RowAccum mrow = substitute(soc.members[m]);
            mrow.entries.emplace_back(first + 1 + static_cast<int>(m), -1.0);
            push_row(mrow, 0.0);
        }
    }

    RowAccum obj = substitute(program.objective());
    form.objective_constant = obj.constant;
    form.c = Eigen::VectorXd::Zero(total_cols);
    const double sign = form.maximize ? -1.0 : 1.0;
    for (const auto& [col, coeff] : obj.entries) {
        form.c[col] += sign * coeff;
    }

    const int nrows = static_cast<int>(rhs.size());
    form.A.resize(nrows, total_cols);
    form.A.setFromTriplets(trips.begin(), trips.end());
    form.A.makeCompressed();
    form.b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), nrows);

    for (double v : rhs) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("to_standard_form: non-finite right-hand side");
        }
    }
    return form;
}

}  // namespace fairsoc
