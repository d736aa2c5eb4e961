#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "fairsoc/conic_program.hpp"

namespace fairsoc {

enum class ConeType { Free, NonNegative, SecondOrder };

struct ConeBlock {
    ConeType type;
    int dim;
};

/// Affine recovery of one original variable from standard-form coordinates:
/// value = scale * x[column] + offset, or just offset when column < 0.
struct AffineBackMap {
    int column = -1;
    double scale = 0.0;
    double offset = 0.0;
};

/// Frozen conic problem in the layout the solver consumes:
///   minimize c'x  subject to  A x = b,  x in (free^F x nonneg^L x SOC...).
/// Columns are grouped by block: free first, then nonnegative, then one
/// contiguous group per second-order cone (leading coordinate first).
struct StandardConicForm {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    double objective_constant = 0.0;
    bool maximize = false;

    int free_dim = 0;
    int nonneg_dim = 0;
    std::vector<int> soc_dims;

    std::vector<AffineBackMap> back_map;

    int num_cols() const { return static_cast<int>(A.cols()); }
    int num_rows() const { return static_cast<int>(A.rows()); }

    /// Ordered cone layout; block dimensions sum to num_cols().
    std::vector<ConeBlock> blocks() const;

    /// Objective value of the *original* program at a standard-form point.
    double objective_value(const Eigen::VectorXd& x) const;

    /// Values of every original variable at a standard-form point.
    std::vector<double> recover_variables(const Eigen::VectorXd& x) const;
};

/// Lowers a builder program to standard conic form. Box bounds become
/// nonnegative slacks, each SOC constraint becomes an SOC block tied to its
/// expressions by equality rows, and a maximize objective is negated.
/// Deterministic: the same program always yields bit-identical matrices.
StandardConicForm to_standard_form(const ConicProgram& program);

}  // namespace fairsoc
