#pragma once

#include <Eigen/Dense>

#include "lofit/basis.hpp"

namespace lofit {

/// Alternative directions made orthonormal to the null model and to each
/// other in the weighted empirical inner product
///
///     <f, g> = (1/n) sum_i w_i f(x_i) g(x_i),
///
/// with per-observation weights w_i (curvature of the cumulant function at
/// the null fit).  Columns satisfy, within numerical tolerance,
///   (1/n) sum_i w_i vhat_j vhat_k = delta_jk   and
///   sum_i w_i vhat_j gamma_c = 0 for every null-model column gamma_c.
struct OrthonormalSystem {
    Eigen::MatrixXd values;      ///< n x K matrix of vhat_j(x_i)
    Eigen::VectorXd weights;     ///< per-observation weights w_i
    BasisKind source_kind = BasisKind::custom;  ///< basis the columns came from
    Eigen::MatrixXd null_basis;  ///< null-model design the columns are orthogonal to

    int n() const { return static_cast<int>(values.rows()); }
    int K() const { return static_cast<int>(values.cols()); }
};

/// Weighted modified Gram-Schmidt (with one reorthogonalization pass) of the
/// raw basis columns against the null design and against each other.  The
/// sign of each output column is the natural residual direction, i.e. the
/// weighted inner product <vhat_j, u_j> is positive.
///
/// Throws domain_error on nonpositive weights and design_error (naming the
/// offending column) when the stacked system [null | raw] is rank deficient.
OrthonormalSystem orthonormalize(const BasisSet& raw, const Eigen::MatrixXd& null_design,
                                 const Eigen::VectorXd& weights);

}  // namespace lofit
