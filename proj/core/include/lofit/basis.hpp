#pragma once

#include <Eigen/Dense>
#include <string>

namespace lofit {

enum class BasisKind { cosine, legendre, custom };

/// A raw alternative-direction basis evaluated on the design points.
/// Columns are normalized so that the diagonal of (1/n) * values' * values
/// is exactly 1.
struct BasisSet {
    BasisKind kind = BasisKind::custom;
    Eigen::MatrixXd values;  ///< n x K matrix, column j holds u_j(x_i)
    double sup_bound = 0.0;  ///< max absolute entry over the design

    int n() const { return static_cast<int>(values.rows()); }
    int K() const { return static_cast<int>(values.cols()); }
};

/// Cosine basis on [0,1]: column k holds cos(pi*k*x_i), rescaled per column
/// so the empirical second moment is exactly 1.  With include_constant a
/// leading all-ones column (k = 0) is prepended.  Throws domain_error if any
/// covariate lies outside [0,1].
BasisSet cosine_design(int K, const Eigen::VectorXd& x, bool include_constant = false);

/// Discrete Legendre basis on the equispaced midpoint design
/// x_i = (i - 1/2)/n: degree-k polynomials made exactly orthogonal (in the
/// unweighted empirical inner product) to all lower degrees, with empirical
/// second moment 1.  Columns 1..K exclude the constant.  Requires K < n.
BasisSet legendre_design(int K, int n);

/// Wraps externally supplied columns, rescaling each to empirical second
/// moment 1.
BasisSet custom_design(const Eigen::MatrixXd& columns);

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

}  // namespace lofit
