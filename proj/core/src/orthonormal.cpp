#include "lofit/orthonormal.hpp"

#include <cmath>
#include <string>

#include "lofit/errors.hpp"

namespace lofit {

OrthonormalSystem orthonormalize(const BasisSet& raw, const Eigen::MatrixXd& null_design,
                                 const Eigen::VectorXd& weights) {
    const int n = raw.n();
    const int K = raw.K();
    const int p = static_cast<int>(null_design.cols());
    if (null_design.rows() != n || weights.size() != n)
        throw usage_error("orthonormalize: size mismatch between basis, null design and weights");
    for (int i = 0; i < n; ++i)
        if (!(weights(i) > 0.0)) throw domain_error("orthonormalize: nonpositive weight");
    if (p + K > n) throw design_error("orthonormalize: more columns than observations");

    const double dn = static_cast<double>(n);
    auto dot_w = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
        return f.cwiseProduct(weights).dot(g) / dn;
    };

    // Stacked system: null columns first (they define the space the
    // alternatives must be orthogonal to), then the raw directions.
    Eigen::MatrixXd q(n, p + K);
    q.leftCols(p) = null_design;
    q.rightCols(K) = raw.values;

    for (int j = 0; j < p + K; ++j) {
        const double norm0 = std::sqrt(dot_w(q.col(j), q.col(j)));
        for (int pass = 0; pass < 2; ++pass)
            for (int m = 0; m < j; ++m) q.col(j) -= dot_w(q.col(m), q.col(j)) * q.col(m);
        const double norm1 = std::sqrt(dot_w(q.col(j), q.col(j)));
        if (!(norm1 > 1e-10 * (norm0 + 1.0))) {
            const std::string which = j < p ? "null column " + std::to_string(j + 1)
                                            : "basis column " + std::to_string(j - p + 1);
            throw design_error("orthonormalize: rank deficiency at " + which);
        }
        q.col(j) /= norm1;
    }

    OrthonormalSystem out;
    out.values = q.rightCols(K);
    out.weights = weights;
    out.source_kind = raw.kind;
    out.null_basis = null_design;
    return out;
}

}  // namespace lofit
