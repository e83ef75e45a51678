#include "lofit/basis.hpp"

#include <cmath>

#include "lofit/errors.hpp"

namespace lofit {

namespace {

// Rescales each column to empirical second moment (1/n) sum u^2 = 1.
void normalize_columns(Eigen::MatrixXd& m) {
    const double n = static_cast<double>(m.rows());
    for (int j = 0; j < m.cols(); ++j) {
        const double rms = std::sqrt(m.col(j).squaredNorm() / n);
        if (!(rms > 1e-14)) throw design_error("degenerate basis column " + std::to_string(j + 1));
        m.col(j) /= rms;
    }
}

}  // namespace

BasisSet cosine_design(int K, const Eigen::VectorXd& x, bool include_constant) {
    if (K < 1) throw usage_error("cosine basis needs K >= 1");
    const int n = static_cast<int>(x.size());
    if (n < 1) throw usage_error("cosine basis needs at least one design point");
    for (int i = 0; i < n; ++i)
        if (!(x(i) >= 0.0 && x(i) <= 1.0))
            throw domain_error("cosine basis covariate outside [0,1]");

    const int offset = include_constant ? 1 : 0;
    Eigen::MatrixXd values(n, K + offset);
    if (include_constant) values.col(0).setOnes();
    for (int k = 1; k <= K; ++k)
        for (int i = 0; i < n; ++i) values(i, k - 1 + offset) = std::cos(M_PI * k * x(i));
    normalize_columns(values);

    BasisSet out;
    out.kind = BasisKind::cosine;
    out.values = std::move(values);
    out.sup_bound = out.values.cwiseAbs().maxCoeff();
    return out;
}

BasisSet legendre_design(int K, int n) {
    if (K < 1) throw usage_error("legendre basis needs K >= 1");
    if (K >= n) throw design_error("legendre basis needs K < n");

    // Midpoint design x_i = (i - 1/2)/n mapped linearly onto [-1, 1].
    Eigen::VectorXd z(n);
    for (int i = 1; i <= n; ++i) z(i - 1) = static_cast<double>(2 * i - 1 - n) / (n - 1);

    // Legendre recurrence as a well-conditioned start, then exact discrete
    // Gram-Schmidt against lower degrees (two passes) on the design points.
    Eigen::MatrixXd p(n, K + 1);
    p.col(0).setOnes();
    p.col(1) = z;
    for (int k = 1; k < K; ++k)
        p.col(k + 1) =
            ((2.0 * k + 1.0) * z.cwiseProduct(p.col(k)) - static_cast<double>(k) * p.col(k - 1)) /
            (k + 1.0);

    const double dn = static_cast<double>(n);
    for (int j = 0; j <= K; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int m = 0; m < j; ++m) {
                const double proj = p.col(j).dot(p.col(m)) / dn;
                p.col(j) -= proj * p.col(m);
            }
        const double rms = std::sqrt(p.col(j).squaredNorm() / dn);
        if (!(rms > 1e-12)) throw design_error("degenerate legendre column " + std::to_string(j));
        p.col(j) /= rms;
    }

    BasisSet out;
    out.kind = BasisKind::legendre;
    out.values = p.rightCols(K);
    out.sup_bound = out.values.cwiseAbs().maxCoeff();
    return out;
}

BasisSet custom_design(const Eigen::MatrixXd& columns) {
    if (columns.cols() < 1 || columns.rows() < 1) throw usage_error("custom basis must be non-empty");
    BasisSet out;
    out.kind = BasisKind::custom;
    out.values = columns;
    normalize_columns(out.values);
    out.sup_bound = out.values.cwiseAbs().maxCoeff();
    return out;
}

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::cosine: return "cosine";
        case BasisKind::legendre: return "legendre";
        case BasisKind::custom: return "custom";
    }
    throw usage_error("invalid basis kind");
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "cosine") return BasisKind::cosine;
    if (name == "legendre") return BasisKind::legendre;
    if (name == "custom") return BasisKind::custom;
    throw usage_error("unknown basis kind: " + name);
}

}  // namespace lofit
