#include "lofit/glm_fit.hpp"

#include <cmath>
#include <limits>

#include "lofit/errors.hpp"

namespace lofit {

double log_likelihood(const ExponentialFamily& family, const Eigen::VectorXd& linear_predictor,
                      double eta, const Dataset& data) {
    if (linear_predictor.size() != data.y.size())
        throw usage_error("linear predictor length does not match number of observations");
    const double a = family.a(eta);
    double total = 0.0;
    for (int i = 0; i < data.n(); ++i) {
        const double th = linear_predictor(i);
        const double y = data.y(i);
        total += (y * th - family.b(th)) / a + family.c(y, eta);
    }
    if (!std::isfinite(total)) throw numeric_error("non-finite log-likelihood");
    return total;
}

namespace {

// Exponential-family log-likelihood kernel with unit dispersion; a monotone
// transform of the full likelihood in the coefficients, so valid for line
// search and convergence checks during IRLS.
double loglik_kernel(const ExponentialFamily& family, const Eigen::VectorXd& lp,
                     const Eigen::VectorXd& y) {
    double total = 0.0;
    for (int i = 0; i < y.size(); ++i) total += y(i) * lp(i) - family.b(lp(i));
    return total;
}

}  // namespace

FittedModel fit_mle(const ExponentialFamily& family, const Eigen::MatrixXd& design,
                    const Dataset& data, bool estimate_dispersion, double eta_fixed) {
    const int n = data.n();
    const int p = static_cast<int>(design.cols());
    if (design.rows() != n) throw usage_error("design rows do not match number of observations");
    if (p == 0) throw usage_error("design has no columns");
    if (p > n) throw design_error("more parameters than observations");
    for (int i = 0; i < n; ++i) family.validate_response(data.y(i));

    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_check(design);
        rank_check.setThreshold(1e-10);
        if (rank_check.rank() < p) throw design_error("rank-deficient design matrix");
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd lp = Eigen::VectorXd::Zero(n);
    double kernel = loglik_kernel(family, lp, data.y);

    constexpr int kMaxIter = 100;
    constexpr double kRelTol = 1e-10;
    int iter = 0;
    bool converged = false;
    while (iter < kMaxIter) {
        ++iter;
        Eigen::VectorXd mu(n), w(n);
        for (int i = 0; i < n; ++i) {
            mu(i) = family.b1(lp(i));
            w(i) = family.b2(lp(i));
        }
        // Newton step via weighted least squares on the working response.
        const Eigen::VectorXd sqrt_w = w.cwiseMax(1e-12).cwiseSqrt();
        const Eigen::MatrixXd xw = sqrt_w.asDiagonal() * design;
        const Eigen::VectorXd z = sqrt_w.asDiagonal() * lp + (data.y - mu).cwiseQuotient(sqrt_w);
        Eigen::VectorXd beta_new = xw.householderQr().solve(z);
        if (!beta_new.allFinite()) throw numeric_error("non-finite IRLS update");

        // Step halving: retreat toward the previous iterate until the
        // likelihood kernel does not decrease.
        Eigen::VectorXd step = beta_new - beta;
        double scale = 1.0;
        Eigen::VectorXd lp_new;
        double kernel_new = -std::numeric_limits<double>::infinity();
        for (int h = 0; h < 40; ++h) {
            lp_new = design * (beta + scale * step);
            kernel_new = loglik_kernel(family, lp_new, data.y);
            if (std::isfinite(kernel_new) && kernel_new >= kernel - 1e-12) break;
            scale *= 0.5;
        }
        if (!std::isfinite(kernel_new))
            throw convergence_error("IRLS step produced non-finite likelihood");

        beta += scale * step;
        lp = lp_new;
        const double improvement = kernel_new - kernel;
        kernel = kernel_new;
        if (std::abs(improvement) <= kRelTol * (std::abs(kernel) + 1.0)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw convergence_error("IRLS did not converge within " + std::to_string(kMaxIter) +
                                " iterations (last kernel " + std::to_string(kernel) + ")");

    FittedModel out;
    out.coefficients = beta;
    out.linear_predictor = lp;
    out.iterations = iter;
    out.dispersion_estimated = estimate_dispersion && family.has_dispersion;
    if (out.dispersion_estimated) {
        // Gaussian canonical link: theta = mean, so the residual sum of
        // squares over n maximizes the profile likelihood in eta.
        double rss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = data.y(i) - family.b1(lp(i));
            rss += r * r;
        }
        out.eta_hat = rss / n;
        if (out.eta_hat <= 0.0 || !std::isfinite(out.eta_hat))
            throw numeric_error("degenerate dispersion estimate (zero residual variance)");
    } else {
        out.eta_hat = family.has_dispersion ? eta_fixed : 1.0;
    }
    out.dimension = p + (out.dispersion_estimated ? 1 : 0);
    out.max_loglik = log_likelihood(family, lp, out.eta_hat, data);
    return out;
}

double likelihood_ratio(const FittedModel& null_fit, const FittedModel& alt_fit) {
    const double lr = 2.0 * (alt_fit.max_loglik - null_fit.max_loglik);
    if (lr < -1e-6)
        throw usage_error("negative likelihood ratio (" + std::to_string(lr) +
                          "): models are not nested or fits are inconsistent");
    return lr;
}

Eigen::MatrixXd constant_design(int n) {
    if (n <= 0) throw usage_error("need at least one observation");
    return Eigen::MatrixXd::Ones(n, 1);
}

Eigen::MatrixXd polynomial_design(const Eigen::VectorXd& x, int degree) {
    if (degree < 0) throw usage_error("polynomial degree must be nonnegative");
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd out(n, degree + 1);
    out.col(0).setOnes();
    for (int k = 1; k <= degree; ++k) out.col(k) = out.col(k - 1).cwiseProduct(x);
    return out;
}

}  // namespace lofit
