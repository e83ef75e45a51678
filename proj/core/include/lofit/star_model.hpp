#pragma once

#include "lofit/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace lofit {

/// Gaussian time-series model for a differenced pseudo-period series:
/// polynomial trend in the observation index plus stationary AR(1) intrinsic
/// noise plus the first difference of independent heteroscedastic measurement
/// errors with log-linear variance.
struct StarSeriesModel {
    int degree = 0;           ///< polynomial trend degree k
    Eigen::VectorXd beta;     ///< beta_0..beta_k, raw monomial coefficients in j
    double rho = 0.0;         ///< AR(1) coefficient, |rho| < 1
    double sigma_z2 = 0.0;    ///< intrinsic innovation variance, >= 0
    double v0 = 0.0;          ///< log-variance intercept of measurement errors
    double v1 = 0.0;          ///< log-variance slope of measurement errors
    std::size_t n = 0;        ///< series length

    /// Trend mean E(Y_j) = beta_0 + beta_1 j + ... + beta_k j^k, j = 1..n.
    Eigen::VectorXd mean() const;
};

/// Dense model covariance:
///   diag:    sigma_z2/(1-rho^2) + e^{v0+v1 j} + e^{v0+v1 (j-1)}
///   lag 1:   rho sigma_z2/(1-rho^2) - e^{v0+v1 min(i,j)}
///   lag > 1: rho^{|i-j|} sigma_z2/(1-rho^2)
/// Throws domain_error when the type invariants are violated.
Eigen::MatrixXd build_covariance(const StarSeriesModel& model);

/// Multivariate normal log-density of the series under the model, computed
/// through a Cholesky factorization (with jitter escalation up to 1e-8 on the
/// diagonal). Throws numeric_error if the covariance cannot be factorized.
double gaussian_loglik(const Eigen::VectorXd& y, const StarSeriesModel& model);

struct FittedStar {
    StarSeriesModel model;
    double max_loglik = 0.0;
    /// True when the intrinsic variance was estimated at its sigma_z2 = 0
    /// boundary.
    bool boundary_sigma = false;
    /// Objective evaluations spent across all optimizer starts.
    std::size_t evaluations = 0;
};

/// Maximum-likelihood fit of the degree-k model. The trend enters through an
/// orthonormalized polynomial design internally (reported coefficients are
/// monomial); beta and the variance scale are profiled out analytically and
/// the remaining three parameters are maximized by Nelder-Mead from a fixed
/// grid of starts, including dedicated sigma_z2 = 0 boundary starts.
/// Requires n > k + 5.
FittedStar fit_star(const Eigen::VectorXd& y, int degree);

struct TrendDegreeFit {
    int degree = 0;
    double loglik = 0.0;
    double lr = 0.0;  ///< 2 * (loglik - loglik at degree 0)
    double bic = 0.0; ///< loglik - (degree/2) log n, relative to degree 0
    bool boundary_sigma = false;
};

struct TrendSelection {
    std::vector<TrendDegreeFit> table;  ///< degrees 0..max_degree
    std::vector<FittedStar> fits;       ///< the fitted models, same order
    int selected_degree = 0;            ///< BIC-optimal degree (ties -> smaller)
    double pi_bic = 1.0;
    double pi_singleton = 1.0;
    std::size_t n = 0;
};

/// Fits the full degree ladder 0..max_degree (warm-starting each degree from
/// the previous optimum, with a fresh full-grid refit whenever the nested
/// likelihood ordering is violated), selects the BIC-optimal degree, and
/// computes the posterior-style null weights over the ladder. Requires
/// n > max_degree + 6.
TrendSelection select_trend(const Eigen::VectorXd& y, int max_degree = 15);

/// Null-model simulator: eps_0..eps_n independent N(0, exp(v0 + v1 j)),
/// returns first differences Y_j = eps_j - eps_{j-1}, j = 1..n.
Eigen::VectorXd simulate_null_star(double v0, double v1, std::size_t n, rng::Stream& stream);

/// Convenience overload seeding its own stream.
Eigen::VectorXd simulate_null_star(double v0, double v1, std::size_t n, std::uint64_t seed);

/// Reads a two-column CSV (header required; columns: observation index, value)
/// into a series. Indices must be numeric and strictly increasing.
Eigen::VectorXd read_star_series_csv(const std::string& path);

/// Writes the same format back out.
void write_star_series_csv(const std::string& path, const Eigen::VectorXd& y);

}  // namespace lofit
