#pragma once

#include <Eigen/Dense>

#include "lofit/dataset.hpp"
#include "lofit/family.hpp"

namespace lofit {

/// Result of a maximum-likelihood fit of a canonical-link GLM.
struct FittedModel {
    Eigen::VectorXd coefficients;      ///< estimated coefficients
    Eigen::VectorXd linear_predictor;  ///< design * coefficients, one per observation
    double eta_hat = 1.0;              ///< dispersion estimate (1 when fixed / absent)
    bool dispersion_estimated = false; ///< whether eta_hat was estimated from data
    double max_loglik = 0.0;           ///< log-likelihood at the optimum
    int dimension = 0;                 ///< parameter count: coefficients (+1 if dispersion estimated)
    int iterations = 0;                ///< IRLS iterations used
};

/// Sum of log-densities of the observations at the given per-observation
/// linear predictor (equal to the canonical parameter) and dispersion eta.
double log_likelihood(const ExponentialFamily& family, const Eigen::VectorXd& linear_predictor,
                      double eta, const Dataset& data);

/// Maximum-likelihood fit of a canonical-link GLM with the given design
/// matrix (n x p).  Uses iteratively reweighted least squares (Newton with
/// step halving); the coefficient estimate does not depend on the
/// dispersion, which is profiled out afterwards.
///
/// When estimate_dispersion is true and the family has a free dispersion,
/// eta is replaced by its MLE and counts as one extra parameter in
/// `dimension`; otherwise eta_fixed is used as-is.
///
/// Throws design_error on rank-deficient designs and convergence_error if
/// IRLS does not converge within 100 iterations.
FittedModel fit_mle(const ExponentialFamily& family, const Eigen::MatrixXd& design,
                    const Dataset& data, bool estimate_dispersion = true, double eta_fixed = 1.0);

/// Likelihood-ratio statistic 2*(loglik_alt - loglik_null) for two nested
/// fits of the same data.  Throws usage_error if the value is materially
/// negative (indicating the models were not nested or fits are inconsistent).
double likelihood_ratio(const FittedModel& null_fit, const FittedModel& alt_fit);

/// n x 1 design of ones (intercept-only null model).
Eigen::MatrixXd constant_design(int n);

/// Design with columns 1, x, x^2, ..., x^degree evaluated at the given
/// covariate column.
Eigen::MatrixXd polynomial_design(const Eigen::VectorXd& x, int degree);

}  // namespace lofit
