#pragma once

#include <functional>
#include <string>

namespace lofit {

/// One-parameter exponential family in canonical form with optional
/// dispersion.  Log-density of a single observation:
///
///     log f(y; theta, eta) = (y*theta - b(theta)) / a(eta) + c(y, eta)
///
/// where theta is the canonical parameter (equal to the linear predictor
/// under the canonical link used throughout this library), a(eta) the
/// dispersion function and c the base measure.
struct ExponentialFamily {
    std::string name;

    /// Cumulant function b(theta) and its first three derivatives.
    /// b1 is the mean function, b2 the variance function (times a(eta)).
    std::function<double(double)> b;
    std::function<double(double)> b1;
    std::function<double(double)> b2;
    std::function<double(double)> b3;

    /// Dispersion function a(eta).  Identity for Gaussian, constant 1 for
    /// Poisson and Bernoulli.
    std::function<double(double)> a;

    /// Base measure c(y, eta).
    std::function<double(double, double)> c;

    /// Validates a response value, throwing domain_error on violation
    /// (e.g. non-integer counts for Poisson, values outside {0,1} for
    /// Bernoulli).
    std::function<void(double)> validate_response;

    /// Whether eta is a free parameter to be estimated (true only for
    /// Gaussian here).  When false, a(eta) must be evaluated at eta = 1.
    bool has_dispersion = false;
};

/// Gaussian family with identity link: b(t) = t^2/2, a(eta) = eta
/// (the variance), c(y, eta) = -y^2/(2 eta) - log(2 pi eta)/2.
ExponentialFamily gaussian_family();

/// Poisson family with log link: b(t) = exp(t), a = 1,
/// c(y) = -log(y!).
ExponentialFamily poisson_family();

/// Bernoulli family with logit link: b(t) = log(1 + exp(t)), a = 1, c = 0.
ExponentialFamily bernoulli_family();

/// Lookup by name ("gaussian", "poisson", "bernoulli").
/// Throws usage_error for unknown names.
ExponentialFamily family_by_name(const std::string& name);

}  // namespace lofit
