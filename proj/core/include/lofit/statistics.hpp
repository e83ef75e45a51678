#pragma once

#include <optional>
#include <string>

#include "lofit/alternatives.hpp"
#include "lofit/orthonormal.hpp"

namespace lofit {

/// Projections of the null-fit residuals onto the orthonormal directions,
/// together with the dispersion needed to standardize them.
struct ScoreVector {
    Eigen::VectorXd alpha_hat;  ///< alpha_hat_1..alpha_hat_K
    double dispersion = 1.0;    ///< a(eta_hat) at the null fit
    int n = 0;                  ///< sample size

    int K() const { return static_cast<int>(alpha_hat.size()); }
};

/// Where a reference value (critical value or p-value) came from.
enum class ReferenceKind { asymptotic, simulated, bootstrap_p };

struct Reference {
    ReferenceKind kind = ReferenceKind::asymptotic;
    double value = 0.0;           ///< critical value, or p-value for bootstrap_p
    double alpha = 0.0;           ///< level the reference was computed for
    int K = -1;                   ///< family size key (-1 = not applicable)
    int n = -1;                   ///< sample size key (-1 = not applicable)
    std::string provenance;       ///< e.g. "closed-form" or "seed=1,reps=30000"
};

/// Outcome of applying a decision rule to one statistic.
struct TestResult {
    std::string statistic_name;
    double value = 0.0;
    Reference reference;
    double alpha = 0.0;
    bool reject = false;
    bool lindley_safe = false;  ///< whether the min(1/2, threshold) cap was applied
};

/// Posterior-style null weight over the whole family:
///   pi = 1 / (1 + sum_j n^{-(m_j-m0)/2} exp(lr_j / 2)).
/// Overflow-safe: once any term's exponent exceeds 700 the statistic is 0
/// (certain rejection regime).
double pi_bic(const FamilyFit& fit);

/// Same statistic from a raw ladder of likelihood ratios lr_j (vs the null)
/// and parameter-count excesses dims_j, for model families that are not GLM
/// fits (e.g. the time-series trend ladder).
double pi_bic_ladder(const std::vector<double>& lr, const std::vector<int>& dims, std::size_t n);

/// Variant of pi_bic on the nested ladder using stepwise likelihood-ratio
/// increments, one sqrt(n) penalty per step:
///   pi = 1 / (1 + sum_j exp((lr_j - lr_{j-1})/2 - log(n)/2)).
double pi_singleton_steps(const FamilyFit& fit);

/// Raw-ladder form of pi_singleton_steps (lr_j against the common null,
/// consecutive models differing by one parameter).
double pi_singleton_ladder(const std::vector<double>& lr, std::size_t n);

/// alpha_hat_j = (1/n) sum_i (y_i - b'(lp0_i)) vhat_j(x_i), with the
/// dispersion a(eta) taken from the null fit.
ScoreVector score_vector(const Dataset& data, const ExponentialFamily& family,
                         const FittedModel& null_fit, const OrthonormalSystem& system);

struct SnResult {
    double value = 0.0;
    bool saturated = false;  ///< some term's exponent was capped at 700
};

/// S_n = sum_j exp(n alpha_hat_j^2 / (2 a(eta))), overflow-guarded.
SnResult s_n(const ScoreVector& score);

/// R_n = max_j n alpha_hat_j^2 / a(eta).
double r_n(const ScoreVector& score);

/// Max test over a singleton family:
///   M_S = max_j lr_j - 2 log K + log log K + log pi.
/// Requires K >= 2.
double max_test_ms(const FamilyFit& fit);

/// Adaptive Neyman statistic of the null-fit residual vector: standardized
/// squared Fourier coefficients (cosine and sine terms alternating), running
/// sums maximized over the truncation point, with the double-log
/// normalization giving a standard Gumbel limit.  Requires n >= 8; the
/// residual variance MLE (mean of squares) is used for standardization.
double adaptive_neyman(const Eigen::VectorXd& residuals);

/// Applies the decision rule for the named statistic.  Small-value
/// statistics ("pi_bic", "pi_singleton") reject when value <= threshold,
/// everything else rejects when value >= threshold; bootstrap p-value
/// references reject when p <= alpha.  lindley_safe caps the pi-threshold at
/// 1/2.  Throws usage_error when the reference's level key does not match
/// alpha.
TestResult decide(const std::string& statistic_name, double value, const Reference& reference,
                  double alpha, bool lindley_safe = false);

/// Serializes a TestResult to a single-line JSON record with fields
/// {statistic, value, reference_kind, reference_value, alpha, reject,
/// seed_provenance}.
std::string to_json_record(const TestResult& result);

}  // namespace lofit
