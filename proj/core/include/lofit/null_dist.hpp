#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lofit/statistics.hpp"

namespace lofit {

/// The limiting (or finite-sample corrected) null laws the critical values
/// are drawn from.  All are functionals of i.i.d. chi-square(1) variables
/// V_1, V_2, ... with partial sums W_r = V_1 + ... + V_r, except GUMBEL_HALF
/// (closed form) and STABLE_S1 (totally skewed stable law).
enum class LawKind {
    SINGLETON_EQ7,   ///< (sum_j exp(V_j/2)) / (1 + n^{-1/2} sum_j exp(V_j/2))
    NESTED_EQ8,      ///< sqrt(n) X / (1 + X), X = sum_j n^{-j/2} exp(W_j/2)
    THEOREM1_SUM,    ///< sum_{j=1..m} exp(V_j/2)
    ORDER_SEL_AIC,   ///< W_r at r maximizing W_r - 2r over r = 1..K
    ORDER_SEL_BIC,   ///< W_r at r maximizing W_r - r log n over r = 1..K
    GUMBEL_HALF,     ///< CDF exp(-exp(-x/2))
    STABLE_S1,       ///< totally skewed 1-stable law S1(1,1,0)
    LINDLEY_EQ13,    ///< 1 / (1 + n^{-1/2} sum_k exp(V_k/2))
};

struct LimitLaw {
    LawKind kind = LawKind::SINGLETON_EQ7;
    int K = 0;           ///< number of directions (kinds that use it)
    long long n = 0;     ///< sample-size parameter (kinds that use it)
    int m_terms = 0;     ///< number of summands for THEOREM1_SUM
};

/// Draws `reps` independent replicates of the law's functional.  Replicate r
/// derives all its variates from the counter stream (seed, law-stream, r),
/// so the sample is identical however replicates are scheduled.
std::vector<double> simulate_law(const LimitLaw& law, long long reps, std::uint64_t seed);

struct QuantileEstimate {
    double quantile = 0.0;
    double mc_stderr = 0.0;
};

/// Order-statistic quantile x_(ceil(reps*q)) of the sample (sorted in
/// place), with a Monte Carlo standard error from the spacing of order
/// statistics +-sqrt(reps q(1-q)) around it.
QuantileEstimate quantile_with_stderr(std::vector<double>& sample, double q);

/// Scale and centering constants of the stable limit for the exponential
/// score sum: a_K = (sqrt(pi)/2) K / sqrt(log K) and
/// b_K = (K a_K / sqrt(pi)) * integral_1^inf sin(x/a_K) / (x^2 sqrt(log x)) dx,
/// evaluated by Gauss-Legendre panels with an analytic tail bound.
/// Requires K >= 2.
struct StableLawParams {
    double a_K = 0.0;
    double b_K = 0.0;
};
StableLawParams stable_constants(int K);

/// Upper (1-alpha) quantile of S1(1,1,0), simulated once per
/// (alpha, reps, seed) with the trigonometric stable sampler and cached on
/// disk alongside the other critical value tables.
double stable_quantile(double alpha, long long reps = 10000000,
                       std::uint64_t seed = 20260101, const std::string& cache_dir = "");

/// Closed-form upper quantile of the half-Gumbel law exp(-exp(-x/2)):
/// x_alpha = -2 log log(1/(1-alpha)).
double gumbel_half_quantile(double alpha);

/// Closed-form upper quantile of the standard Gumbel law exp(-exp(-x)):
/// -log log(1/(1-alpha)).  The asymptotic reference for the adaptive Neyman
/// statistic.
double neyman_asymptotic_quantile(double alpha);

/// Finite-sample upper quantile of the adaptive Neyman statistic under
/// i.i.d. standard normal residuals of length n, by direct simulation.
QuantileEstimate simulate_neyman_quantile(int n, double alpha, long long reps,
                                          std::uint64_t seed);

/// Rejection threshold p_{n,K,alpha} for the posterior-weight test: the
/// lower alpha-quantile of the LINDLEY_EQ13 law.  K = 1 uses the closed form
/// 1/(1 + n^{-1/2} exp(q_{chi2(1)}(1-alpha)/2)) (reps may be 0); K > 1
/// simulates with the given budget.
double lindley_percentile(long long n, int K, double alpha, long long reps = 0,
                          std::uint64_t seed = 1);

/// One row of a critical value table, ready to feed decide().
struct CriticalValueEntry {
    std::string law;        ///< law kind name (or "neyman_finite")
    int K = 0;
    long long n = 0;
    double alpha = 0.0;
    long long reps = 0;     ///< 0 for closed-form entries
    std::uint64_t seed = 0;
    double quantile = 0.0;
    double mc_stderr = 0.0;
    ReferenceKind kind = ReferenceKind::simulated;
    std::string provenance;

    Reference as_reference() const;
};

/// Critical value for a named test statistic:
///   B_S -> SINGLETON_EQ7, B_N -> NESTED_EQ8, L_a -> ORDER_SEL_AIC,
///   L_b -> ORDER_SEL_BIC, M_S -> half-Gumbel closed form,
///   N_A -> in-house finite-sample simulation (asymptotic Gumbel point when
///   reps = 0).
/// Simulated entries are cached as one CSV per law kind, keyed by
/// (K, n, alpha, reps, seed), under cache_dir (empty: $LOFIT_CACHE_DIR,
/// falling back to ".lofit_cache").  Throws usage_error for unknown names.
CriticalValueEntry critical_value(const std::string& test_name, int K, long long n, double alpha,
                                  long long reps, std::uint64_t seed,
                                  const std::string& cache_dir = "");

/// Maps a critical value on the sqrt(n)(1 - pi) scale back to the
/// pi-threshold of the equivalent small-value test: 1 - cv/sqrt(n), floored
/// at 0.
double pi_threshold_from_cv(double cv, long long n);

/// Limiting local power of the stable-threshold exponential-score test
/// along deviations scaled by (gamma1 + gamma2 sqrt(2 log a_K)) / sqrt(n):
/// alpha below the detection edge (gamma2 < 1/zeta), 1 above it, and
/// alpha + (1 - alpha) Phi(gamma1 zeta) exactly on it.
double theoretical_local_power(double gamma1, double gamma2, double zeta, double alpha);

/// Directory used for the critical value cache: first choice the explicit
/// argument, then $LOFIT_CACHE_DIR, then ".lofit_cache".
std::string resolve_cache_dir(const std::string& explicit_dir);

std::string to_string(LawKind kind);

}  // namespace lofit
