#include "lofit/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "lofit/errors.hpp"
#include "lofit/rng.hpp"

using namespace lofit;

namespace {

FamilyFit make_fit(FamilyKind kind, const std::vector<double>& lr, int n) {
    FamilyFit fit;
    fit.family = kind == FamilyKind::custom
                     ? build_custom_family({{1, 2}})
                     : build_family(kind, static_cast<int>(lr.size()));
    fit.lr = lr;
    fit.n = n;
    fit.m0 = 1;
    return fit;
}

struct Pipeline {
    double pi = 0.0, sn = 0.0, rn = 0.0, la = 0.0, lb = 0.0, ms = 0.0, na = 0.0;
};

// Full statistic pipeline on gaussian data with a constant null model, used
// by the scale-invariance property test.
Pipeline run_pipeline(const Eigen::VectorXd& y) {
    const int n = static_cast<int>(y.size()), K = 5;
    Dataset d;
    d.y = y;
    d.x.resize(n, 1);
    for (int i = 0; i < n; ++i) d.x(i, 0) = (i + 0.5) / n;

    const auto family = gaussian_family();
    const auto null_design = constant_design(n);
    const auto null_fit = fit_mle(family, null_design, d);
    const auto basis = legendre_design(K, n);
    const auto system = orthonormalize(basis, null_design, Eigen::VectorXd::Ones(n));

    const auto nested = fit_family(build_family(FamilyKind::nested, K), family, null_fit,
                                   null_design, basis.values, d);
    const auto singles = fit_family(build_family(FamilyKind::singleton, K), family, null_fit,
                                    null_design, basis.values, d);
    const auto score = score_vector(d, family, null_fit, system);

    Pipeline out;
    out.pi = pi_bic(singles);
    out.sn = s_n(score).value;
    out.rn = r_n(score);
    out.la = select_order(nested, SelectionCriterion::aic).statistic;
    out.lb = select_order(nested, SelectionCriterion::bic).statistic;
    out.ms = max_test_ms(singles);
    Eigen::VectorXd resid = d.y.array() - d.y.mean();
    out.na = adaptive_neyman(resid);
    return out;
}

}  // namespace

TEST_CASE("pi_bic frozen single-model example") {
    // One alternative with one extra parameter, likelihood ratio 0, n = 100:
    // pi = 1 / (1 + 1/sqrt(100)) = 1/1.1.
    const auto fit = make_fit(FamilyKind::singleton, {0.0}, 100);
    CHECK(pi_bic(fit) == doctest::Approx(1.0 / 1.1).epsilon(1e-12));
}

TEST_CASE("pi_bic is monotone decreasing in the likelihood ratio") {
    CHECK(pi_bic(make_fit(FamilyKind::singleton, {2.0}, 100)) >
          pi_bic(make_fit(FamilyKind::singleton, {4.0}, 100)));
}

TEST_CASE("pi_bic matches a direct formula evaluation") {
    const std::vector<double> lr = {1.3, 4.1, 2.9};
    const int n = 20;
    const auto fit = make_fit(FamilyKind::nested, lr, n);
    double sum = 0.0;
    for (int j = 1; j <= 3; ++j)
        sum += std::pow(double(n), -0.5 * j) * std::exp(0.5 * lr[j - 1]);
    CHECK(pi_bic(fit) == doctest::Approx(1.0 / (1.0 + sum)).epsilon(1e-12));
    CHECK(pi_bic(fit) > 0.0);
    CHECK(pi_bic(fit) <= 1.0);
}

TEST_CASE("pi_bic saturates to exactly zero in the overflow regime") {
    const auto fit = make_fit(FamilyKind::singleton, {3000.0}, 100);
    CHECK(pi_bic(fit) == 0.0);
}

TEST_CASE("pi_singleton_steps closed form at zero likelihood ratios") {
    const auto fit = make_fit(FamilyKind::nested, std::vector<double>(15, 0.0), 76);
    // 1 / (1 + 15/sqrt(76)).
    CHECK(pi_singleton_steps(fit) ==
          doctest::Approx(1.0 / (1.0 + 15.0 / std::sqrt(76.0))).epsilon(1e-12));
    CHECK(pi_singleton_steps(fit) == doctest::Approx(0.3675634).epsilon(1e-6));
}

TEST_CASE("pi_singleton_steps equals pi_bic for a single alternative") {
    const auto nested1 = make_fit(FamilyKind::nested, {2.7}, 64);
    CHECK(pi_singleton_steps(nested1) == doctest::Approx(pi_bic(nested1)).epsilon(1e-12));
}

TEST_CASE("pi_singleton_steps matches term-by-term recomputation") {
    const std::vector<double> lr = {0.4, 3.3, 3.9, 8.0};
    const int n = 50;
    const auto fit = make_fit(FamilyKind::nested, lr, n);
    double sum = 0.0, prev = 0.0;
    for (double l : lr) {
        sum += std::exp(0.5 * (l - prev) - 0.5 * std::log(double(n)));
        prev = l;
    }
    CHECK(pi_singleton_steps(fit) == doctest::Approx(1.0 / (1.0 + sum)).epsilon(1e-12));
    CHECK_THROWS_AS(pi_singleton_steps(make_fit(FamilyKind::custom, {1.0}, 50)), usage_error);
}

TEST_CASE("score_vector frozen hand example") {
    const int n = 4;
    Dataset d;
    d.x = Eigen::MatrixXd::Zero(n, 1);
    d.y.resize(n);
    d.y << 1.0, -1.0, 1.0, -1.0;  // residuals, since the null mean is zero

    FittedModel null_fit;
    null_fit.coefficients = Eigen::VectorXd::Zero(1);
    null_fit.linear_predictor = Eigen::VectorXd::Zero(n);
    null_fit.eta_hat = 1.0;
    null_fit.dimension = 1;

    OrthonormalSystem sys;
    sys.values.resize(n, 1);
    sys.values << -1.34164, -0.44721, 0.44721, 1.34164;
    sys.weights = Eigen::VectorXd::Ones(n);

    const auto score = score_vector(d, gaussian_family(), null_fit, sys);
    CHECK(score.alpha_hat(0) == doctest::Approx(-0.447215).epsilon(1e-5));
    CHECK(score.dispersion == doctest::Approx(1.0));

    // Zero residuals give a zero score vector.
    d.y.setZero();
    const auto zero_score = score_vector(d, gaussian_family(), null_fit, sys);
    CHECK(zero_score.alpha_hat(0) == doctest::Approx(0.0));
}

TEST_CASE("s_n and r_n basic identities") {
    ScoreVector score;
    score.alpha_hat = Eigen::VectorXd::Zero(10);
    score.dispersion = 1.0;
    score.n = 100;
    CHECK(s_n(score).value == doctest::Approx(10.0).epsilon(1e-14));
    CHECK_FALSE(s_n(score).saturated);
    CHECK(r_n(score) == 0.0);

    // Single direction: S_n = exp(R_n / 2) exactly.
    ScoreVector one;
    one.alpha_hat = Eigen::VectorXd::Constant(1, 0.13);
    one.dispersion = 0.7;
    one.n = 40;
    CHECK(s_n(one).value == doctest::Approx(std::exp(0.5 * r_n(one))).epsilon(1e-13));

    // Frozen arithmetic: alpha_2 = 0.1, n = 100, a = 0.1.
    ScoreVector two;
    two.alpha_hat = Eigen::VectorXd::Zero(3);
    two.alpha_hat(1) = 0.1;
    two.dispersion = 0.1;
    two.n = 100;
    CHECK(r_n(two) == doctest::Approx(10.0).epsilon(1e-12));

    // Permutation invariance of the max.
    ScoreVector perm = two;
    std::swap(perm.alpha_hat(0), perm.alpha_hat(1));
    CHECK(r_n(perm) == doctest::Approx(r_n(two)));
}

TEST_CASE("s_n matches an extended-precision recomputation") {
    rng::Stream s(311, 0, 0);
    ScoreVector score;
    score.alpha_hat.resize(8);
    for (int j = 0; j < 8; ++j) score.alpha_hat(j) = 0.2 * s.normal();
    score.dispersion = 0.9;
    score.n = 64;
    long double sum = 0.0L;
    for (int j = 0; j < 8; ++j) {
        const long double e =
            score.n * static_cast<long double>(score.alpha_hat(j)) * score.alpha_hat(j) /
            (2.0L * score.dispersion);
        sum += std::exp(e);
    }
    CHECK(s_n(score).value == doctest::Approx(static_cast<double>(sum)).epsilon(1e-10));
}

TEST_CASE("s_n saturation is flagged, not fatal") {
    ScoreVector score;
    score.alpha_hat = Eigen::VectorXd::Constant(2, 10.0);
    score.dispersion = 1.0;
    score.n = 100;
    const auto r = s_n(score);
    CHECK(r.saturated);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("max test closed-form evaluations") {
    const auto zeros = make_fit(FamilyKind::singleton, std::vector<double>(10, 0.0), 100);
    // -2 log 10 + log log 10 + log pi.
    CHECK(max_test_ms(zeros) == doctest::Approx(-2.6264079).epsilon(1e-6));

    auto fit20 = make_fit(FamilyKind::singleton, std::vector<double>(20, 0.0), 100);
    fit20.lr[7] = 12.0;
    // 12 - 2 log 20 + log log 20 + log pi.
    const double expected = 12.0 - 2.0 * std::log(20.0) + std::log(std::log(20.0)) + std::log(M_PI);
    CHECK(max_test_ms(fit20) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(8.250455).epsilon(1e-6));

    // Translation equivariance.
    auto shifted = fit20;
    for (double& v : shifted.lr) v += 2.5;
    CHECK(max_test_ms(shifted) == doctest::Approx(max_test_ms(fit20) + 2.5).epsilon(1e-12));

    CHECK_THROWS_AS(max_test_ms(make_fit(FamilyKind::singleton, {1.0}, 100)), domain_error);
}

TEST_CASE("adaptive_neyman on a pure first-frequency cosine signal") {
    const int n = 32;
    Eigen::VectorXd resid(n);
    for (int i = 0; i < n; ++i) resid(i) = 2.0 * std::cos(2.0 * M_PI * i / n);

    // The signal is confined to the first standardized coefficient:
    // z_1^2 = n, all later coefficients vanish, so the running sum is
    // maximized at the first truncation point with value (n-1)/sqrt(2).
    const int m_max = (n - 1) / 2;
    const double ll = std::log(std::log(double(m_max)));
    const double expected = std::sqrt(2.0 * ll) * (n - 1.0) / std::sqrt(2.0) -
                            (2.0 * ll + 0.5 * std::log(ll) - 0.5 * std::log(4.0 * M_PI));
    CHECK(adaptive_neyman(resid) == doctest::Approx(expected).epsilon(1e-10));

    // Sign flips do not change squared coefficients.
    CHECK(adaptive_neyman(-resid) == doctest::Approx(adaptive_neyman(resid)).epsilon(1e-12));

    CHECK_THROWS_AS(adaptive_neyman(Eigen::VectorXd::Ones(4)), usage_error);
    CHECK_THROWS_AS(adaptive_neyman(Eigen::VectorXd::Zero(16)), domain_error);
}

TEST_CASE("adaptive_neyman self-consistent monte carlo calibration") {
    // Simulate the statistic under i.i.d. standard normal residuals, take
    // the empirical 95% point from one batch, and check the rejection rate
    // of an independent batch against it.
    const int n = 100, reps = 5000;
    std::vector<double> stats(reps);
    for (int r = 0; r < reps; ++r) {
        rng::Stream s(909, 1, r);
        Eigen::VectorXd resid(n);
        for (int i = 0; i < n; ++i) resid(i) = s.normal();
        stats[r] = adaptive_neyman(resid);
    }
    std::vector<double> sorted = stats;
    std::sort(sorted.begin(), sorted.end());
    const double cv = sorted[static_cast<std::size_t>(std::ceil(0.95 * reps)) - 1];

    int rejections = 0;
    for (int r = 0; r < reps; ++r) {
        rng::Stream s(909, 2, r);
        Eigen::VectorXd resid(n);
        for (int i = 0; i < n; ++i) resid(i) = s.normal();
        if (adaptive_neyman(resid) >= cv) ++rejections;
    }
    CHECK(std::abs(double(rejections) / reps - 0.05) < 0.01);
}

TEST_CASE("decide applies the right comparison directions") {
    Reference ref;
    ref.kind = ReferenceKind::simulated;
    ref.value = 0.6;
    ref.alpha = 0.05;
    const auto r1 = decide("pi_bic", 0.3, ref, 0.05, false);
    CHECK(r1.reject);

    ref.value = 0.7;
    const auto r2 = decide("pi_bic", 0.6, ref, 0.05, true);
    CHECK_FALSE(r2.reject);  // capped threshold min(1/2, 0.7)
    CHECK(r2.lindley_safe);

    Reference gumbel;
    gumbel.kind = ReferenceKind::asymptotic;
    gumbel.value = 5.9407;
    gumbel.alpha = 0.05;
    CHECK(decide("max_test", 6.0, gumbel, 0.05).reject);
    CHECK_FALSE(decide("max_test", 5.0, gumbel, 0.05).reject);

    Reference boot;
    boot.kind = ReferenceKind::bootstrap_p;
    boot.value = 0.031;
    boot.alpha = 0.05;
    CHECK(decide("pi_singleton", 0.2, boot, 0.05).reject);
    boot.value = 0.2;
    CHECK_FALSE(decide("pi_singleton", 0.2, boot, 0.05).reject);

    Reference stale;
    stale.kind = ReferenceKind::simulated;
    stale.value = 1.0;
    stale.alpha = 0.10;
    CHECK_THROWS_AS(decide("s_n", 2.0, stale, 0.05), usage_error);
}

TEST_CASE("test results serialize to parseable JSON records") {
    Reference ref;
    ref.kind = ReferenceKind::simulated;
    ref.value = 8.724;
    ref.alpha = 0.05;
    ref.provenance = "seed=1,reps=30000";
    const auto result = decide("s_n", 11.2, ref, 0.05);
    const auto parsed = nlohmann::json::parse(to_json_record(result));
    CHECK(parsed["statistic"] == "s_n");
    CHECK(parsed["value"] == doctest::Approx(11.2));
    CHECK(parsed["reference_kind"] == "simulated");
    CHECK(parsed["reference_value"] == doctest::Approx(8.724));
    CHECK(parsed["alpha"] == doctest::Approx(0.05));
    CHECK(parsed["reject"] == true);
    CHECK(parsed["seed_provenance"] == "seed=1,reps=30000");
}

TEST_CASE("likelihood increments match squared scores on exact gaussian fits") {
    // Known-variance gaussian with orthonormal directions: the step
    // improvements of the nested ladder equal the standardized squared
    // score projections.
    const int n = 60, K = 4;
    rng::Stream s(515, 0, 0);
    Dataset d;
    d.x.resize(n, 1);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
        d.x(i, 0) = (i + 0.5) / n;
        d.y(i) = 0.4 * std::cos(M_PI * d.x(i, 0)) + s.normal();
    }
    const auto family = gaussian_family();
    const auto null_design = constant_design(n);
    const auto null_fit = fit_mle(family, null_design, d, false, 1.0);
    const auto basis = legendre_design(K, n);
    const auto system = orthonormalize(basis, null_design, Eigen::VectorXd::Ones(n));
    const auto ff = fit_family(build_family(FamilyKind::nested, K), family, null_fit, null_design,
                               basis.values, d);
    const auto score = score_vector(d, family, null_fit, system);

    double prev = 0.0;
    for (int j = 0; j < K; ++j) {
        const double increment = ff.lr[j] - prev;
        const double squared_score = n * score.alpha_hat(j) * score.alpha_hat(j);
        CHECK(increment == doctest::Approx(squared_score).epsilon(1e-6));
        prev = ff.lr[j];
    }

    // Identity: sqrt(n)(1 - pi) = S/(1 + S/sqrt(n)) with S the singleton sum.
    const auto singles = fit_family(build_family(FamilyKind::singleton, K), family, null_fit,
                                    null_design, basis.values, d);
    const double pi = pi_bic(singles);
    double sum = 0.0;
    for (double l : singles.lr) sum += std::exp(0.5 * l);
    CHECK(std::sqrt(double(n)) * (1.0 - pi) ==
          doctest::Approx(sum / (1.0 + sum / std::sqrt(double(n)))).epsilon(1e-10));
}

TEST_CASE("all statistics are scale invariant for gaussian data") {
    rng::Stream s(616, 0, 0);
    Eigen::VectorXd y(50);
    for (int i = 0; i < 50; ++i) y(i) = 0.5 + 0.3 * std::sin(6.0 * M_PI * (i + 0.5) / 50.0) + s.normal();

    const auto base = run_pipeline(y);
    const auto scaled = run_pipeline(3.7 * y);
    CHECK(scaled.pi == doctest::Approx(base.pi).epsilon(1e-8));
    CHECK(scaled.sn == doctest::Approx(base.sn).epsilon(1e-8));
    CHECK(scaled.rn == doctest::Approx(base.rn).epsilon(1e-8));
    CHECK(scaled.la == doctest::Approx(base.la).epsilon(1e-8));
    CHECK(scaled.lb == doctest::Approx(base.lb).epsilon(1e-8));
    CHECK(scaled.ms == doctest::Approx(base.ms).epsilon(1e-8));
    CHECK(scaled.na == doctest::Approx(base.na).epsilon(1e-8));
}
