#include "doctest.h"

#include "lofit/errors.hpp"
#include "lofit/null_dist.hpp"
#include "lofit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace lofit;

namespace {

LimitLaw make_law(LawKind kind, int K = 0, std::size_t n = 0, int m_terms = 0) {
    LimitLaw law;
    law.kind = kind;
    law.K = K;
    law.n = n;
    law.m_terms = m_terms;
    return law;
}

struct TempCacheDir {
    std::filesystem::path path;
    TempCacheDir() {
        path = std::filesystem::temp_directory_path() /
               ("lofit_cache_test_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
    }
    ~TempCacheDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("simulate_law validates its inputs") {
    CHECK_THROWS_AS(simulate_law(make_law(LawKind::GUMBEL_HALF), 999, 1), usage_error);
    CHECK_THROWS_AS(simulate_law(make_law(LawKind::SINGLETON_EQ7, 0, 100), 1000, 1), usage_error);
    CHECK_THROWS_AS(simulate_law(make_law(LawKind::SINGLETON_EQ7, 5, 0), 1000, 1), usage_error);
    CHECK_THROWS_AS(simulate_law(make_law(LawKind::ORDER_SEL_AIC, 0), 1000, 1), usage_error);
    CHECK_THROWS_AS(simulate_law(make_law(LawKind::THEOREM1_SUM, 0, 0, 0), 1000, 1), usage_error);
}

TEST_CASE("simulate_law draws are reproducible and seed-sensitive") {
    const LimitLaw law = make_law(LawKind::NESTED_EQ8, 5, 200);
    const auto a = simulate_law(law, 2000, 7);
    const auto b = simulate_law(law, 2000, 7);
    const auto c = simulate_law(law, 2000, 8);
    REQUIRE(a.size() == 2000);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("half-rate Gumbel quantiles match the closed form") {
    // CDF exp(-e^{-x/2})  =>  x_alpha = -2 log(-log(1 - alpha)).
    CHECK(gumbel_half_quantile(0.05) == doctest::Approx(5.940390498084331).epsilon(1e-12));
    CHECK(gumbel_half_quantile(0.10) == doctest::Approx(4.50073465462489).epsilon(1e-12));
    CHECK(gumbel_half_quantile(0.01) == doctest::Approx(9.200298453553147).epsilon(1e-12));
    // alpha = 1 - 1/e is the unique level with a zero critical value.
    CHECK(std::abs(gumbel_half_quantile(1.0 - std::exp(-1.0))) < 1e-12);
    CHECK_THROWS_AS(gumbel_half_quantile(0.0), domain_error);
    CHECK_THROWS_AS(gumbel_half_quantile(1.0), domain_error);
}

TEST_CASE("standard Gumbel quantiles are half the half-rate ones") {
    CHECK(neyman_asymptotic_quantile(0.05) == doctest::Approx(2.9701952490421655).epsilon(1e-12));
    CHECK(neyman_asymptotic_quantile(0.10) == doctest::Approx(2.250367327312445).epsilon(1e-12));
    CHECK(neyman_asymptotic_quantile(0.01) == doctest::Approx(4.600149226776574).epsilon(1e-12));
    for (double alpha : {0.2, 0.1, 0.05, 0.01}) {
        CHECK(neyman_asymptotic_quantile(alpha) ==
              doctest::Approx(0.5 * gumbel_half_quantile(alpha)).epsilon(1e-12));
    }
}

TEST_CASE("simulated GUMBEL_HALF draws match the closed-form CDF") {
    auto s = simulate_law(make_law(LawKind::GUMBEL_HALF), 40000, 5);
    auto ecdf_at = [&](double x) {
        return static_cast<double>(std::count_if(s.begin(), s.end(),
                                                 [&](double v) { return v <= x; })) /
               static_cast<double>(s.size());
    };
    // Binomial standard errors at 40000 draws are ~0.0011 (q=.95) and ~0.0015 (q=.90).
    CHECK(ecdf_at(gumbel_half_quantile(0.05)) == doctest::Approx(0.95).epsilon(0.006));
    CHECK(ecdf_at(gumbel_half_quantile(0.10)) == doctest::Approx(0.90).epsilon(0.008));
}

TEST_CASE("quantile_with_stderr is an order statistic with a sane spread estimate") {
    rng::Stream stream(99, rng::streams::kLawSim, 0);
    std::vector<double> u(100000);
    for (double& v : u) v = stream.uniform();
    const auto est = quantile_with_stderr(u, 0.95);
    // True quantile 0.95; MC standard error sqrt(.05*.95/1e5)/f = 6.9e-4 for U(0,1).
    CHECK(est.quantile == doctest::Approx(0.95).epsilon(0.005));
    CHECK(est.mc_stderr > 0.0002);
    CHECK(est.mc_stderr < 0.002);
    CHECK_THROWS_AS(quantile_with_stderr(u, 0.0), usage_error);
    std::vector<double> empty;
    CHECK_THROWS_AS(quantile_with_stderr(empty, 0.5), usage_error);
}

// ---------------------------------------------------------------------------
// Monte Carlo checks against externally tabulated 0.95 quantiles (30000 reps,
// pinned seed; the tolerance absorbs both the table's and our own MC error).
// ---------------------------------------------------------------------------

TEST_CASE("simulated upper-tail quantiles hit the tabulated finite-sample values") {
    constexpr std::size_t reps = 30000;
    constexpr std::uint64_t seed = 4;

    SUBCASE("full sum over a size-10 set, n = 100") {
        auto s = simulate_law(make_law(LawKind::SINGLETON_EQ7, 10, 100), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(8.724).epsilon(0.15 / 8.724));
    }
    SUBCASE("full sum over a size-20 set, n = 100") {
        auto s = simulate_law(make_law(LawKind::SINGLETON_EQ7, 20, 100), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(9.339).epsilon(0.15 / 9.339));
    }
    SUBCASE("nested cumulative sum, n = 100") {
        auto s = simulate_law(make_law(LawKind::NESTED_EQ8, 10, 100), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(5.105).epsilon(0.2 / 5.105));
    }
    SUBCASE("AIC-selected cumulative statistic, K = 10") {
        auto s = simulate_law(make_law(LawKind::ORDER_SEL_AIC, 10), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(13.521).epsilon(0.25 / 13.521));
    }
    SUBCASE("BIC-selected cumulative statistic, K = 10, n = 100") {
        auto s = simulate_law(make_law(LawKind::ORDER_SEL_BIC, 10, 100), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(5.620).epsilon(0.2 / 5.620));
    }
    SUBCASE("truncated exponential sum, one term") {
        // One-term sum is exp(V/2) with V chi-squared(1): the 0.95 quantile is
        // exp(3.841459/2) = 6.826867 exactly.
        auto s = simulate_law(make_law(LawKind::THEOREM1_SUM, 0, 0, 1), reps, seed);
        const auto q = quantile_with_stderr(s, 0.95);
        CHECK(q.quantile == doctest::Approx(6.826867).epsilon(0.15 / 6.826867));
    }
}

TEST_CASE("quantiles within one sample are monotone in the level") {
    auto s = simulate_law(make_law(LawKind::ORDER_SEL_AIC, 10), 5000, 3);
    const double q90 = quantile_with_stderr(s, 0.90).quantile;
    const double q95 = quantile_with_stderr(s, 0.95).quantile;
    const double q99 = quantile_with_stderr(s, 0.99).quantile;
    CHECK(q90 < q95);
    CHECK(q95 < q99);
}

TEST_CASE("nested-law quantiles do not depend on K beyond the first terms") {
    // Terms beyond j = 1 carry weights n^{-j/2}; at n = 100 the K = 10 and
    // K = 20 laws should agree to within Monte Carlo error.
    auto s10 = simulate_law(make_law(LawKind::NESTED_EQ8, 10, 100), 20000, 2);
    auto s20 = simulate_law(make_law(LawKind::NESTED_EQ8, 20, 100), 20000, 12);
    const auto q10 = quantile_with_stderr(s10, 0.95);
    const auto q20 = quantile_with_stderr(s20, 0.95);
    CHECK(std::abs(q10.quantile - q20.quantile) < 3.0 * (q10.mc_stderr + q20.mc_stderr));
}

TEST_CASE("K = 1 full-sum law approaches the one-term limit for large n") {
    // As n grows, X/(1 + X/sqrt(n)) converges to X = exp(V/2).
    auto s = simulate_law(make_law(LawKind::SINGLETON_EQ7, 1, 100000000), 30000, 4);
    const auto q = quantile_with_stderr(s, 0.95);
    CHECK(q.quantile == doctest::Approx(6.826867).epsilon((3.0 * q.mc_stderr + 0.001) / 6.826867));
}

TEST_CASE("max-based reference is conservative for the finite-K max statistic") {
    // The centered max of K independent chi-squared(1) variables lies below its
    // limiting half-rate Gumbel quantile with probability > 0.95 at K = 10.
    const int K = 10;
    const double center = -2.0 * std::log(double(K)) + std::log(std::log(double(K))) +
                          std::log(std::acos(-1.0));
    const double cv = gumbel_half_quantile(0.05);
    std::size_t rejections = 0;
    const std::size_t reps = 30000;
    for (std::size_t r = 0; r < reps; ++r) {
        rng::Stream stream(17, rng::streams::kLawSim, r);
        double best = -1e300;
        for (int j = 0; j < K; ++j) {
            const double z = stream.normal();
            best = std::max(best, z * z);
        }
        if (best + center >= cv) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / static_cast<double>(reps);
    CHECK(rate < 0.05);
    CHECK(rate > 0.005);
}

TEST_CASE("positive-stable scale constants match an independent quadrature") {
    // Oracle values computed with an adaptive quadrature in another language;
    // the K = 5000 pair is only trusted to ~1e-5 relative there.
    struct Row { int K; double a; double b; double rel; };
    const Row rows[] = {
        {2, 2.128934039, 2.390973696, 1e-6},
        {10, 5.840326091, 16.55151917, 1e-6},
        {100, 41.29734183, 229.2816191, 1e-6},
        {1000, 337.1913841, 2817.51658, 1e-6},
        {5000, 1518.331828, 15697.66974, 1e-5},
    };
    for (const Row& row : rows) {
        CAPTURE(row.K);
        const auto p = stable_constants(row.K);
        CHECK(p.a_K == doctest::Approx(row.a).epsilon(row.rel));
        CHECK(p.b_K == doctest::Approx(row.b).epsilon(row.rel));
    }
    CHECK_THROWS_AS(stable_constants(1), domain_error);
}

TEST_CASE("stable scale constants grow tamely") {
    double prev_a = 0.0;
    for (int K : {2, 5, 10, 50, 100, 500, 1000}) {
        const auto p = stable_constants(K);
        CHECK(p.a_K > prev_a);
        prev_a = p.a_K;
        CHECK(p.b_K / p.a_K <= 4.0 * std::log(double(K)));
        CHECK(p.b_K > 0.0);
    }
}

TEST_CASE("positive-stable quantile agrees with an external oracle") {
    TempCacheDir tmp;
    // Two independent seeds at 1e7 draws; the external oracle for the 0.95
    // quantile of the S(1,1,0) law (parameterization S1) is 14.0048.
    const double q1 = stable_quantile(0.05, 10000000, 12, tmp.path.string());
    const double q2 = stable_quantile(0.05, 10000000, 13, tmp.path.string());
    CHECK(q1 == doctest::Approx(14.0048).epsilon(0.1 / 14.0048));
    CHECK(q2 == doctest::Approx(14.0048).epsilon(0.1 / 14.0048));
    CHECK(std::abs(q1 - q2) < 0.05);
    // Re-reading from the cache must reproduce the value bit-for-bit.
    CHECK(stable_quantile(0.05, 10000000, 12, tmp.path.string()) == q1);
    CHECK(std::filesystem::exists(tmp.path / "stable_s1.csv"));
}

TEST_CASE("stable quantiles are monotone across levels for a common sample") {
    TempCacheDir tmp;
    const double q10 = stable_quantile(0.10, 100000, 3, tmp.path.string());
    const double q05 = stable_quantile(0.05, 100000, 3, tmp.path.string());
    const double q01 = stable_quantile(0.01, 100000, 3, tmp.path.string());
    CHECK(q10 < q05);
    CHECK(q05 < q01);
    CHECK(q10 == doctest::Approx(7.1287).epsilon(0.15 / 7.1287));
}

TEST_CASE("critical_value dispatches closed forms without touching the cache") {
    TempCacheDir tmp;
    const auto entry = critical_value("M_S", 10, 64, 0.05, 0, 1, tmp.path.string());
    CHECK(entry.quantile == doctest::Approx(5.940390498084331).epsilon(1e-12));
    CHECK(entry.mc_stderr == 0.0);
    CHECK(entry.reps == 0);
    CHECK(entry.provenance == std::string("closed-form"));
    CHECK(!std::filesystem::exists(tmp.path));

    const auto na = critical_value("N_A", 0, 100, 0.05, 0, 1, tmp.path.string());
    CHECK(na.quantile == doctest::Approx(2.9701952490421655).epsilon(1e-12));
    CHECK(na.reps == 0);

    CHECK_THROWS_AS(critical_value("NO_SUCH_TEST", 10, 64, 0.05, 1000, 1, tmp.path.string()),
                    usage_error);
}

TEST_CASE("critical_value simulates, caches, and re-reads law quantiles") {
    TempCacheDir tmp;
    const auto first = critical_value("B_S", 10, 100, 0.05, 2000, 9, tmp.path.string());
    CHECK(first.reps == 2000);
    CHECK(first.mc_stderr > 0.0);
    CHECK(first.provenance.find("reps=2000") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.path / "singleton_eq7.csv"));

    // Second call with identical parameters must come back unchanged (served
    // from disk rather than re-simulated).
    const auto again = critical_value("B_S", 10, 100, 0.05, 2000, 9, tmp.path.string());
    CHECK(again.quantile == first.quantile);
    CHECK(again.mc_stderr == first.mc_stderr);

    // A different alpha is a different cache row, not a collision.
    const auto other = critical_value("B_S", 10, 100, 0.10, 2000, 9, tmp.path.string());
    CHECK(other.quantile < first.quantile);

    std::ifstream in(tmp.path / "singleton_eq7.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "K,n,alpha,reps,seed,quantile,mc_stderr");
}

TEST_CASE("finite-sample smooth-test critical values exceed the asymptote") {
    TempCacheDir tmp;
    const auto entry = critical_value("N_A", 0, 100, 0.05, 2000, 1, tmp.path.string());
    CHECK(entry.quantile > neyman_asymptotic_quantile(0.05));
    CHECK(entry.quantile < 6.0);
    const auto again = critical_value("N_A", 0, 100, 0.05, 2000, 1, tmp.path.string());
    CHECK(again.quantile == entry.quantile);
    CHECK(std::filesystem::exists(tmp.path / "neyman_finite.csv"));
}

TEST_CASE("as_reference carries the entry into a test-ready reference") {
    TempCacheDir tmp;
    const auto ms = critical_value("M_S", 10, 64, 0.05, 0, 1, tmp.path.string()).as_reference();
    CHECK(ms.kind == ReferenceKind::asymptotic);
    CHECK(ms.alpha == 0.05);
    CHECK(ms.value == doctest::Approx(5.940390498084331).epsilon(1e-12));

    const auto bs = critical_value("B_S", 5, 50, 0.05, 1500, 2, tmp.path.string()).as_reference();
    CHECK(bs.kind == ReferenceKind::simulated);
    CHECK(bs.K == 5);
    CHECK(bs.n == 50);
}

TEST_CASE("cache directory resolution prefers explicit, then environment") {
    const char* saved = std::getenv("LOFIT_CACHE_DIR");
    const std::string saved_copy = saved ? saved : "";

    ::setenv("LOFIT_CACHE_DIR", "/tmp/lofit_env_cache", 1);
    CHECK(resolve_cache_dir("") == "/tmp/lofit_env_cache");
    CHECK(resolve_cache_dir("/tmp/explicit_wins") == "/tmp/explicit_wins");
    ::unsetenv("LOFIT_CACHE_DIR");
    CHECK(resolve_cache_dir("") == ".lofit_cache");

    if (saved) ::setenv("LOFIT_CACHE_DIR", saved_copy.c_str(), 1);
}

TEST_CASE("posterior-threshold helper converts critical values") {
    CHECK(pi_threshold_from_cv(8.724, 100) == doctest::Approx(1.0 - 8.724 / 10.0).epsilon(1e-12));
    CHECK(pi_threshold_from_cv(11.0, 100) == 0.0);
    CHECK_THROWS_AS(pi_threshold_from_cv(1.0, 0), usage_error);
}

TEST_CASE("theoretical local power has the three-regime form") {
    // Below the detection boundary the test has trivial power alpha.
    CHECK(theoretical_local_power(1.0, 2.0, 0.4, 0.05) == doctest::Approx(0.05).epsilon(1e-12));
    // Above it, power tends to one.
    CHECK(theoretical_local_power(1.0, 2.0, 0.6, 0.05) == doctest::Approx(1.0).epsilon(1e-12));
    // Exactly on the boundary: alpha + (1 - alpha) * Phi(gamma1 * zeta).
    CHECK(theoretical_local_power(0.0, 1.0, 1.0, 0.05) == doctest::Approx(0.525).epsilon(1e-12));
    CHECK(theoretical_local_power(1.2816, 1.0, 1.0, 0.05) ==
          doctest::Approx(0.9050081).epsilon(1e-5));
    CHECK_THROWS_AS(theoretical_local_power(1.0, 1.0, 1.0, 0.0), domain_error);
}

TEST_CASE("lindley percentile: closed form at K = 1 and monotone crossing") {
    // K = 1 has the closed form 1 / (1 + e^{q/2} / sqrt(n)) with q the upper
    // 0.05 chi-squared(1) quantile.
    CHECK(lindley_percentile(64, 1, 0.05, 0, 0) ==
          doctest::Approx(0.5395949528166435).epsilon(1e-9));
    CHECK(lindley_percentile(100, 1, 0.05, 0, 0) ==
          doctest::Approx(0.5943205929439207).epsilon(1e-9));
    CHECK(lindley_percentile(100, 1, 0.05, 0, 0) > lindley_percentile(64, 1, 0.05, 0, 0));

    // K > 1 requires simulation.
    CHECK_THROWS_AS(lindley_percentile(64, 10, 0.05, 0, 0), usage_error);
    CHECK_THROWS_AS(lindley_percentile(0, 1, 0.05, 0, 0), usage_error);
    CHECK_THROWS_AS(lindley_percentile(64, 1, 1.5, 0, 0), domain_error);

    // K = 10: the evidence threshold crosses 1/2 between n = 4900 and 6400.
    const double p49 = lindley_percentile(4900, 10, 0.05, 30000, 1);
    const double p64 = lindley_percentile(6400, 10, 0.05, 30000, 1);
    CHECK(p49 < 0.5);
    CHECK(p64 >= 0.5);
    CHECK(p49 < p64);
}

TEST_CASE("lindley law draws live in the unit interval") {
    auto s = simulate_law(make_law(LawKind::LINDLEY_EQ13, 5, 400), 2000, 6);
    for (double v : s) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}
