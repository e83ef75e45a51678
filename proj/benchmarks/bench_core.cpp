// Microbenchmarks for the hot paths: variate generation, GLM fitting,
// orthonormalization, score statistics, limit-law simulation, and the
// time-series trend model.

#include <lofit/alternatives.hpp>
#include <lofit/basis.hpp>
#include <lofit/glm_fit.hpp>
#include <lofit/null_dist.hpp>
#include <lofit/orthonormal.hpp>
#include <lofit/rng.hpp>
#include <lofit/star_model.hpp>
#include <lofit/statistics.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace lofit;

Dataset make_gaussian_data(int n, std::uint64_t seed) {
    Dataset data;
    data.x.resize(n, 1);
    data.y.resize(n);
    rng::Stream stream(seed, 99, 0);
    for (int i = 0; i < n; ++i) {
        data.x(i, 0) = (i + 0.5) / n;
        data.y(i) = 1.0 + std::sqrt(0.1) * stream.normal();
    }
    return data;
}

void BM_PhiloxNormal(benchmark::State& state) {
    rng::Stream stream(1, 99, 1);
    double sink = 0.0;
    for (auto _ : state) {
        for (int i = 0; i < 1024; ++i) sink += stream.normal();
        benchmark::DoNotOptimize(sink);
    }
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_PhiloxNormal);

void BM_FitMleGaussian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto family = gaussian_family();
    const auto design = constant_design(n);
    const auto data = make_gaussian_data(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(family, design, data));
    }
}
BENCHMARK(BM_FitMleGaussian)->Arg(100)->Arg(1000)->Arg(10000);

void BM_FitMlePoisson(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto family = poisson_family();
    Dataset data = make_gaussian_data(n, 3);
    rng::Stream stream(3, 98, 0);
    for (int i = 0; i < n; ++i) data.y(i) = std::floor(3.0 * stream.uniform());
    const auto design = polynomial_design(data.x.col(0), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(family, design, data));
    }
}
BENCHMARK(BM_FitMlePoisson)->Arg(100)->Arg(1000);

void BM_Orthonormalize(benchmark::State& state) {
    const int n = 500;
    const int K = static_cast<int>(state.range(0));
    const auto basis = legendre_design(K, n);
    const auto null_design = constant_design(n);
    const Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orthonormalize(basis, null_design, weights));
    }
}
BENCHMARK(BM_Orthonormalize)->Arg(10)->Arg(50)->Arg(100);

void BM_ScoreStatistics(benchmark::State& state) {
    const int n = 2000;
    const int K = 100;
    const auto family = gaussian_family();
    const auto design = constant_design(n);
    const auto data = make_gaussian_data(n, 4);
    const auto basis = legendre_design(K, n);
    const auto system = orthonormalize(basis, design, Eigen::VectorXd::Ones(n));
    const auto null_fit = fit_mle(family, design, data);
    for (auto _ : state) {
        const auto score = score_vector(data, family, null_fit, system);
        benchmark::DoNotOptimize(s_n(score));
        benchmark::DoNotOptimize(r_n(score));
    }
}
BENCHMARK(BM_ScoreStatistics);

void BM_AdaptiveNeyman(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rng::Stream stream(5, 97, 0);
    Eigen::VectorXd residuals(n);
    for (int i = 0; i < n; ++i) residuals(i) = stream.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(adaptive_neyman(residuals));
    }
}
BENCHMARK(BM_AdaptiveNeyman)->Arg(100)->Arg(1000);

void BM_SimulateLaw(benchmark::State& state) {
    LimitLaw law;
    law.kind = LawKind::SINGLETON_EQ7;
    law.K = 10;
    law.n = 100;
    const long long reps = 10000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_law(law, reps, 1));
    }
    state.SetItemsProcessed(state.iterations() * reps);
}
BENCHMARK(BM_SimulateLaw);

void BM_StarLoglik(benchmark::State& state) {
    StarSeriesModel model;
    model.degree = 2;
    model.beta = Eigen::Vector3d(330.0, 0.01, -0.0001);
    model.rho = 0.4;
    model.sigma_z2 = 0.5;
    model.v0 = -0.3;
    model.v1 = 0.002;
    model.n = 76;
    rng::Stream stream(6, 96, 0);
    Eigen::VectorXd y = model.mean();
    for (int i = 0; i < 76; ++i) y(i) += stream.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_loglik(y, model));
    }
}
BENCHMARK(BM_StarLoglik);

void BM_SelectTrend(benchmark::State& state) {
    const int max_degree = static_cast<int>(state.range(0));
    rng::Stream stream(7, 95, 0);
    Eigen::VectorXd y(76);
    for (int i = 0; i < 76; ++i) y(i) = 330.0 + stream.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_trend(y, max_degree));
    }
}
BENCHMARK(BM_SelectTrend)->Arg(6)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
