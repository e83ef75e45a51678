#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lofit/dataset.hpp"

namespace lofit {

/// Shape of the true regression function in a simulation study.
enum class AltKind { null_model, single_effect, nested_effect, local };

/// Parsed alternative specification.  single_effect / nested_effect use the
/// direction index m; local drift uses (gamma1, gamma2) and the deviation
/// coefficients phi_1..phi_m.
struct AltSpec {
    AltKind kind = AltKind::null_model;
    int m = 0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::vector<double> phis;
};

/// Parses "null", "single:<m>", "nested:<m>", or
/// "local:<gamma1>:<gamma2>:<phi1,phi2,...>".  Throws config_error on
/// anything else.
AltSpec parse_alt(const std::string& text);

/// Inverse of parse_alt (canonical spelling).
std::string to_string(const AltSpec& alt);

/// One simulation experiment: sample size, family size, replicate budget,
/// levels, data-generating alternative, and the critical-value budget.
struct ExperimentConfig {
    int n = 100;
    int K = 10;
    long long reps = 5000;
    std::vector<double> alphas = {0.10, 0.05, 0.01};
    std::string family = "gaussian";
    AltSpec alt;
    double eta = 0.1;        ///< response variance (Gaussian dispersion)
    double theta = 1.0;      ///< constant null-model mean
    double amplitude = 1.0;  ///< signal scale; power sweeps use amplitude / sqrt(n)
    std::uint64_t seed = 1;
    std::string out;        ///< CSV output path ("" = do not write)
    std::string cache_dir;  ///< critical-value cache ("" = $LOFIT_CACHE_DIR or .lofit_cache)
    long long law_reps = 30000;  ///< replicates behind each simulated critical value
    std::uint64_t law_seed = 4;  ///< seed behind each simulated critical value
    int k_scale = 50;            ///< K = floor(n^0.1) * k_scale in local-power runs
};

/// Sets one field by its config-file key.  Throws config_error for unknown
/// keys or unparseable values.
void set_config_field(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key = value config file ('#' starts a comment, blank lines
/// skipped) on top of `base`.  Unknown keys are errors, not warnings.  The
/// result is not validated here so callers can still override fields.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Checks the config invariants (n >= 10, reps >= 100, levels in (0,1],
/// known family, alternative consistent with K).  Throws config_error.
void validate_config(const ExperimentConfig& config);

/// Generates one replicate of the experiment's data: x_i = (i - 1/2)/n and
/// Y_i = mean(x_i) + sqrt(eta) Z_i, where the mean is the constant theta
/// under the null, the (orthonormal polynomial) direction u_m for a single
/// effect, (1/sqrt(m)) sum_{k<=m} u_k for a nested effect, and
/// theta + n^{-1/2} (gamma1 + gamma2 sqrt(2 log a_K)) sum_j phi_j u_j for
/// the local drift.  All noise comes from the counter stream
/// (seed, data-stream, replicate_index), so replicates are reproducible
/// individually and in any order.
Dataset generate_data(const ExperimentConfig& config, long long replicate_index);

/// Rejection rates of the six omnibus tests on a grid of levels.
struct Type1Study {
    std::vector<std::string> tests;                    ///< row labels
    std::vector<double> alphas;                        ///< column labels
    std::vector<std::vector<double>> rates;            ///< tests x alphas
    std::vector<std::vector<double>> critical_values;  ///< tests x alphas
    int n = 0;
    int K = 0;
    long long reps = 0;
    std::uint64_t seed = 0;
};

/// Simulates `reps` null data sets and tabulates the rejection rate of
/// L_a, L_b, B_N, B_S, M_S and N_A at each configured level.  Critical
/// values come from the cached reference laws (closed form for M_S, the
/// asymptotic Gumbel point for N_A, simulation with law_reps / law_seed for
/// the rest); a degenerate level alpha >= 1 rejects always.  Writes the CSV
/// to config.out when set.  Requires a null alternative spec; fit failures
/// are rethrown tagged with the replicate index.
Type1Study run_type1_study(const ExperimentConfig& config);

/// One row per test, one rate column per level.
std::string type1_csv(const Type1Study& study);

struct PowerCell {
    std::string alt;   ///< "single" or "nested"
    int m = 0;         ///< effect direction 1..10
    std::string test;  ///< L_a, L_b, B_N, B_S, M_S, N_A, Oracle, Full
    double power = 0.0;
};

struct PowerStudy {
    std::vector<PowerCell> cells;
    double alpha = 0.05;
    int n = 0;
    int K = 0;
    long long reps = 0;
    std::uint64_t seed = 0;
};

/// Power curves at level 0.05 over single-effect and nested-effect
/// alternatives m = 1..10 with signal amplitude / sqrt(n).  Critical points
/// for every statistic, including the oracle likelihood ratio at the true
/// model and the full-model likelihood ratio, are the empirical null
/// quantiles from the same simulated-null run, so all tests have true level
/// ~= alpha by construction.  Writes the CSV to config.out when set.
/// Requires K >= 10.
PowerStudy run_power_study(const ExperimentConfig& config);

/// Long-format rows "alt,m,test,power".
std::string power_csv(const PowerStudy& study);

/// Looks up one cell; throws usage_error if absent.
double power_at(const PowerStudy& study, const std::string& alt, int m, const std::string& test);

struct LindleyCell {
    double sqrt_n = 0.0;
    int K = 0;
    double percentile = 0.0;
};

/// Tabulates the posterior-threshold percentile over a sqrt(n) grid for each
/// family size K (closed form at K = 1, simulated with `reps` otherwise).
/// Rows are grouped by K in the given order, plot-ready.
std::vector<LindleyCell> run_lindley_study(const std::vector<int>& K_list,
                                           const std::vector<long long>& n_grid, double alpha,
                                           long long reps = 30000, std::uint64_t seed = 1);

std::string lindley_csv(const std::vector<LindleyCell>& cells);

/// Empirical power of the exponential-score test S_n (against its stable-law
/// critical point) and of the max test R_n (against its half-Gumbel critical
/// point) under the configured local alternative, at level alphas.front().
struct LocalPowerStudy {
    double rate_sn = 0.0;
    double rate_rn = 0.0;
    double zeta = 0.0;         ///< max_j |phi_j| / sqrt(a(eta))
    double theoretical = 0.0;  ///< limiting power of the score test at this drift
    double alpha = 0.0;
    int n = 0;
    int K = 0;
    long long reps = 0;
};

/// Requires a local alternative spec.  K is taken from the config; the
/// conventional choice for this regime is local_k(n, k_scale).  The score
/// test's stable-law critical point is simulated with law_reps / law_seed.
LocalPowerStudy run_local_power_study(const ExperimentConfig& config);

/// floor(n^0.1) * scale, the family-size rule used in the local-power runs.
int local_k(int n, int scale);

}  // namespace lofit
