// lofit: command-line driver for the lack-of-fit test library.
//
// Subcommands:
//   test               run the omnibus statistics on one dataset
//   simulate-critical  simulate (and cache) one reference-law quantile
//   type1-study        null rejection-rate table over a grid of levels
//   power-study        power curves over single/nested effects m = 1..10
//   lindley            posterior-threshold curves over a sqrt(n) grid
//   star-trend         trend-degree selection for a differenced series

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lofit/alternatives.hpp"
#include "lofit/basis.hpp"
#include "lofit/bootstrap.hpp"
#include "lofit/dataset.hpp"
#include "lofit/errors.hpp"
#include "lofit/family.hpp"
#include "lofit/glm_fit.hpp"
#include "lofit/harness.hpp"
#include "lofit/null_dist.hpp"
#include "lofit/star_model.hpp"
#include "lofit/statistics.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lofit::usage_error("cannot open output file for writing: " + path);
    out << text;
    if (!out) throw lofit::usage_error("failed while writing output file: " + path);
}

void emit(const std::string& out_path, const std::string& text) {
    std::cout << text;
    if (!out_path.empty()) {
        write_output(out_path, text);
        std::cerr << "wrote " << out_path << "\n";
    }
}

/// Flag bundle shared by the config-driven studies.  Flags the user passed
/// override the corresponding keys of the (optional) config file.
struct StudyOptions {
    std::string config_path;
    int n = 0;
    int K = 0;
    long long reps = 0;
    std::vector<double> alphas;
    std::string family;
    std::string alt;
    double eta = 0.0;
    double theta = 0.0;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string cache_dir;
    long long law_reps = 0;
    std::uint64_t law_seed = 0;
};

void add_study_flags(CLI::App* cmd, StudyOptions& opt) {
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--n", opt.n, "sample size");
    cmd->add_option("--K", opt.K, "number of alternative directions");
    cmd->add_option("--reps", opt.reps, "simulation replicates");
    cmd->add_option("--alpha", opt.alphas, "levels (comma separated)")->delimiter(',');
    cmd->add_option("--family", opt.family, "gaussian | poisson | bernoulli");
    cmd->add_option("--alt", opt.alt, "null | single:m | nested:m | local:g1:g2:phi,...");
    cmd->add_option("--eta", opt.eta, "response variance");
    cmd->add_option("--theta", opt.theta, "null-model constant mean");
    cmd->add_option("--amplitude", opt.amplitude, "alternative signal scale");
    cmd->add_option("--seed", opt.seed, "data seed");
    cmd->add_option("--out", opt.out, "output CSV path (also printed to stdout)");
    cmd->add_option("--cache-dir", opt.cache_dir,
                    "critical value cache (default $LOFIT_CACHE_DIR or .lofit_cache)");
    cmd->add_option("--law-reps", opt.law_reps, "replicates behind simulated critical values");
    cmd->add_option("--law-seed", opt.law_seed, "seed behind simulated critical values");
}

lofit::ExperimentConfig build_config(const CLI::App* cmd, const StudyOptions& opt) {
    lofit::ExperimentConfig config;
    if (!opt.config_path.empty()) config = lofit::load_config(opt.config_path);
    if (cmd->count("--n")) config.n = opt.n;
    if (cmd->count("--K")) config.K = opt.K;
    if (cmd->count("--reps")) config.reps = opt.reps;
    if (cmd->count("--alpha")) config.alphas = opt.alphas;
    if (cmd->count("--family")) config.family = opt.family;
    if (cmd->count("--alt")) config.alt = lofit::parse_alt(opt.alt);
    if (cmd->count("--eta")) config.eta = opt.eta;
    if (cmd->count("--theta")) config.theta = opt.theta;
    if (cmd->count("--amplitude")) config.amplitude = opt.amplitude;
    if (cmd->count("--seed")) config.seed = opt.seed;
    if (cmd->count("--out")) config.out = opt.out;
    if (cmd->count("--cache-dir")) config.cache_dir = opt.cache_dir;
    if (cmd->count("--law-reps")) config.law_reps = opt.law_reps;
    if (cmd->count("--law-seed")) config.law_seed = opt.law_seed;
    return config;
}

// ---------------------------------------------------------------------------
// test

struct TestOptions {
    std::string input;
    std::string family = "gaussian";
    std::string basis = "cosine";
    std::string reference = "simulated";
    std::vector<std::string> statistics = {"L_a", "L_b", "B_N", "B_S", "M_S", "N_A"};
    int K = 10;
    double alpha = 0.05;
    long long law_reps = 30000;
    std::uint64_t law_seed = 4;
    long long bootstrap = 1000;
    std::uint64_t seed = 1;
    bool lindley_safe = false;
    std::string cache_dir;
    std::string out;
};

lofit::BasisSet make_basis(const TestOptions& opt, const lofit::Dataset& data) {
    if (data.d() != 1)
        throw lofit::usage_error("the test subcommand expects a single covariate column");
    if (opt.basis == "cosine") return lofit::cosine_design(opt.K, data.x.col(0));
    if (opt.basis == "legendre") {
        const int n = data.n();
        for (int i = 0; i < n; ++i)
            if (std::abs(data.x(i, 0) - (i + 0.5) / n) > 1e-9)
                throw lofit::usage_error(
                    "--basis legendre requires the equispaced midpoint design x_i = (i - 1/2)/n; "
                    "use --basis cosine for general covariates");
        return lofit::legendre_design(opt.K, n);
    }
    throw lofit::usage_error("unknown basis '" + opt.basis + "' (cosine or legendre)");
}

void run_test_command(const TestOptions& opt) {
    const lofit::Dataset data = lofit::read_dataset_csv(opt.input);
    const int n = data.n();
    const auto glm_family = lofit::family_by_name(opt.family);
    const Eigen::MatrixXd null_design = lofit::constant_design(n);
    const lofit::FittedModel null_fit = lofit::fit_mle(glm_family, null_design, data);
    const lofit::BasisSet basis = make_basis(opt, data);
    const auto singleton = lofit::build_family(lofit::FamilyKind::singleton, opt.K);
    const auto nested = lofit::build_family(lofit::FamilyKind::nested, opt.K);
    const lofit::FamilyFit singleton_fit =
        lofit::fit_family(singleton, glm_family, null_fit, null_design, basis.values, data);
    const lofit::FamilyFit nested_fit =
        lofit::fit_family(nested, glm_family, null_fit, null_design, basis.values, data);

    const auto statistic_value = [&](const std::string& name, const lofit::FittedModel& nf,
                                     const lofit::FamilyFit& sf, const lofit::FamilyFit& ff,
                                     const lofit::Dataset& d) -> double {
        const double root_n = std::sqrt(static_cast<double>(d.n()));
        if (name == "L_a")
            return lofit::select_order(ff, lofit::SelectionCriterion::aic, 0).statistic;
        if (name == "L_b")
            return lofit::select_order(ff, lofit::SelectionCriterion::bic, 1).statistic;
        if (name == "B_N") return root_n * (1.0 - lofit::pi_bic(ff));
        if (name == "B_S") return root_n * (1.0 - lofit::pi_bic(sf));
        if (name == "M_S") return lofit::max_test_ms(sf);
        if (name == "N_A") {
            Eigen::VectorXd residuals(d.n());
            for (int i = 0; i < d.n(); ++i)
                residuals(i) = d.y(i) - glm_family.b1(nf.linear_predictor(i));
            return lofit::adaptive_neyman(residuals);
        }
        if (name == "pi_bic") return lofit::pi_bic(ff);
        if (name == "pi_singleton") return lofit::pi_bic(sf);
        throw lofit::usage_error("unknown statistic '" + name +
                                 "' (L_a, L_b, B_N, B_S, M_S, N_A, pi_bic, pi_singleton)");
    };

    const auto recompute = [&](const std::string& name, const lofit::Dataset& d) -> double {
        const lofit::FittedModel nf = lofit::fit_mle(glm_family, null_design, d);
        const lofit::FamilyFit sf =
            lofit::fit_family(singleton, glm_family, nf, null_design, basis.values, d);
        const lofit::FamilyFit ff =
            lofit::fit_family(nested, glm_family, nf, null_design, basis.values, d);
        return statistic_value(name, nf, sf, ff, d);
    };

    std::string lines;
    for (const std::string& name : opt.statistics) {
        const double value = statistic_value(name, null_fit, singleton_fit, nested_fit, data);
        const bool small_value = name == "pi_bic" || name == "pi_singleton";
        lofit::Reference reference;
        if (opt.reference == "simulated" || opt.reference == "asymptotic") {
            if (opt.reference == "asymptotic") {
                if (name == "M_S") {
                    reference.value = lofit::gumbel_half_quantile(opt.alpha);
                } else if (name == "N_A") {
                    reference.value = lofit::neyman_asymptotic_quantile(opt.alpha);
                } else {
                    throw lofit::usage_error("statistic " + name +
                                             " has no closed-form reference; use --reference "
                                             "simulated or bootstrap");
                }
                reference.kind = lofit::ReferenceKind::asymptotic;
                reference.provenance = "closed-form";
                reference.alpha = opt.alpha;
                reference.n = n;
                reference.K = opt.K;
            } else {
                // the pi statistics share the critical values of their
                // sqrt(n)(1 - pi) equivalents
                const std::string cv_name = name == "pi_bic"         ? "B_N"
                                            : name == "pi_singleton" ? "B_S"
                                                                     : name;
                const auto entry = lofit::critical_value(cv_name, opt.K, n, opt.alpha,
                                                         opt.law_reps, opt.law_seed, opt.cache_dir);
                reference = entry.as_reference();
                if (small_value)
                    reference.value = lofit::pi_threshold_from_cv(reference.value, n);
            }
        } else if (opt.reference == "bootstrap") {
            if (opt.family != "gaussian")
                throw lofit::usage_error(
                    "the bootstrap reference currently supports the gaussian family only");
            lofit::BootstrapSpec spec;
            spec.B = static_cast<std::size_t>(opt.bootstrap);
            spec.seed = opt.seed;
            spec.tail = small_value ? lofit::TailDirection::lower : lofit::TailDirection::upper;
            const Eigen::VectorXd mean = null_fit.linear_predictor;
            const double sd = std::sqrt(null_fit.eta_hat);
            const Eigen::MatrixXd x = data.x;
            spec.generator = [mean, sd, x](lofit::rng::Stream& stream) {
                lofit::Dataset resampled;
                resampled.x = x;
                resampled.y.resize(mean.size());
                for (Eigen::Index i = 0; i < mean.size(); ++i)
                    resampled.y(i) = mean(i) + sd * stream.normal();
                return resampled;
            };
            spec.statistic = [&recompute, name](const lofit::Dataset& d) {
                return recompute(name, d);
            };
            const lofit::BootstrapResult boot = lofit::run_bootstrap(spec, value);
            reference.kind = lofit::ReferenceKind::bootstrap_p;
            reference.value = boot.p_value;
            reference.alpha = opt.alpha;
            reference.K = opt.K;
            reference.n = n;
            reference.provenance =
                "B=" + std::to_string(opt.bootstrap) + ",seed=" + std::to_string(opt.seed);
        } else {
            throw lofit::usage_error("unknown reference '" + opt.reference +
                                     "' (simulated, asymptotic, or bootstrap)");
        }
        const lofit::TestResult result =
            lofit::decide(name, value, reference, opt.alpha, opt.lindley_safe);
        lines += lofit::to_json_record(result) + "\n";
    }
    emit(opt.out, lines);
}

// ---------------------------------------------------------------------------
// simulate-critical

struct SimulateCriticalOptions {
    std::string law;
    int K = 10;
    long long n = 100;
    double alpha = 0.05;
    long long reps = 30000;
    std::uint64_t seed = 4;
    int m_terms = 1;
    std::string cache_dir;
    std::string out;
};

void run_simulate_critical(const SimulateCriticalOptions& opt) {
    lofit::CriticalValueEntry entry;
    const auto mapped = [&](const char* test_name) {
        return lofit::critical_value(test_name, opt.K, opt.n, opt.alpha, opt.reps, opt.seed,
                                     opt.cache_dir);
    };
    if (opt.law == "B_S" || opt.law == "singleton_eq7") {
        entry = mapped("B_S");
    } else if (opt.law == "B_N" || opt.law == "nested_eq8") {
        entry = mapped("B_N");
    } else if (opt.law == "L_a" || opt.law == "order_sel_aic") {
        entry = mapped("L_a");
    } else if (opt.law == "L_b" || opt.law == "order_sel_bic") {
        entry = mapped("L_b");
    } else if (opt.law == "M_S" || opt.law == "gumbel_half") {
        entry = mapped("M_S");
    } else if (opt.law == "N_A" || opt.law == "neyman_finite") {
        entry = mapped("N_A");
    } else if (opt.law == "stable_s1") {
        entry.law = "stable_s1";
        entry.alpha = opt.alpha;
        entry.reps = opt.reps;
        entry.seed = opt.seed;
        entry.quantile = lofit::stable_quantile(opt.alpha, opt.reps, opt.seed, opt.cache_dir);
        entry.kind = lofit::ReferenceKind::simulated;
        entry.provenance = "seed=" + std::to_string(opt.seed) +
                           ",reps=" + std::to_string(opt.reps) + " (cached)";
    } else if (opt.law == "lindley_eq13") {
        entry.law = "lindley_eq13";
        entry.K = opt.K;
        entry.n = opt.n;
        entry.alpha = opt.alpha;
        entry.reps = opt.K == 1 ? 0 : opt.reps;
        entry.seed = opt.seed;
        entry.quantile =
            lofit::lindley_percentile(opt.n, opt.K, opt.alpha, entry.reps, opt.seed);
        entry.kind = opt.K == 1 ? lofit::ReferenceKind::asymptotic
                                : lofit::ReferenceKind::simulated;
        entry.provenance = opt.K == 1 ? "closed-form" : "simulated";
    } else if (opt.law == "theorem1_sum") {
        lofit::LimitLaw law;
        law.kind = lofit::LawKind::THEOREM1_SUM;
        law.m_terms = opt.m_terms;
        auto sample = lofit::simulate_law(law, opt.reps, opt.seed);
        const auto estimate = lofit::quantile_with_stderr(sample, 1.0 - opt.alpha);
        entry.law = "theorem1_sum";
        entry.K = opt.m_terms;
        entry.alpha = opt.alpha;
        entry.reps = opt.reps;
        entry.seed = opt.seed;
        entry.quantile = estimate.quantile;
        entry.mc_stderr = estimate.mc_stderr;
        entry.kind = lofit::ReferenceKind::simulated;
        entry.provenance = "simulated (uncached)";
    } else {
        throw lofit::usage_error(
            "unknown law '" + opt.law +
            "' (test names B_S, B_N, L_a, L_b, M_S, N_A or law names singleton_eq7, nested_eq8, "
            "order_sel_aic, order_sel_bic, gumbel_half, neyman_finite, stable_s1, lindley_eq13, "
            "theorem1_sum)");
    }
    json record = {
        {"law", entry.law},           {"K", entry.K},
        {"n", entry.n},               {"alpha", entry.alpha},
        {"reps", entry.reps},         {"seed", entry.seed},
        {"quantile", entry.quantile}, {"mc_stderr", entry.mc_stderr},
        {"provenance", entry.provenance},
    };
    emit(opt.out, record.dump() + "\n");
}

// ---------------------------------------------------------------------------
// star-trend

struct StarTrendOptions {
    std::string input;
    int max_degree = 15;
    long long bootstrap = 0;
    std::uint64_t seed = 1;
    std::string out;
};

void run_star_trend(const StarTrendOptions& opt) {
    const Eigen::VectorXd y = lofit::read_star_series_csv(opt.input);
    const lofit::TrendSelection selection = lofit::select_trend(y, opt.max_degree);

    json report;
    report["n"] = selection.n;
    report["max_degree"] = opt.max_degree;
    report["selected_degree"] = selection.selected_degree;
    report["pi_bic"] = selection.pi_bic;
    report["pi_singleton"] = selection.pi_singleton;
    json table = json::array();
    for (const auto& row : selection.table) {
        table.push_back({{"degree", row.degree},
                         {"loglik", row.loglik},
                         {"lr", row.lr},
                         {"bic", row.bic},
                         {"boundary_sigma", row.boundary_sigma}});
    }
    report["table"] = table;
    const auto& best = selection.fits[static_cast<std::size_t>(selection.selected_degree)].model;
    report["selected_model"] = {{"degree", best.degree},
                                {"rho", best.rho},
                                {"sigma_z2", best.sigma_z2},
                                {"v0", best.v0},
                                {"v1", best.v1},
                                {"beta", std::vector<double>(best.beta.data(),
                                                             best.beta.data() + best.beta.size())}};

    if (opt.bootstrap > 0) {
        // No-trend resampler at the null fit's variance decay; the pi
        // statistics are scale-free, so the generator pins v0 = 0.
        const double null_v1 = selection.fits[0].model.v1;
        const std::size_t n = selection.n;
        lofit::BootstrapSpec spec;
        spec.B = static_cast<std::size_t>(opt.bootstrap);
        spec.seed = opt.seed;
        spec.tail = lofit::TailDirection::lower;
        spec.generator = [null_v1, n](lofit::rng::Stream& stream) {
            lofit::Dataset data;
            data.x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), 1.0,
                                                static_cast<double>(n));
            data.y = lofit::simulate_null_star(0.0, null_v1, n, stream);
            return data;
        };
        const int max_degree = opt.max_degree;
        spec.statistic = [max_degree](const lofit::Dataset& data) {
            return lofit::select_trend(data.y, max_degree).pi_bic;
        };
        const lofit::BootstrapResult pi_bic_boot = lofit::run_bootstrap(spec, selection.pi_bic);
        spec.statistic = [max_degree](const lofit::Dataset& data) {
            return lofit::select_trend(data.y, max_degree).pi_singleton;
        };
        const lofit::BootstrapResult pi_singleton_boot =
            lofit::run_bootstrap(spec, selection.pi_singleton);
        report["bootstrap"] = {
            {"B", opt.bootstrap},
            {"seed", opt.seed},
            {"null_v1", null_v1},
            {"p_pi_bic", pi_bic_boot.p_value},
            {"p_pi_singleton", pi_singleton_boot.p_value},
            {"failed_replicates", pi_bic_boot.failed_replicates.size() +
                                      pi_singleton_boot.failed_replicates.size()},
        };
    }
    emit(opt.out, report.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lack-of-fit tests for generalized linear and trend models"};
    app.require_subcommand(1);

    // --- test -------------------------------------------------------------
    TestOptions test_opt;
    CLI::App* test_cmd = app.add_subcommand("test", "run omnibus statistics on one dataset");
    test_cmd->add_option("--input", test_opt.input, "dataset CSV (header x1,...,xd,y)")
        ->required();
    test_cmd->add_option("--statistics", test_opt.statistics,
                         "statistics to run (default all six omnibus tests)")
        ->delimiter(',');
    test_cmd->add_option("--family", test_opt.family, "gaussian | poisson | bernoulli");
    test_cmd->add_option("--basis", test_opt.basis, "cosine | legendre");
    test_cmd->add_option("--reference", test_opt.reference,
                         "simulated | asymptotic | bootstrap");
    test_cmd->add_option("--K", test_opt.K, "number of alternative directions");
    test_cmd->add_option("--alpha", test_opt.alpha, "level");
    test_cmd->add_option("--law-reps", test_opt.law_reps, "simulated-reference replicates");
    test_cmd->add_option("--law-seed", test_opt.law_seed, "simulated-reference seed");
    test_cmd->add_option("--bootstrap", test_opt.bootstrap, "bootstrap replicates B");
    test_cmd->add_option("--seed", test_opt.seed, "bootstrap seed");
    test_cmd->add_flag("--lindley-safe", test_opt.lindley_safe,
                       "cap small-value thresholds at 1/2");
    test_cmd->add_option("--cache-dir", test_opt.cache_dir, "critical value cache");
    test_cmd->add_option("--out", test_opt.out, "write the JSON records here too");
    test_cmd->callback([&] { run_test_command(test_opt); });

    // --- simulate-critical --------------------------------------------------
    SimulateCriticalOptions sim_opt;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate-critical", "simulate and cache one reference quantile");
    sim_cmd->add_option("--law", sim_opt.law, "test or law name (e.g. B_S or singleton_eq7)")
        ->required();
    sim_cmd->add_option("--K", sim_opt.K, "number of directions");
    sim_cmd->add_option("--n", sim_opt.n, "sample-size parameter");
    sim_cmd->add_option("--alpha", sim_opt.alpha, "level");
    sim_cmd->add_option("--reps", sim_opt.reps, "simulation replicates");
    sim_cmd->add_option("--seed", sim_opt.seed, "simulation seed");
    sim_cmd->add_option("--m-terms", sim_opt.m_terms, "summands for theorem1_sum");
    sim_cmd->add_option("--cache-dir", sim_opt.cache_dir, "critical value cache");
    sim_cmd->add_option("--out", sim_opt.out, "write the JSON record here too");
    sim_cmd->callback([&] { run_simulate_critical(sim_opt); });

    // --- type1-study --------------------------------------------------------
    StudyOptions type1_opt;
    CLI::App* type1_cmd =
        app.add_subcommand("type1-study", "null rejection rates of the six omnibus tests");
    add_study_flags(type1_cmd, type1_opt);
    type1_cmd->callback([&] {
        const lofit::ExperimentConfig config = build_config(type1_cmd, type1_opt);
        const lofit::Type1Study study = lofit::run_type1_study(config);
        std::cout << lofit::type1_csv(study);
        if (!config.out.empty()) std::cerr << "wrote " << config.out << "\n";
    });

    // --- power-study ----------------------------------------------------------
    StudyOptions power_opt;
    CLI::App* power_cmd =
        app.add_subcommand("power-study", "power curves over effect orders m = 1..10");
    add_study_flags(power_cmd, power_opt);
    power_cmd->callback([&] {
        const lofit::ExperimentConfig config = build_config(power_cmd, power_opt);
        const lofit::PowerStudy study = lofit::run_power_study(config);
        std::cout << lofit::power_csv(study);
        if (!config.out.empty()) std::cerr << "wrote " << config.out << "\n";
    });

    // --- lindley ---------------------------------------------------------------
    std::vector<int> lindley_k = {1, 5, 10, 20};
    std::vector<long long> lindley_grid;
    double lindley_alpha = 0.05;
    long long lindley_reps = 30000;
    std::uint64_t lindley_seed = 1;
    std::string lindley_out;
    CLI::App* lindley_cmd =
        app.add_subcommand("lindley", "posterior-threshold percentile curves");
    lindley_cmd->add_option("--K", lindley_k, "family sizes (comma separated)")->delimiter(',');
    lindley_cmd->add_option("--n", lindley_grid,
                            "sample-size grid (default (10 i)^2, i = 1..8)")
        ->delimiter(',');
    lindley_cmd->add_option("--alpha", lindley_alpha, "level");
    lindley_cmd->add_option("--reps", lindley_reps, "replicates for K > 1");
    lindley_cmd->add_option("--seed", lindley_seed, "simulation seed");
    lindley_cmd->add_option("--out", lindley_out, "output CSV path");
    lindley_cmd->callback([&] {
        std::vector<long long> grid = lindley_grid;
        if (grid.empty())
            for (long long i = 1; i <= 8; ++i) grid.push_back(100 * i * i);
        const auto cells =
            lofit::run_lindley_study(lindley_k, grid, lindley_alpha, lindley_reps, lindley_seed);
        emit(lindley_out, lofit::lindley_csv(cells));
    });

    // --- star-trend -----------------------------------------------------------
    StarTrendOptions star_opt;
    CLI::App* star_cmd =
        app.add_subcommand("star-trend", "trend-degree selection for a differenced series");
    star_cmd->add_option("--input", star_opt.input, "series CSV (header; index,value rows)")
        ->required();
    star_cmd->add_option("--max-degree", star_opt.max_degree, "largest polynomial degree");
    star_cmd->add_option("--bootstrap", star_opt.bootstrap,
                         "bootstrap replicates B (0 = no p-values)");
    star_cmd->add_option("--seed", star_opt.seed, "bootstrap seed");
    star_cmd->add_option("--out", star_opt.out, "write the JSON report here too");
    star_cmd->callback([&] { run_star_trend(star_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const lofit::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
