#include "lofit/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lofit/alternatives.hpp"
#include "lofit/basis.hpp"
#include "lofit/errors.hpp"
#include "lofit/family.hpp"
#include "lofit/glm_fit.hpp"
#include "lofit/null_dist.hpp"
#include "lofit/orthonormal.hpp"
#include "lofit/rng.hpp"
#include "lofit/statistics.hpp"

namespace lofit {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char delim) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(delim, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long out = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        const std::uint64_t out = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected a nonnegative integer, got '" +
                           value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot open output file for writing: " + path);
    out << text;
    if (!out) throw usage_error("failed while writing output file: " + path);
}

}  // namespace

AltSpec parse_alt(const std::string& text) {
    const auto parts = split(trim(text), ':');
    AltSpec alt;
    if (parts[0] == "null") {
        if (parts.size() != 1) throw config_error("alternative 'null' takes no arguments");
        return alt;
    }
    if (parts[0] == "single" || parts[0] == "nested") {
        if (parts.size() != 2)
            throw config_error("alternative '" + text + "' needs exactly one index, e.g. " +
                               parts[0] + ":3");
        alt.kind = parts[0] == "single" ? AltKind::single_effect : AltKind::nested_effect;
        alt.m = static_cast<int>(parse_integer("alt", parts[1]));
        if (alt.m < 1) throw config_error("alternative index must be >= 1, got " + parts[1]);
        return alt;
    }
    if (parts[0] == "local") {
        if (parts.size() != 4)
            throw config_error("local alternative spelled local:<gamma1>:<gamma2>:<phi1,phi2,...>");
        alt.kind = AltKind::local;
        alt.gamma1 = parse_real("alt", parts[1]);
        alt.gamma2 = parse_real("alt", parts[2]);
        for (const auto& token : split(parts[3], ',')) {
            if (trim(token).empty())
                throw config_error("local alternative has an empty phi coefficient");
            alt.phis.push_back(parse_real("alt", trim(token)));
        }
        alt.m = static_cast<int>(alt.phis.size());
        return alt;
    }
    throw config_error("unrecognized alternative '" + text +
                       "' (expected null, single:<m>, nested:<m>, or local:...)");
}

std::string to_string(const AltSpec& alt) {
    switch (alt.kind) {
        case AltKind::null_model:
            return "null";
        case AltKind::single_effect:
            return "single:" + std::to_string(alt.m);
        case AltKind::nested_effect:
            return "nested:" + std::to_string(alt.m);
        case AltKind::local: {
            std::string out = "local:" + fmt("%.17g", alt.gamma1) + ":" + fmt("%.17g", alt.gamma2) + ":";
            for (std::size_t j = 0; j < alt.phis.size(); ++j) {
                if (j) out += ",";
                out += fmt("%.17g", alt.phis[j]);
            }
            return out;
        }
    }
    throw usage_error("corrupt alternative kind");
}

void set_config_field(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "n") {
        config.n = static_cast<int>(parse_integer(key, value));
    } else if (key == "K") {
        config.K = static_cast<int>(parse_integer(key, value));
    } else if (key == "reps") {
        config.reps = parse_integer(key, value);
    } else if (key == "alpha") {
        std::vector<double> alphas;
        for (const auto& token : split(value, ',')) alphas.push_back(parse_real(key, trim(token)));
        config.alphas = std::move(alphas);
    } else if (key == "family") {
        config.family = value;
    } else if (key == "alt") {
        config.alt = parse_alt(value);
    } else if (key == "eta") {
        config.eta = parse_real(key, value);
    } else if (key == "theta") {
        config.theta = parse_real(key, value);
    } else if (key == "amplitude") {
        config.amplitude = parse_real(key, value);
    } else if (key == "seed") {
        config.seed = parse_unsigned(key, value);
    } else if (key == "out") {
        config.out = value;
    } else if (key == "cache_dir") {
        config.cache_dir = value;
    } else if (key == "law_reps") {
        config.law_reps = parse_integer(key, value);
    } else if (key == "law_seed") {
        config.law_seed = parse_unsigned(key, value);
    } else if (key == "k_scale") {
        config.k_scale = static_cast<int>(parse_integer(key, value));
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw config_error(path + ":" + std::to_string(lineno) + ": missing key before '='");
        try {
            set_config_field(base, key, trim(line.substr(eq + 1)));
        } catch (const config_error& e) {
            throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

void validate_config(const ExperimentConfig& config) {
    if (config.n < 10) throw config_error("n must be >= 10, got " + std::to_string(config.n));
    if (config.K < 1) throw config_error("K must be >= 1, got " + std::to_string(config.K));
    if (config.K >= config.n)
        throw config_error("family size K must be smaller than the sample size n");
    if (config.reps < 100)
        throw config_error("reps must be >= 100, got " + std::to_string(config.reps));
    if (!(config.eta >= 0.0) || !std::isfinite(config.eta))
        throw config_error("eta must be a finite nonnegative variance");
    if (!std::isfinite(config.theta) || !std::isfinite(config.amplitude))
        throw config_error("theta and amplitude must be finite");
    if (config.alphas.empty()) throw config_error("at least one level alpha is required");
    for (const double alpha : config.alphas)
        if (!(alpha > 0.0) || !(alpha <= 1.0))
            throw config_error("levels must lie in (0, 1], got " + fmt("%g", alpha));
    if (config.family != "gaussian" && config.family != "poisson" && config.family != "bernoulli")
        throw config_error("unknown family '" + config.family + "'");
    if (config.law_reps < 1) throw config_error("law_reps must be positive");
    if (config.k_scale < 1) throw config_error("k_scale must be >= 1");
    switch (config.alt.kind) {
        case AltKind::null_model:
            break;
        case AltKind::single_effect:
        case AltKind::nested_effect:
            if (config.alt.m < 1) throw config_error("alternative index m must be >= 1");
            if (config.alt.m > config.K)
                throw config_error("alternative index m = " + std::to_string(config.alt.m) +
                                   " exceeds the family size K = " + std::to_string(config.K));
            break;
        case AltKind::local:
            if (config.alt.phis.empty())
                throw config_error("local alternative needs at least one phi coefficient");
            if (static_cast<int>(config.alt.phis.size()) > config.K)
                throw config_error("local alternative has more phi coefficients than directions K");
            if (config.K < 2) throw config_error("local drift needs K >= 2 for the scale constants");
            for (const double phi : config.alt.phis)
                if (!std::isfinite(phi)) throw config_error("phi coefficients must be finite");
            if (!std::isfinite(config.alt.gamma1) || !std::isfinite(config.alt.gamma2))
                throw config_error("gamma coefficients must be finite");
            break;
    }
}

Dataset generate_data(const ExperimentConfig& config, long long replicate_index) {
    validate_config(config);
    if (replicate_index < 0) throw usage_error("replicate_index must be nonnegative");
    const int n = config.n;
    Eigen::VectorXd mean = Eigen::VectorXd::Constant(n, config.theta);
    switch (config.alt.kind) {
        case AltKind::null_model:
            break;
        case AltKind::single_effect:
            mean = config.amplitude * legendre_design(config.alt.m, n).values.col(config.alt.m - 1);
            break;
        case AltKind::nested_effect: {
            const BasisSet basis = legendre_design(config.alt.m, n);
            mean = (config.amplitude / std::sqrt(static_cast<double>(config.alt.m))) *
                   basis.values.rowwise().sum();
            break;
        }
        case AltKind::local: {
            const int m = static_cast<int>(config.alt.phis.size());
            const BasisSet basis = legendre_design(m, n);
            Eigen::VectorXd deviation = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < m; ++j) deviation += config.alt.phis[j] * basis.values.col(j);
            const double a_K = stable_constants(config.K).a_K;
            const double drift =
                (config.alt.gamma1 + config.alt.gamma2 * std::sqrt(2.0 * std::log(a_K))) /
                std::sqrt(static_cast<double>(n));
            mean += drift * deviation;
            break;
        }
    }
    rng::Stream stream(config.seed, rng::streams::kHarnessData,
                       static_cast<std::uint64_t>(replicate_index));
    const double sd = std::sqrt(config.eta);
    Dataset data;
    data.x.resize(n, 1);
    data.y.resize(n);
    for (int i = 0; i < n; ++i) {
        data.x(i, 0) = (i + 0.5) / n;
        data.y(i) = mean(i) + sd * stream.normal();
    }
    return data;
}

namespace {

constexpr std::array<const char*, 6> kOmnibusNames = {"L_a", "L_b", "B_N", "B_S", "M_S", "N_A"};

struct OmnibusStats {
    std::array<double, 6> value{};
    Eigen::VectorXd singleton_lr;  ///< lr of each one-direction model vs the null
    Eigen::VectorXd nested_lr;     ///< lr of each ladder model vs the null
};

/// Shared per-study state for the six-test battery: both alternative
/// families, the basis, and the null design, built once per study.
class OmnibusEngine {
  public:
    explicit OmnibusEngine(const ExperimentConfig& config)
        : glm_family_(family_by_name(config.family)),
          singleton_(build_family(FamilyKind::singleton, config.K)),
          nested_(build_family(FamilyKind::nested, config.K)),
          basis_(legendre_design(config.K, config.n)),
          null_design_(constant_design(config.n)),
          n_(config.n) {}

    OmnibusStats compute(const Dataset& data) const {
        OmnibusStats out;
        const FittedModel null_fit = fit_mle(glm_family_, null_design_, data);
        const FamilyFit singleton_fit =
            fit_family(singleton_, glm_family_, null_fit, null_design_, basis_.values, data);
        const FamilyFit nested_fit =
            fit_family(nested_, glm_family_, null_fit, null_design_, basis_.values, data);
        out.value[0] = select_order(nested_fit, SelectionCriterion::aic, 0).statistic;
        out.value[1] = select_order(nested_fit, SelectionCriterion::bic, 1).statistic;
        const double root_n = std::sqrt(static_cast<double>(n_));
        out.value[2] = root_n * (1.0 - pi_bic(nested_fit));
        out.value[3] = root_n * (1.0 - pi_bic(singleton_fit));
        out.value[4] = max_test_ms(singleton_fit);
        Eigen::VectorXd residuals(n_);
        for (int i = 0; i < n_; ++i)
            residuals(i) = data.y(i) - glm_family_.b1(null_fit.linear_predictor(i));
        out.value[5] = adaptive_neyman(residuals);
        out.singleton_lr = Eigen::Map<const Eigen::VectorXd>(
            singleton_fit.lr.data(), static_cast<Eigen::Index>(singleton_fit.lr.size()));
        out.nested_lr = Eigen::Map<const Eigen::VectorXd>(
            nested_fit.lr.data(), static_cast<Eigen::Index>(nested_fit.lr.size()));
        return out;
    }

  private:
    ExponentialFamily glm_family_;
    AlternativeFamily singleton_;
    AlternativeFamily nested_;
    BasisSet basis_;
    Eigen::MatrixXd null_design_;
    int n_;
};

[[noreturn]] void rethrow_tagged(const std::string& study, long long replicate,
                                 const std::exception& e) {
    throw std::runtime_error(study + " replicate " + std::to_string(replicate) + ": " + e.what());
}

}  // namespace

Type1Study run_type1_study(const ExperimentConfig& config) {
    validate_config(config);
    if (config.alt.kind != AltKind::null_model)
        throw usage_error("run_type1_study requires the null alternative spec");
    if (config.K < 2) throw config_error("the omnibus battery needs K >= 2");
    const OmnibusEngine engine(config);
    std::vector<std::array<double, 6>> stats(static_cast<std::size_t>(config.reps));
    for (long long r = 0; r < config.reps; ++r) {
        try {
            stats[static_cast<std::size_t>(r)] = engine.compute(generate_data(config, r)).value;
        } catch (const std::runtime_error& e) {
            rethrow_tagged("type I study", r, e);
        }
    }

    Type1Study study;
    study.tests.assign(kOmnibusNames.begin(), kOmnibusNames.end());
    study.alphas = config.alphas;
    study.n = config.n;
    study.K = config.K;
    study.reps = config.reps;
    study.seed = config.seed;
    study.rates.assign(study.tests.size(), std::vector<double>(study.alphas.size(), 0.0));
    study.critical_values = study.rates;
    for (std::size_t t = 0; t < study.tests.size(); ++t) {
        for (std::size_t a = 0; a < study.alphas.size(); ++a) {
            const double alpha = study.alphas[a];
            double cv = -std::numeric_limits<double>::infinity();
            if (alpha < 1.0) {
                // N_A is referred to its asymptotic point; the simulated laws
                // get the configured budget (M_S is closed-form regardless).
                const long long law_reps = study.tests[t] == "N_A" ? 0 : config.law_reps;
                cv = critical_value(study.tests[t], config.K, config.n, alpha, law_reps,
                                    config.law_seed, config.cache_dir)
                         .quantile;
            }
            long long rejections = 0;
            for (const auto& s : stats) rejections += s[t] >= cv ? 1 : 0;
            study.critical_values[t][a] = cv;
            study.rates[t][a] = static_cast<double>(rejections) / static_cast<double>(config.reps);
        }
    }
    if (!config.out.empty()) write_text_file(config.out, type1_csv(study));
    return study;
}

std::string type1_csv(const Type1Study& study) {
    std::string out = "test";
    for (const double alpha : study.alphas) out += ",alpha=" + fmt("%g", alpha);
    out += "\n";
    for (std::size_t t = 0; t < study.tests.size(); ++t) {
        out += study.tests[t];
        for (std::size_t a = 0; a < study.alphas.size(); ++a)
            out += "," + fmt("%.6f", study.rates[t][a]);
        out += "\n";
    }
    return out;
}

PowerStudy run_power_study(const ExperimentConfig& config) {
    validate_config(config);
    if (config.K < 10) throw config_error("the power sweep over m = 1..10 needs K >= 10");
    constexpr int kMaxEffect = 10;
    const double alpha = 0.05;
    const int K = config.K;
    const long long reps = config.reps;
    const OmnibusEngine engine(config);

    ExperimentConfig null_config = config;
    null_config.alt = AltSpec{};
    std::vector<std::array<double, 6>> null_omnibus(static_cast<std::size_t>(reps));
    Eigen::MatrixXd null_singleton_lr(K, reps);
    Eigen::MatrixXd null_nested_lr(K, reps);
    for (long long r = 0; r < reps; ++r) {
        try {
            const OmnibusStats s = engine.compute(generate_data(null_config, r));
            null_omnibus[static_cast<std::size_t>(r)] = s.value;
            null_singleton_lr.col(r) = s.singleton_lr;
            null_nested_lr.col(r) = s.nested_lr;
        } catch (const std::runtime_error& e) {
            rethrow_tagged("power study (null pass)", r, e);
        }
    }

    const auto empirical_cv = [&](std::vector<double> sample) {
        return quantile_with_stderr(sample, 1.0 - alpha).quantile;
    };
    std::array<double, 6> omnibus_cv{};
    for (std::size_t t = 0; t < omnibus_cv.size(); ++t) {
        std::vector<double> sample(static_cast<std::size_t>(reps));
        for (long long r = 0; r < reps; ++r) sample[static_cast<std::size_t>(r)] = null_omnibus[static_cast<std::size_t>(r)][t];
        omnibus_cv[t] = empirical_cv(std::move(sample));
    }
    const auto row_cv = [&](const Eigen::MatrixXd& lr, int m) {
        std::vector<double> sample(static_cast<std::size_t>(reps));
        for (long long r = 0; r < reps; ++r)
            sample[static_cast<std::size_t>(r)] = lr(m - 1, r);
        return empirical_cv(std::move(sample));
    };
    std::array<double, kMaxEffect> oracle_single_cv{};
    std::array<double, kMaxEffect> oracle_nested_cv{};
    for (int m = 1; m <= kMaxEffect; ++m) {
        oracle_single_cv[m - 1] = row_cv(null_singleton_lr, m);
        oracle_nested_cv[m - 1] = row_cv(null_nested_lr, m);
    }
    const double full_cv = row_cv(null_nested_lr, K);

    PowerStudy study;
    study.alpha = alpha;
    study.n = config.n;
    study.K = K;
    study.reps = reps;
    study.seed = config.seed;
    const std::array<const char*, 8> test_names = {"L_a", "L_b", "B_N", "B_S",
                                                   "M_S", "N_A", "Oracle", "Full"};
    // The drifting-amplitude convention keeps the oracle power at a fixed
    // operating point (~0.9 at the defaults) for every n.
    const double amplitude = config.amplitude / std::sqrt(static_cast<double>(config.n));
    for (const AltKind kind : {AltKind::single_effect, AltKind::nested_effect}) {
        const std::string alt_name = kind == AltKind::single_effect ? "single" : "nested";
        for (int m = 1; m <= kMaxEffect; ++m) {
            ExperimentConfig alt_config = config;
            alt_config.alt.kind = kind;
            alt_config.alt.m = m;
            alt_config.amplitude = amplitude;
            std::array<long long, 8> rejections{};
            for (long long r = 0; r < reps; ++r) {
                try {
                    const OmnibusStats s = engine.compute(generate_data(alt_config, r));
                    for (std::size_t t = 0; t < 6; ++t)
                        rejections[t] += s.value[t] >= omnibus_cv[t] ? 1 : 0;
                    const double oracle = kind == AltKind::single_effect ? s.singleton_lr(m - 1)
                                                                         : s.nested_lr(m - 1);
                    const double oracle_cv = kind == AltKind::single_effect
                                                 ? oracle_single_cv[m - 1]
                                                 : oracle_nested_cv[m - 1];
                    rejections[6] += oracle >= oracle_cv ? 1 : 0;
                    rejections[7] += s.nested_lr(K - 1) >= full_cv ? 1 : 0;
                } catch (const std::runtime_error& e) {
                    rethrow_tagged("power study (" + to_string(alt_config.alt) + ")", r, e);
                }
            }
            for (std::size_t t = 0; t < test_names.size(); ++t) {
                PowerCell cell;
                cell.alt = alt_name;
                cell.m = m;
                cell.test = test_names[t];
                cell.power = static_cast<double>(rejections[t]) / static_cast<double>(reps);
                study.cells.push_back(std::move(cell));
            }
        }
    }
    if (!config.out.empty()) write_text_file(config.out, power_csv(study));
    return study;
}

std::string power_csv(const PowerStudy& study) {
    std::string out = "alt,m,test,power\n";
    for (const auto& cell : study.cells)
        out += cell.alt + "," + std::to_string(cell.m) + "," + cell.test + "," +
               fmt("%.6f", cell.power) + "\n";
    return out;
}

double power_at(const PowerStudy& study, const std::string& alt, int m, const std::string& test) {
    for (const auto& cell : study.cells)
        if (cell.alt == alt && cell.m == m && cell.test == test) return cell.power;
    throw usage_error("no power cell for alt=" + alt + ", m=" + std::to_string(m) +
                      ", test=" + test);
}

std::vector<LindleyCell> run_lindley_study(const std::vector<int>& K_list,
                                           const std::vector<long long>& n_grid, double alpha,
                                           long long reps, std::uint64_t seed) {
    if (K_list.empty() || n_grid.empty())
        throw usage_error("the threshold study needs at least one K and one n");
    std::vector<LindleyCell> cells;
    cells.reserve(K_list.size() * n_grid.size());
    for (const int K : K_list) {
        for (const long long n : n_grid) {
            LindleyCell cell;
            cell.sqrt_n = std::sqrt(static_cast<double>(n));
            cell.K = K;
            cell.percentile = lindley_percentile(n, K, alpha, K == 1 ? 0 : reps, seed);
            cells.push_back(cell);
        }
    }
    return cells;
}

std::string lindley_csv(const std::vector<LindleyCell>& cells) {
    std::string out = "sqrt_n,K,percentile\n";
    for (const auto& cell : cells)
        out += fmt("%g", cell.sqrt_n) + "," + std::to_string(cell.K) + "," +
               fmt("%.6f", cell.percentile) + "\n";
    return out;
}

LocalPowerStudy run_local_power_study(const ExperimentConfig& config) {
    validate_config(config);
    if (config.alt.kind != AltKind::local)
        throw usage_error("run_local_power_study requires a local alternative spec");
    const double alpha = config.alphas.front();
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw config_error("the local power study needs a level strictly inside (0, 1)");
    const auto glm_family = family_by_name(config.family);
    const int n = config.n;
    const int K = config.K;
    const BasisSet basis = legendre_design(K, n);
    const Eigen::MatrixXd null_design = constant_design(n);
    // The Gaussian cumulant has constant curvature, so the orthonormal
    // system is the same whatever the fitted null; build it once.
    const bool constant_curvature = config.family == "gaussian";
    OrthonormalSystem shared_system;
    if (constant_curvature)
        shared_system = orthonormalize(basis, null_design, Eigen::VectorXd::Ones(n));

    const StableLawParams constants = stable_constants(K);
    const double score_cv = stable_quantile(alpha, config.law_reps, config.law_seed, config.cache_dir);
    const double max_cv = gumbel_half_quantile(alpha);
    const double log_k = std::log(static_cast<double>(K));
    const double max_shift = -2.0 * log_k + std::log(log_k) + std::log(M_PI);

    long long score_rejections = 0;
    long long max_rejections = 0;
    for (long long r = 0; r < config.reps; ++r) {
        try {
            const Dataset data = generate_data(config, r);
            const FittedModel null_fit = fit_mle(glm_family, null_design, data);
            OrthonormalSystem local_system;
            if (!constant_curvature) {
                Eigen::VectorXd weights(n);
                for (int i = 0; i < n; ++i)
                    weights(i) = glm_family.b2(null_fit.linear_predictor(i));
                local_system = orthonormalize(basis, null_design, weights);
            }
            const OrthonormalSystem& system = constant_curvature ? shared_system : local_system;
            const ScoreVector score = score_vector(data, glm_family, null_fit, system);
            const SnResult sn = s_n(score);
            score_rejections += (sn.value - constants.b_K) / constants.a_K >= score_cv ? 1 : 0;
            max_rejections += r_n(score) + max_shift >= max_cv ? 1 : 0;
        } catch (const std::runtime_error& e) {
            rethrow_tagged("local power study", r, e);
        }
    }

    LocalPowerStudy study;
    study.rate_sn = static_cast<double>(score_rejections) / static_cast<double>(config.reps);
    study.rate_rn = static_cast<double>(max_rejections) / static_cast<double>(config.reps);
    double max_phi = 0.0;
    for (const double phi : config.alt.phis) max_phi = std::max(max_phi, std::abs(phi));
    study.zeta = max_phi / std::sqrt(glm_family.a(config.eta));
    study.theoretical = theoretical_local_power(config.alt.gamma1, config.alt.gamma2, study.zeta, alpha);
    study.alpha = alpha;
    study.n = n;
    study.K = K;
    study.reps = config.reps;
    return study;
}

int local_k(int n, int scale) {
    if (n < 1 || scale < 1) throw usage_error("local_k needs n >= 1 and scale >= 1");
    return static_cast<int>(std::floor(std::pow(static_cast<double>(n), 0.1))) * scale;
}

}  // namespace lofit
