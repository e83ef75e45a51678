#include "lofit/null_dist.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lofit/errors.hpp"
#include "lofit/rng.hpp"

namespace lofit {

namespace {

void validate_law(const LimitLaw& law) {
    switch (law.kind) {
        case LawKind::SINGLETON_EQ7:
        case LawKind::NESTED_EQ8:
        case LawKind::LINDLEY_EQ13:
            if (law.K < 1 || law.n < 2)
                throw usage_error("law needs K >= 1 and n >= 2");
            break;
        case LawKind::ORDER_SEL_AIC:
            if (law.K < 1) throw usage_error("law needs K >= 1");
            break;
        case LawKind::ORDER_SEL_BIC:
            if (law.K < 1 || law.n < 2)
                throw usage_error("law needs K >= 1 and n >= 2");
            break;
        case LawKind::THEOREM1_SUM:
            if (law.m_terms < 1) throw usage_error("law needs m_terms >= 1");
            break;
        case LawKind::GUMBEL_HALF:
        case LawKind::STABLE_S1:
            break;
    }
}

// Totally skewed 1-stable variate S1(1,1,0) by the trigonometric sampler.
double sample_stable_s1(rng::Stream& s) {
    const double half_pi = 0.5 * M_PI;
    const double theta = M_PI * (s.uniform() - 0.5);
    const double w = s.exponential();
    return (2.0 / M_PI) * ((half_pi + theta) * std::tan(theta) -
                           std::log((half_pi * w * std::cos(theta)) / (half_pi + theta)));
}

}  // namespace

std::vector<double> simulate_law(const LimitLaw& law, long long reps, std::uint64_t seed) {
    validate_law(law);
    if (reps < 1000) throw usage_error("simulate_law needs reps >= 1000");
    std::vector<double> out(static_cast<std::size_t>(reps));
    const std::uint64_t stream =
        law.kind == LawKind::STABLE_S1 ? rng::streams::kStable : rng::streams::kLawSim;
    const double sqrt_n = law.n >= 2 ? std::sqrt(static_cast<double>(law.n)) : 0.0;
    const double log_n = law.n >= 2 ? std::log(static_cast<double>(law.n)) : 0.0;

    for (long long r = 0; r < reps; ++r) {
        rng::Stream st(seed, stream, static_cast<std::uint64_t>(r));
        double value = 0.0;
        switch (law.kind) {
            case LawKind::SINGLETON_EQ7: {
                double x = 0.0;
                for (int j = 0; j < law.K; ++j) x += std::exp(0.5 * st.chisq1());
                value = x / (1.0 + x / sqrt_n);
                break;
            }
            case LawKind::NESTED_EQ8: {
                double w = 0.0, x = 0.0;
                for (int j = 1; j <= law.K; ++j) {
                    w += st.chisq1();
                    x += std::exp(0.5 * w - 0.5 * j * log_n);
                }
                value = sqrt_n * x / (1.0 + x);
                break;
            }
            case LawKind::THEOREM1_SUM: {
                for (int j = 0; j < law.m_terms; ++j) value += std::exp(0.5 * st.chisq1());
                break;
            }
            case LawKind::ORDER_SEL_AIC:
            case LawKind::ORDER_SEL_BIC: {
                const double penalty_unit =
                    law.kind == LawKind::ORDER_SEL_AIC ? 2.0 : log_n;
                double w = 0.0, best = -std::numeric_limits<double>::infinity(), w_best = 0.0;
                for (int r_idx = 1; r_idx <= law.K; ++r_idx) {
                    w += st.chisq1();
                    const double crit = w - penalty_unit * r_idx;
                    if (crit > best) {  // strict: ties resolve to the smaller order
                        best = crit;
                        w_best = w;
                    }
                }
                value = w_best;
                break;
            }
            case LawKind::GUMBEL_HALF:
                value = -2.0 * std::log(-std::log(st.uniform()));
                break;
            case LawKind::STABLE_S1:
                value = sample_stable_s1(st);
                break;
            case LawKind::LINDLEY_EQ13: {
                double x = 0.0;
                for (int j = 0; j < law.K; ++j) x += std::exp(0.5 * st.chisq1());
                value = 1.0 / (1.0 + x / sqrt_n);
                break;
            }
        }
        out[static_cast<std::size_t>(r)] = value;
    }
    return out;
}

QuantileEstimate quantile_with_stderr(std::vector<double>& sample, double q) {
    if (sample.empty()) throw usage_error("quantile of an empty sample");
    if (!(q > 0.0 && q < 1.0)) throw usage_error("quantile level must be in (0,1)");
    std::sort(sample.begin(), sample.end());
    const long long reps = static_cast<long long>(sample.size());
    const long long k = std::min<long long>(
        reps, std::max<long long>(1, static_cast<long long>(std::ceil(reps * q))));
    const long long d = static_cast<long long>(std::ceil(std::sqrt(reps * q * (1.0 - q))));
    const long long hi = std::min(reps, k + d);
    const long long lo = std::max<long long>(1, k - d);

    QuantileEstimate est;
    est.quantile = sample[static_cast<std::size_t>(k - 1)];
    est.mc_stderr = std::max(
        0.5 * (sample[static_cast<std::size_t>(hi - 1)] - sample[static_cast<std::size_t>(lo - 1)]),
        1e-12);
    return est;
}

StableLawParams stable_constants(int K) {
    if (K < 2) throw domain_error("stable_constants needs K >= 2 (log K must be positive)");
    const double a = 0.5 * std::sqrt(M_PI) * K / std::sqrt(std::log(static_cast<double>(K)));
    const double scale = K * a / std::sqrt(M_PI);
    using gauss30 = boost::math::quadrature::gauss<double, 30>;
    const auto f = [a](double x) { return std::sin(x / a) / (x * x * std::sqrt(std::log(x))); };

    // Head [1,2]: the substitution u = sqrt(log x) absorbs the integrable
    // inverse-square-root singularity at x = 1.
    double integral =
        2.0 * gauss30::integrate([a](double u) { return std::sin(std::exp(u * u) / a) *
                                                         std::exp(-u * u); },
                                 0.0, std::sqrt(std::log(2.0)));

    // Doubling panels out to the first half period of the sine factor.
    const double pia = M_PI * a;
    double lo = 2.0;
    while (2.0 * lo <= pia) {
        integral += gauss30::integrate(f, lo, 2.0 * lo);
        lo *= 2.0;
    }
    if (lo < pia) integral += gauss30::integrate(f, lo, pia);

    // One panel per half period; the alternating tail beyond X is bounded by
    // 2a / (X^2 sqrt(log X)), tracked in units of the final constant.
    constexpr double kTailTol = 1e-6;
    constexpr long long kMaxPanels = 4000000;
    double bound = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (long long m = 1; m <= kMaxPanels; ++m) {
        const double x0 = m * pia, x1 = (m + 1) * pia;
        integral += gauss30::integrate(f, x0, x1);
        bound = scale * 2.0 * a / (x1 * x1 * std::sqrt(std::log(x1)));
        if (bound < kTailTol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw numeric_error("stable_constants: quadrature tail bound stalled at " +
                            std::to_string(bound));
    return {a, scale * integral};
}

double gumbel_half_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");
    return -2.0 * std::log(std::log(1.0 / (1.0 - alpha)));
}

double neyman_asymptotic_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");
    return -std::log(std::log(1.0 / (1.0 - alpha)));
}

QuantileEstimate simulate_neyman_quantile(int n, double alpha, long long reps,
                                          std::uint64_t seed) {
    if (n < 8) throw usage_error("adaptive Neyman simulation needs n >= 8");
    if (reps < 1000) throw usage_error("simulate_neyman_quantile needs reps >= 1000");
    std::vector<double> stats(static_cast<std::size_t>(reps));
    Eigen::VectorXd resid(n);
    for (long long r = 0; r < reps; ++r) {
        rng::Stream st(seed, rng::streams::kNeyman, static_cast<std::uint64_t>(r));
        for (int i = 0; i < n; ++i) resid(i) = st.normal();
        stats[static_cast<std::size_t>(r)] = adaptive_neyman(resid);
    }
    return quantile_with_stderr(stats, 1.0 - alpha);
}

double lindley_percentile(long long n, int K, double alpha, long long reps, std::uint64_t seed) {
    if (n < 2 || K < 1) throw usage_error("lindley_percentile needs n >= 2 and K >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");
    if (K == 1) {
        const boost::math::chi_squared_distribution<double> chi1(1.0);
        const double q = boost::math::quantile(chi1, 1.0 - alpha);
        return 1.0 / (1.0 + std::exp(0.5 * q) / std::sqrt(static_cast<double>(n)));
    }
    if (reps <= 0)
        throw usage_error("lindley_percentile needs a simulation budget for K > 1");
    LimitLaw law;
    law.kind = LawKind::LINDLEY_EQ13;
    law.K = K;
    law.n = n;
    auto sample = simulate_law(law, reps, seed);
    return quantile_with_stderr(sample, alpha).quantile;
}

std::string to_string(LawKind kind) {
    switch (kind) {
        case LawKind::SINGLETON_EQ7: return "singleton_eq7";
        case LawKind::NESTED_EQ8: return "nested_eq8";
        case LawKind::THEOREM1_SUM: return "theorem1_sum";
        case LawKind::ORDER_SEL_AIC: return "order_sel_aic";
        case LawKind::ORDER_SEL_BIC: return "order_sel_bic";
        case LawKind::GUMBEL_HALF: return "gumbel_half";
        case LawKind::STABLE_S1: return "stable_s1";
        case LawKind::LINDLEY_EQ13: return "lindley_eq13";
    }
    throw usage_error("invalid law kind");
}

std::string resolve_cache_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("LOFIT_CACHE_DIR"); env != nullptr && *env != '\0')
        return env;
    return ".lofit_cache";
}

namespace {

struct CacheKey {
    int K;
    long long n;
    double alpha;
    long long reps;
    std::uint64_t seed;
};

std::filesystem::path cache_path(const std::string& cache_dir, const std::string& law_name) {
    return std::filesystem::path(resolve_cache_dir(cache_dir)) / (law_name + ".csv");
}

std::optional<QuantileEstimate> cache_lookup(const std::filesystem::path& file,
                                             const CacheKey& key) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) continue;
        try {
            if (std::stoi(fields[0]) == key.K && std::stoll(fields[1]) == key.n &&
                std::abs(std::stod(fields[2]) - key.alpha) < 1e-12 &&
                std::stoll(fields[3]) == key.reps && std::stoull(fields[4]) == key.seed) {
                return QuantileEstimate{std::stod(fields[5]), std::stod(fields[6])};
            }
        } catch (const std::exception&) {
            continue;  // skip malformed rows
        }
    }
    return std::nullopt;
}

void cache_store(const std::filesystem::path& file, const CacheKey& key,
                 const QuantileEstimate& est) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    const bool fresh = !std::filesystem::exists(file);
    std::ofstream out(file, std::ios::app);
    if (!out) return;  // caching is best-effort; the value is still returned
    if (fresh) out << "K,n,alpha,reps,seed,quantile,mc_stderr\n";
    out.precision(17);
    out << key.K << "," << key.n << "," << key.alpha << "," << key.reps << "," << key.seed << ","
        << est.quantile << "," << est.mc_stderr << "\n";
}

// Simulated upper quantile with read-through disk cache.
QuantileEstimate cached_law_quantile(const std::string& law_name, const LimitLaw* law, int n_param,
                                     double alpha, long long reps, std::uint64_t seed,
                                     const std::string& cache_dir, double q_level,
                                     const std::function<std::vector<double>()>& simulate) {
    const CacheKey key{law != nullptr ? law->K : n_param, law != nullptr ? law->n : 0, alpha, reps,
                       seed};
    const auto file = cache_path(cache_dir, law_name);
    if (auto hit = cache_lookup(file, key)) return *hit;
    auto sample = simulate();
    const auto est = quantile_with_stderr(sample, q_level);
    cache_store(file, key, est);
    return est;
}

}  // namespace

double stable_quantile(double alpha, long long reps, std::uint64_t seed,
                       const std::string& cache_dir) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");
    LimitLaw law;
    law.kind = LawKind::STABLE_S1;
    const auto est =
        cached_law_quantile(to_string(law.kind), &law, 0, alpha, reps, seed, cache_dir,
                            1.0 - alpha, [&] { return simulate_law(law, reps, seed); });
    return est.quantile;
}

Reference CriticalValueEntry::as_reference() const {
    Reference ref;
    ref.kind = kind;
    ref.value = quantile;
    ref.alpha = alpha;
    ref.K = K;
    ref.n = static_cast<int>(n);
    ref.provenance = provenance;
    return ref;
}

CriticalValueEntry critical_value(const std::string& test_name, int K, long long n, double alpha,
                                  long long reps, std::uint64_t seed,
                                  const std::string& cache_dir) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");

    CriticalValueEntry entry;
    entry.K = K;
    entry.n = n;
    entry.alpha = alpha;
    entry.reps = reps;
    entry.seed = seed;

    auto closed_form = [&](const std::string& law, double value) {
        entry.law = law;
        entry.quantile = value;
        entry.mc_stderr = 0.0;
        entry.reps = 0;
        entry.kind = ReferenceKind::asymptotic;
        entry.provenance = "closed-form";
        return entry;
    };

    if (test_name == "M_S") return closed_form(to_string(LawKind::GUMBEL_HALF),
                                               gumbel_half_quantile(alpha));
    if (test_name == "N_A" && reps == 0)
        return closed_form("gumbel", neyman_asymptotic_quantile(alpha));

    QuantileEstimate est;
    if (test_name == "N_A") {
        // Finite-sample reference simulated in-house at the given n; the
        // table is keyed by n in the K column (the statistic has no K).
        entry.law = "neyman_finite";
        const CacheKey key{static_cast<int>(n), 0, alpha, reps, seed};
        const auto file = cache_path(cache_dir, entry.law);
        if (auto hit = cache_lookup(file, key)) {
            est = *hit;
        } else {
            est = simulate_neyman_quantile(static_cast<int>(n), alpha, reps, seed);
            cache_store(file, key, est);
        }
    } else {
        LimitLaw law;
        if (test_name == "B_S") {
            law.kind = LawKind::SINGLETON_EQ7;
            law.K = K;
            law.n = n;
        } else if (test_name == "B_N") {
            law.kind = LawKind::NESTED_EQ8;
            law.K = K;
            law.n = n;
        } else if (test_name == "L_a") {
            law.kind = LawKind::ORDER_SEL_AIC;
            law.K = K;
        } else if (test_name == "L_b") {
            law.kind = LawKind::ORDER_SEL_BIC;
            law.K = K;
            law.n = n;
        } else {
            throw usage_error("unknown test name for critical_value: " + test_name);
        }
        entry.law = to_string(law.kind);
        est = cached_law_quantile(entry.law, &law, 0, alpha, reps, seed, cache_dir, 1.0 - alpha,
                                  [&] { return simulate_law(law, reps, seed); });
    }

    entry.quantile = est.quantile;
    entry.mc_stderr = est.mc_stderr;
    entry.kind = ReferenceKind::simulated;
    std::ostringstream prov;
    prov << "law=" << entry.law << ",reps=" << reps << ",seed=" << seed;
    entry.provenance = prov.str();
    return entry;
}

double pi_threshold_from_cv(double cv, long long n) {
    if (n < 2) throw usage_error("pi_threshold_from_cv needs n >= 2");
    return std::max(0.0, 1.0 - cv / std::sqrt(static_cast<double>(n)));
}

double theoretical_local_power(double gamma1, double gamma2, double zeta, double alpha) {
    if (!(zeta > 0.0)) throw domain_error("zeta must be positive");
    if (gamma2 < 0.0) throw domain_error("gamma2 must be nonnegative");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");
    const double edge = gamma2 * zeta;
    if (edge < 1.0 - 1e-12) return alpha;
    if (edge > 1.0 + 1e-12) return 1.0;
    const double phi = 0.5 * std::erfc(-gamma1 * zeta / std::sqrt(2.0));
    return alpha + (1.0 - alpha) * phi;
}

}  // namespace lofit
