#include "lofit/statistics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lofit/errors.hpp"

namespace lofit {

namespace {

constexpr double kExpCap = 700.0;  // exp(700) is near the double overflow edge

double pi_from_exponents(const std::vector<double>& exponents) {
    double total = 0.0;
    for (double e : exponents) {
        if (e >= kExpCap) return 0.0;  // saturation: rejection-certain regime
        total += std::exp(e);
    }
    return 1.0 / (1.0 + total);
}

}  // namespace

double pi_bic_ladder(const std::vector<double>& lr, const std::vector<int>& dims, std::size_t n) {
    if (n < 2) throw usage_error("pi_bic needs n >= 2");
    if (lr.size() != dims.size()) throw usage_error("pi_bic: lr/dims size mismatch");
    const double log_n = std::log(static_cast<double>(n));
    std::vector<double> exponents(lr.size());
    for (std::size_t j = 0; j < lr.size(); ++j) {
        if (!std::isfinite(lr[j])) throw numeric_error("pi_bic: non-finite likelihood ratio");
        exponents[j] = 0.5 * lr[j] - 0.5 * dims[j] * log_n;
    }
    return pi_from_exponents(exponents);
}

double pi_singleton_ladder(const std::vector<double>& lr, std::size_t n) {
    if (n < 2) throw usage_error("pi_singleton needs n >= 2");
    const double log_n = std::log(static_cast<double>(n));
    std::vector<double> exponents(lr.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < lr.size(); ++j) {
        if (!std::isfinite(lr[j]))
            throw numeric_error("pi_singleton_steps: non-finite likelihood ratio");
        exponents[j] = 0.5 * (lr[j] - prev) - 0.5 * log_n;
        prev = lr[j];
    }
    return pi_from_exponents(exponents);
}

double pi_bic(const FamilyFit& fit) {
    std::vector<int> dims(fit.K());
    for (int j = 0; j < fit.K(); ++j) dims[j] = fit.family.dims_over_null(j);
    return pi_bic_ladder(fit.lr, dims, fit.n);
}

double pi_singleton_steps(const FamilyFit& fit) {
    if (fit.family.kind != FamilyKind::nested)
        throw usage_error("pi_singleton_steps requires a nested family");
    return pi_singleton_ladder(fit.lr, fit.n);
}

ScoreVector score_vector(const Dataset& data, const ExponentialFamily& family,
                         const FittedModel& null_fit, const OrthonormalSystem& system) {
    const int n = data.n();
    if (system.n() != n || null_fit.linear_predictor.size() != n)
        throw usage_error("score_vector: size mismatch between data, fit and system");
    Eigen::VectorXd resid(n);
    for (int i = 0; i < n; ++i) resid(i) = data.y(i) - family.b1(null_fit.linear_predictor(i));

    ScoreVector out;
    out.alpha_hat = system.values.transpose() * resid / static_cast<double>(n);
    out.dispersion = family.a(null_fit.eta_hat);
    out.n = n;
    if (!out.alpha_hat.allFinite()) throw numeric_error("score_vector: non-finite projection");
    return out;
}

SnResult s_n(const ScoreVector& score) {
    if (score.K() < 1) throw usage_error("s_n needs K >= 1");
    SnResult out;
    for (int j = 0; j < score.K(); ++j) {
        double e = score.n * score.alpha_hat(j) * score.alpha_hat(j) / (2.0 * score.dispersion);
        if (e > kExpCap) {
            e = kExpCap;
            out.saturated = true;
        }
        out.value += std::exp(e);
    }
    return out;
}

double r_n(const ScoreVector& score) {
    if (score.K() < 1) throw usage_error("r_n needs K >= 1");
    double best = 0.0;
    for (int j = 0; j < score.K(); ++j)
        best = std::max(best, score.n * score.alpha_hat(j) * score.alpha_hat(j) / score.dispersion);
    return best;
}

double max_test_ms(const FamilyFit& fit) {
    const int K = fit.K();
    if (K < 2) throw domain_error("max_test_ms needs K >= 2 (log log K must be defined)");
    double max_lr = fit.lr[0];
    for (double v : fit.lr) max_lr = std::max(max_lr, v);
    const double dK = static_cast<double>(K);
    return max_lr - 2.0 * std::log(dK) + std::log(std::log(dK)) + std::log(M_PI);
}

double adaptive_neyman(const Eigen::VectorXd& residuals) {
    const int n = static_cast<int>(residuals.size());
    if (n < 8) throw usage_error("adaptive_neyman needs n >= 8");
    const double sigma2 = residuals.squaredNorm() / n;
    if (!(sigma2 > 0.0)) throw domain_error("adaptive_neyman: zero residual variance");

    // Fourier coefficients at frequencies k = 1, 2, ..., cosine first then
    // sine at each frequency, columns normalized to unit Euclidean norm.
    const int m_max = (n - 1) / 2;
    Eigen::VectorXd z(m_max);
    int filled = 0;
    for (int k = 1; filled < m_max; ++k) {
        double cos_dot = 0.0, cos_nrm = 0.0, sin_dot = 0.0, sin_nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double angle = 2.0 * M_PI * k * i / n;
            const double c = std::cos(angle), s = std::sin(angle);
            cos_dot += c * residuals(i);
            cos_nrm += c * c;
            sin_dot += s * residuals(i);
            sin_nrm += s * s;
        }
        z(filled++) = cos_dot / std::sqrt(cos_nrm);
        if (filled < m_max) z(filled++) = sin_dot / std::sqrt(sin_nrm);
    }
    z /= std::sqrt(sigma2);

    double best = -std::numeric_limits<double>::infinity();
    double running = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        running += z(m - 1) * z(m - 1) - 1.0;
        best = std::max(best, running / std::sqrt(2.0 * m));
    }

    // Double-log normalization to the standard Gumbel limit exp(-exp(-x)).
    const double ll = std::log(std::log(static_cast<double>(m_max)));
    return std::sqrt(2.0 * ll) * best - (2.0 * ll + 0.5 * std::log(ll) - 0.5 * std::log(4.0 * M_PI));
}

namespace {

bool is_small_value_statistic(const std::string& name) {
    return name == "pi_bic" || name == "pi_singleton" || name == "lindley";
}

const char* to_string(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::asymptotic: return "asymptotic";
        case ReferenceKind::simulated: return "simulated";
        case ReferenceKind::bootstrap_p: return "bootstrap";
    }
    return "unknown";
}

}  // namespace

TestResult decide(const std::string& statistic_name, double value, const Reference& reference,
                  double alpha, bool lindley_safe) {
    if (reference.alpha > 0.0 && std::abs(reference.alpha - alpha) > 1e-12)
        throw usage_error("decide: reference was computed for level " +
                          std::to_string(reference.alpha) + ", requested " + std::to_string(alpha));
    TestResult out;
    out.statistic_name = statistic_name;
    out.value = value;
    out.reference = reference;
    out.alpha = alpha;
    out.lindley_safe = lindley_safe;
    if (reference.kind == ReferenceKind::bootstrap_p) {
        out.reject = reference.value <= alpha;
    } else if (is_small_value_statistic(statistic_name)) {
        double threshold = reference.value;
        if (lindley_safe) threshold = std::min(0.5, threshold);
        out.reject = value <= threshold;
    } else {
        out.reject = value >= reference.value;
    }
    return out;
}

std::string to_json_record(const TestResult& result) {
    std::ostringstream os;
    os.precision(12);
    os << "{\"statistic\":\"" << result.statistic_name << "\""
       << ",\"value\":" << result.value
       << ",\"reference_kind\":\"" << to_string(result.reference.kind) << "\""
       << ",\"reference_value\":" << result.reference.value
       << ",\"alpha\":" << result.alpha
       << ",\"reject\":" << (result.reject ? "true" : "false")
       << ",\"seed_provenance\":\"" << result.reference.provenance << "\"}";
    return os.str();
}

}  // namespace lofit
