#include "lofit/family.hpp"

#include <cmath>
#include <limits>

#include "lofit/errors.hpp"

namespace lofit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// log(1 + exp(t)) without overflow for large |t|.
double softplus(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// Logistic function, stable in both tails.
double sigmoid(double t) {
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

bool is_integer_valued(double y) {
    return std::abs(y - std::nearbyint(y)) <= 1e-8 * (1.0 + std::abs(y));
}

}  // namespace

ExponentialFamily gaussian_family() {
    ExponentialFamily f;
    f.name = "gaussian";
    f.b = [](double t) { return 0.5 * t * t; };
    f.b1 = [](double t) { return t; };
    f.b2 = [](double) { return 1.0; };
    f.b3 = [](double) { return 0.0; };
    f.a = [](double eta) {
        if (!(eta > 0.0)) throw domain_error("gaussian dispersion must be positive");
        return eta;
    };
    f.c = [](double y, double eta) { return -0.5 * y * y / eta - 0.5 * std::log(eta) - 0.5 * kLog2Pi; };
    f.validate_response = [](double y) {
        if (!std::isfinite(y)) throw domain_error("gaussian response must be finite");
    };
    f.has_dispersion = true;
    return f;
}

ExponentialFamily poisson_family() {
    ExponentialFamily f;
    f.name = "poisson";
    f.b = [](double t) { return std::exp(t); };
    f.b1 = [](double t) { return std::exp(t); };
    f.b2 = [](double t) { return std::exp(t); };
    f.b3 = [](double t) { return std::exp(t); };
    f.a = [](double) { return 1.0; };
    f.c = [](double y, double) { return -std::lgamma(y + 1.0); };
    f.validate_response = [](double y) {
        if (!std::isfinite(y) || y < 0.0 || !is_integer_valued(y))
            throw domain_error("poisson response must be a nonnegative integer");
    };
    f.has_dispersion = false;
    return f;
}

ExponentialFamily bernoulli_family() {
    ExponentialFamily f;
    f.name = "bernoulli";
    f.b = [](double t) { return softplus(t); };
    f.b1 = [](double t) { return sigmoid(t); };
    f.b2 = [](double t) {
        const double p = sigmoid(t);
        return p * (1.0 - p);
    };
    f.b3 = [](double t) {
        const double p = sigmoid(t);
        return p * (1.0 - p) * (1.0 - 2.0 * p);
    };
    f.a = [](double) { return 1.0; };
    f.c = [](double, double) { return 0.0; };
    f.validate_response = [](double y) {
        if (y != 0.0 && y != 1.0) throw domain_error("bernoulli response must be 0 or 1");
    };
    f.has_dispersion = false;
    return f;
}

ExponentialFamily family_by_name(const std::string& name) {
    if (name == "gaussian") return gaussian_family();
    if (name == "poisson") return poisson_family();
    if (name == "bernoulli") return bernoulli_family();
    throw usage_error("unknown family: " + name);
}

}  // namespace lofit
