#include "lofit/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lofit/errors.hpp"

namespace lofit {

AlternativeFamily build_family(FamilyKind kind, int K) {
    if (K < 1) throw usage_error("alternative family needs K >= 1");
    if (kind == FamilyKind::custom)
        throw usage_error("custom families must be built with build_custom_family");
    AlternativeFamily fam;
    fam.kind = kind;
    fam.K = K;
    fam.index_sets.resize(K);
    for (int j = 1; j <= K; ++j) {
        if (kind == FamilyKind::nested) {
            fam.index_sets[j - 1].resize(j);
            for (int i = 1; i <= j; ++i) fam.index_sets[j - 1][i - 1] = i;
        } else {
            fam.index_sets[j - 1] = {j};
        }
    }
    return fam;
}

AlternativeFamily build_custom_family(const std::vector<std::vector<int>>& index_sets,
                                      bool allow_large) {
    if (index_sets.empty()) throw usage_error("custom family needs at least one model");
    if (index_sets.size() > 1024 && !allow_large)
        throw usage_error("custom family exceeds 1024 models; pass allow_large to override");
    for (std::size_t j = 0; j < index_sets.size(); ++j) {
        if (index_sets[j].empty())
            throw usage_error("custom family model " + std::to_string(j + 1) +
                              " has an empty index set (must strictly contain the null)");
        for (int idx : index_sets[j])
            if (idx < 1) throw usage_error("basis indices are 1-based and must be positive");
    }
    AlternativeFamily fam;
    fam.kind = FamilyKind::custom;
    fam.index_sets = index_sets;
    fam.K = static_cast<int>(index_sets.size());
    return fam;
}

FamilyFit fit_family(const AlternativeFamily& family, const ExponentialFamily& glm_family,
                     const FittedModel& null_fit, const Eigen::MatrixXd& null_design,
                     const Eigen::MatrixXd& basis_values, const Dataset& data) {
    const int n = data.n();
    const int p = static_cast<int>(null_design.cols());
    if (null_design.rows() != n || basis_values.rows() != n)
        throw usage_error("fit_family: design sizes do not match the data");
    int max_index = 0;
    for (const auto& set : family.index_sets)
        max_index = std::max(max_index, *std::max_element(set.begin(), set.end()));
    if (max_index > basis_values.cols())
        throw usage_error("fit_family: family references basis column " + std::to_string(max_index) +
                          " but only " + std::to_string(basis_values.cols()) + " are available");

    FamilyFit out;
    out.family = family;
    out.n = n;
    out.m0 = null_fit.dimension;
    const double log_n = std::log(static_cast<double>(n));
    out.aic.push_back(null_fit.max_loglik - null_fit.dimension);
    out.bic.push_back(null_fit.max_loglik - 0.5 * null_fit.dimension * log_n);

    for (int j = 0; j < family.K; ++j) {
        const auto& set = family.index_sets[j];
        Eigen::MatrixXd design(n, p + static_cast<int>(set.size()));
        design.leftCols(p) = null_design;
        for (std::size_t c = 0; c < set.size(); ++c)
            design.col(p + static_cast<int>(c)) = basis_values.col(set[c] - 1);
        FittedModel fit;
        try {
            fit = fit_mle(glm_family, design, data, null_fit.dispersion_estimated,
                          null_fit.eta_hat);
        } catch (const convergence_error& e) {
            throw convergence_error("model " + std::to_string(j + 1) + ": " + e.what());
        } catch (const design_error& e) {
            throw design_error("model " + std::to_string(j + 1) + ": " + e.what());
        } catch (const numeric_error& e) {
            throw numeric_error("model " + std::to_string(j + 1) + ": " + e.what());
        }
        out.lr.push_back(likelihood_ratio(null_fit, fit));
        out.aic.push_back(fit.max_loglik - fit.dimension);
        out.bic.push_back(fit.max_loglik - 0.5 * fit.dimension * log_n);
        out.fits.push_back(std::move(fit));
    }
    return out;
}

OrderSelection select_order(const FamilyFit& fit, SelectionCriterion criterion, int min_order) {
    if (fit.family.kind != FamilyKind::nested)
        throw usage_error("select_order requires a nested family");
    const int K = fit.K();
    if (min_order < 0 || min_order > K) throw usage_error("select_order: min_order out of range");

    // Criterion differences relative to the null model; the null scores 0.
    // For nested ladders m_j - m_0 = j, so the criterion difference is
    // lr_j/2 - penalty(j) with penalty j (aic) or j log(n)/2 (bic).
    const double log_n = std::log(static_cast<double>(fit.n));
    auto score = [&](int j) {
        if (j == 0) return 0.0;
        const double penalty = criterion == SelectionCriterion::aic
                                   ? static_cast<double>(fit.family.dims_over_null(j - 1))
                                   : 0.5 * fit.family.dims_over_null(j - 1) * log_n;
        return 0.5 * fit.lr[j - 1] - penalty;
    };

    OrderSelection sel;
    sel.r_hat = min_order;
    double best = score(min_order);
    for (int j = min_order + 1; j <= K; ++j) {
        const double s = score(j);
        if (s > best) {
            best = s;
            sel.r_hat = j;
        }
    }
    sel.statistic = sel.r_hat == 0 ? 0.0 : fit.lr[sel.r_hat - 1];
    return sel;
}

}  // namespace lofit
