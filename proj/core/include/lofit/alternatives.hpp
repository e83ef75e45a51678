#pragma once

#include <vector>

#include "lofit/basis.hpp"
#include "lofit/glm_fit.hpp"

namespace lofit {

enum class FamilyKind { nested, singleton, custom };

/// A family of alternative models indexed by subsets of basis directions.
/// Model j augments the null design with the basis columns listed in
/// index_sets[j-1] (1-based direction indices).
struct AlternativeFamily {
    FamilyKind kind = FamilyKind::nested;
    std::vector<std::vector<int>> index_sets;  ///< K sets, each a subset of {1..K_max}
    int K = 0;                                 ///< number of alternative models

    /// Parameter count of model j in excess of the null model's.
    int dims_over_null(int j) const { return static_cast<int>(index_sets.at(j).size()); }
};

/// Nested ladder {1}, {1,2}, ..., {1..K} or singletons {1}, {2}, ..., {K}.
AlternativeFamily build_family(FamilyKind kind, int K);

/// Explicit index sets, preserved verbatim.  Throws usage_error on an empty
/// set (every alternative must strictly contain the null).  Families larger
/// than 1024 models require allow_large = true.
AlternativeFamily build_custom_family(const std::vector<std::vector<int>>& index_sets,
                                      bool allow_large = false);

/// Fits of every model in a family against a common null fit.
struct FamilyFit {
    AlternativeFamily family;
    std::vector<FittedModel> fits;  ///< per-model fits, index 0 = model 1
    std::vector<double> lr;         ///< likelihood ratios vs the null, model 1..K
    std::vector<double> aic;        ///< AIC_0..AIC_K (max_loglik_j - m_j)
    std::vector<double> bic;        ///< BIC_0..BIC_K (max_loglik_j - m_j log(n)/2)
    int n = 0;                      ///< sample size
    int m0 = 0;                     ///< null model dimension

    int K() const { return static_cast<int>(lr.size()); }
};

/// Fits each model in the family by appending its indexed basis columns to
/// the null design, with the same dispersion treatment as the null fit.
/// Fit errors are rethrown tagged with the model index.
FamilyFit fit_family(const AlternativeFamily& family, const ExponentialFamily& glm_family,
                     const FittedModel& null_fit, const Eigen::MatrixXd& null_design,
                     const Eigen::MatrixXd& basis_values, const Dataset& data);

struct OrderSelection {
    int r_hat = 0;         ///< selected order (0 = null model)
    double statistic = 0;  ///< likelihood ratio at the selected order (0 at r_hat = 0)
};

enum class SelectionCriterion { aic, bic };

/// Order selection on the nested ladder: argmax over j = min_order..K of the
/// criterion, ties broken toward the smaller index, with the null model
/// (j = 0) scored at likelihood ratio 0.  The default min_order = 0 allows
/// selecting the null; min_order = 1 restricts the search to nonempty models,
/// matching the index range over which the corresponding reference law is
/// simulated.  Throws usage_error for non-nested families.
OrderSelection select_order(const FamilyFit& fit, SelectionCriterion criterion, int min_order = 0);

}  // namespace lofit
