#pragma once

#include <stdexcept>
#include <string>

namespace lofit {

/// Input outside a function's mathematical domain (bad parameter value,
/// response outside the family's admissible range, covariate out of bounds).
class domain_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// API misuse: mismatched sizes, wrong family kind for an operation,
/// reference table keyed to different parameters, unknown names.
class usage_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Numerical failure: factorization breakdown, non-finite intermediate.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Design matrix problems: rank deficiency, degenerate columns.
class design_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative fit failed to converge within the configured budget.
class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration: unknown keys, inconsistent experiment spec.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Too many bootstrap replicates failed to produce a statistic.
class bootstrap_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lofit
