#pragma once

#include "lofit/dataset.hpp"
#include "lofit/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace lofit {

/// Which tail of the simulated null distribution counts as evidence against
/// the null. `upper` treats large statistics as extreme, `lower` small ones
/// (appropriate for posterior-probability style statistics).
enum class TailDirection { upper, lower };

/// A seeded parametric bootstrap: simulate datasets from a fixed null model,
/// recompute a statistic on each exactly as on the original data, and compare.
struct BootstrapSpec {
    /// Simulates one dataset under the null model, drawing randomness only
    /// from the supplied stream.
    std::function<Dataset(rng::Stream&)> generator;
    /// The statistic of interest; may throw a runtime error if a refit fails,
    /// which is recorded rather than propagated (up to the failure cap).
    std::function<double(const Dataset&)> statistic;
    TailDirection tail = TailDirection::upper;
    std::size_t B = 1000;
    std::uint64_t seed = 0;
};

struct BootstrapResult {
    /// Statistic values for the successful replicates, in replicate order.
    std::vector<double> null_sample;
    /// Add-one p-value: (1 + #{replicates at least as extreme}) / (B + 1).
    /// Ties with the observed value count as extreme; failed replicates never
    /// do. Never exactly zero.
    double p_value = 1.0;
    /// Replicate indices whose statistic evaluation threw.
    std::vector<std::size_t> failed_replicates;
};

/// Runs the bootstrap described by `spec` against an observed statistic.
///
/// Replicate r draws from its own counter-based substream of `spec.seed`, so
/// results do not depend on evaluation order or worker count. Throws
/// usage_error if B < 100 or a callable is missing, and bootstrap_error if
/// more than 5% of replicates fail.
BootstrapResult run_bootstrap(const BootstrapSpec& spec, double observed);

}  // namespace lofit
