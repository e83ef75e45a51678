#include "lofit/bootstrap.hpp"

#include "lofit/errors.hpp"

#include <stdexcept>

namespace lofit {

BootstrapResult run_bootstrap(const BootstrapSpec& spec, double observed) {
    if (!spec.generator || !spec.statistic) {
        throw usage_error("run_bootstrap needs both a generator and a statistic");
    }
    if (spec.B < 100) throw usage_error("bootstrap needs B >= 100 replicates");

    BootstrapResult result;
    result.null_sample.reserve(spec.B);
    std::size_t extreme = 0;
    for (std::size_t r = 0; r < spec.B; ++r) {
        rng::Stream stream(spec.seed, rng::streams::kBootstrap, r);
        double value = 0.0;
        try {
            const Dataset data = spec.generator(stream);
            value = spec.statistic(data);
        } catch (const std::runtime_error&) {
            // Fit failures (non-convergence, boundary factorizations, ...) are
            // expected occasionally; record and move on. Logic errors still
            // propagate: they indicate a miswired spec, not a bad replicate.
            result.failed_replicates.push_back(r);
            continue;
        }
        result.null_sample.push_back(value);
        const bool is_extreme =
            spec.tail == TailDirection::upper ? value >= observed : value <= observed;
        if (is_extreme) ++extreme;
    }

    if (20 * result.failed_replicates.size() > spec.B) {
        throw bootstrap_error("bootstrap: " + std::to_string(result.failed_replicates.size()) +
                              " of " + std::to_string(spec.B) + " replicates failed (cap 5%)");
    }
    result.p_value =
        static_cast<double>(1 + extreme) / static_cast<double>(spec.B + 1);
    return result;
}

}  // namespace lofit
