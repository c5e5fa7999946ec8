// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "satgw/common.hpp"
#include "satgw/rng.hpp"
#include "satgw/sgd.hpp"

namespace satgw::oracle {

struct McConfig {
    std::int64_t n_trials = 0;
    std::uint64_t seed = 0;
};

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
};

/// Ground-truth SOP by literal iteration over all 2^N outage patterns.
/// Each pattern's probability is accumulated term by term from the
/// per-gateway factors, with no pruning and no shared code with the
/// analytic engines. Reference implementation; N <= 20.
inline double enumerate_sop(const SgdScenario& scenario) {
    const int n = scenario.n_gateways();
    if (n > 20)
        throw SizeLimitError("enumerate_sop: enumeration limited to N <= 20");
    const auto& probs = scenario.outage_probs();
    const auto& caps = scenario.capacities();
    const double demand = scenario.total_demand();

    double total = 0.0;
    for (std::uint32_t pattern = 0; pattern < (std::uint32_t(1) << n);
         ++pattern) {
        double prob = 1.0;
        double avail = 0.0;
        for (int i = 0; i < n; ++i) {
            if ((pattern >> i) & 1u) {
                prob *= probs[std::size_t(i)];
            } else {
                prob *= 1.0 - probs[std::size_t(i)];
                avail += caps[std::size_t(i)];
            }
        }
        if (avail < demand) total += prob;
    }
    return total;
}

/// Monte Carlo SOP estimate. Every trial draws one uniform variate per
/// gateway (always, so the stream stays aligned regardless of outcomes),
/// marks the gateway out when u < p, and counts the trial as an outage when
/// the surviving capacity is below the demand. Deterministic for a fixed
/// (scenario, config): the generator is xoshiro256** seeded via splitmix64.
inline McEstimate simulate_sop(const SgdScenario& scenario,
                               const McConfig& cfg) {
    if (cfg.n_trials < 1)
        throw std::invalid_argument("simulate_sop: n_trials must be >= 1");
    if (scenario.total_demand() > scenario.total_capacity())
        throw InfeasibleError("simulate_sop: demand exceeds aggregate capacity");
    const auto& probs = scenario.outage_probs();
    const auto& caps = scenario.capacities();
    const int n = scenario.n_gateways();
    const double demand = scenario.total_demand();

    rng::Xoshiro256 gen(cfg.seed);
    std::int64_t outages = 0;
    for (std::int64_t t = 0; t < cfg.n_trials; ++t) {
        double avail = 0.0;
        for (int i = 0; i < n; ++i) {
            const bool down = gen.uniform01() < probs[std::size_t(i)];
            if (!down) avail += caps[std::size_t(i)];
        }
        if (avail < demand) ++outages;
    }
    McEstimate est;
    est.p_hat = double(outages) / double(cfg.n_trials);
    est.std_error =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(cfg.n_trials));
    return est;
}

}  // namespace satgw::oracle
