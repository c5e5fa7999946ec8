// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "satgw/approx.hpp"
#include "satgw/pbd.hpp"
#include "satgw/rng.hpp"
#include "satgw/types.hpp"

namespace satgw::experiments {

/// Random-configuration ensemble: i.i.d. uniform outage probabilities in
/// (prob_low, prob_high), seed-deterministic.
struct RandomConfigSpec {
    int n_configs = 1000;
    int n_gateways = 6;
    double prob_low = 0.0;
    double prob_high = 0.02;
    std::uint64_t seed = 12345;
};

inline void validate(const RandomConfigSpec& spec) {
    if (spec.n_configs < 1)
        throw std::invalid_argument("RandomConfigSpec: n_configs must be >= 1");
    if (spec.n_gateways < 1)
        throw std::invalid_argument("RandomConfigSpec: n_gateways must be >= 1");
    if (!(spec.prob_low >= 0.0 && spec.prob_low < spec.prob_high &&
          spec.prob_high <= 1.0))
        throw std::invalid_argument(
            "RandomConfigSpec: need 0 <= prob_low < prob_high <= 1");
}

inline std::vector<OutageVector> gen_random_configs(
    const RandomConfigSpec& spec) {
    validate(spec);
    rng::Xoshiro256 gen(spec.seed);
    std::vector<OutageVector> configs;
    configs.reserve(std::size_t(spec.n_configs));
    for (int c = 0; c < spec.n_configs; ++c) {
        std::vector<double> probs(std::size_t(spec.n_gateways));
        for (double& p : probs) p = gen.uniform(spec.prob_low, spec.prob_high);
        configs.emplace_back(std::move(probs));
    }
    return configs;
}

/// Accuracy of one approximation method against the exact tails, over its
/// evaluation set of thresholds.
struct ErrorReport {
    approx::Method method{};
    double max_ae = 0.0;
    double rmse = 0.0;
    double mean_ae = 0.0;
    int eval_set_size = 0;
};

namespace detail {

/// Thresholds a method is scored on: every L in [0, N] for the probability
/// distributions, the bound's validity range for the Chernoff bound.
inline std::vector<int> eval_set(const OutageVector& p, approx::Method method) {
    const int n = p.size();
    std::vector<int> set;
    if (method == approx::Method::CB) {
        const double mu = moments(p).mean;
        if (mu <= 0.0)
            throw std::invalid_argument(
                "error_metrics: Chernoff bound needs a positive mean");
        const int lo = int(std::floor(mu)) + 1;
        if (lo > n)
            throw std::invalid_argument(
                "error_metrics: empty Chernoff evaluation set");
        for (int L = lo; L <= n; ++L) set.push_back(L);
    } else {
        for (int L = 0; L <= n; ++L) set.push_back(L);
    }
    return set;
}

/// Metric core against an arbitrary approximator, so a reference engine can
/// be scored against itself in tests.
template <typename ApproxFn>
ErrorReport error_metrics_against(const OutageVector& p, ApproxFn&& fn,
                                  const std::vector<int>& set,
                                  approx::Method label) {
    ErrorReport rep;
    rep.method = label;
    rep.eval_set_size = int(set.size());
    double sq_sum = 0.0;
    double abs_sum = 0.0;
    for (int L : set) {
        const TailQuery q(L, p.size());
        const double err = std::abs(tail_recursive(p, q) - fn(p, q));
        rep.max_ae = std::max(rep.max_ae, err);
        sq_sum += err * err;
        abs_sum += err;
    }
    rep.rmse = std::sqrt(sq_sum / double(set.size()));
    rep.mean_ae = abs_sum / double(set.size());
    return rep;
}

}  // namespace detail

inline ErrorReport error_metrics(const OutageVector& p,
                                 approx::Method method) {
    return detail::error_metrics_against(
        p,
        [method](const OutageVector& pv, const TailQuery& q) {
            return approx::evaluate(method, pv, q).value;
        },
        detail::eval_set(p, method), method);
}

struct AveragedError {
    int n_gateways = 0;
    ErrorReport report;  // metrics averaged over the random configurations
};

inline constexpr approx::Method all_methods[] = {
    approx::Method::BA, approx::Method::PA, approx::Method::NA,
    approx::Method::RNA, approx::Method::CB};

/// Per-gateway-count, per-method averages of the three error metrics over
/// the random ensemble. Each N draws its own sub-stream derived from the
/// spec seed, so results do not depend on the order of n_range.
inline std::vector<AveragedError> averaged_error_study(
    const RandomConfigSpec& spec, const std::vector<int>& n_range) {
    std::vector<AveragedError> out;
    for (int n : n_range) {
        RandomConfigSpec per_n = spec;
        per_n.n_gateways = n;
        per_n.seed = rng::derive_seed(spec.seed, std::uint64_t(n));
        const auto configs = gen_random_configs(per_n);
        for (approx::Method method : all_methods) {
            AveragedError avg;
            avg.n_gateways = n;
            avg.report.method = method;
            for (const auto& p : configs) {
                const ErrorReport rep = error_metrics(p, method);
                avg.report.max_ae += rep.max_ae;
                avg.report.rmse += rep.rmse;
                avg.report.mean_ae += rep.mean_ae;
                avg.report.eval_set_size = rep.eval_set_size;
            }
            avg.report.max_ae /= double(spec.n_configs);
            avg.report.rmse /= double(spec.n_configs);
            avg.report.mean_ae /= double(spec.n_configs);
            out.push_back(avg);
        }
    }
    return out;
}

/// One cell of a figure-style sweep.
struct SweepRow {
    int n_gateways = 0;
    int ceil_ratio = 0;
    int extra_k = 0;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::int64_t censored = 0;  // configs excluded from the cell mean
};

/// Average SOP per (N, ceil-ratio) cell. Each configuration draws one
/// probability vector of the largest N and evaluates every smaller N on its
/// prefix, so per-configuration monotonicity (non-decreasing in the ratio,
/// non-increasing in N) carries over to the averages on every run.
/// Infeasible cells (ratio ceiling above N) are skipped.
inline std::vector<SweepRow> sop_sweep(const RandomConfigSpec& spec,
                                       const std::vector<int>& ceil_r_range,
                                       const std::vector<int>& n_range) {
    validate(spec);
    int n_max = 1;
    for (int n : n_range) n_max = std::max(n_max, n);
    RandomConfigSpec draw = spec;
    draw.n_gateways = n_max;
    const auto configs = gen_random_configs(draw);

    std::vector<SweepRow> rows;
    for (int n : n_range) {
        for (int r : ceil_r_range) {
            if (r < 1 || r > n) continue;
            const TailQuery q(n - r + 1, n);
            double sum = 0.0;
            for (const auto& cfg : configs) {
                std::vector<double> prefix(cfg.probs().begin(),
                                           cfg.probs().begin() + n);
                sum += tail_recursive(OutageVector(std::move(prefix)), q);
            }
            rows.push_back({n, r, 0, sum / double(spec.n_configs), 0});
        }
    }
    return rows;
}

/// Average SOP-improvement factor per (extra-gateway count, ceil-ratio)
/// cell against a base fleet of base_n gateways. Extras nest (the K-th cell
/// extends the (K-1)-th), so the per-configuration factor is non-decreasing
/// in K. Configurations whose extended SOP underflows to zero are excluded
/// from the mean and counted in the row.
inline std::vector<SweepRow> improvement_sweep(const RandomConfigSpec& spec,
                                               int base_n,
                                               const std::vector<int>& k_range) {
    validate(spec);
    if (base_n < 1)
        throw std::invalid_argument("improvement_sweep: base_n must be >= 1");
    int k_max = 0;
    for (int k : k_range) {
        if (k < 0)
            throw std::invalid_argument("improvement_sweep: negative K");
        k_max = std::max(k_max, k);
    }
    RandomConfigSpec draw = spec;
    draw.n_gateways = base_n + k_max;
    const auto configs = gen_random_configs(draw);

    std::vector<SweepRow> rows;
    for (int k : k_range) {
        for (int r = 1; r <= base_n; ++r) {
            const TailQuery base_q(base_n - r + 1, base_n);
            const TailQuery ext_q(base_q.threshold + k, base_n + k);
            double sum = 0.0;
            std::int64_t censored = 0;
            for (const auto& cfg : configs) {
                std::vector<double> base(cfg.probs().begin(),
                                         cfg.probs().begin() + base_n);
                std::vector<double> ext(cfg.probs().begin(),
                                        cfg.probs().begin() + base_n + k);
                const double base_sop =
                    tail_recursive(OutageVector(std::move(base)), base_q);
                const double ext_sop =
                    tail_recursive(OutageVector(std::move(ext)), ext_q);
                if (ext_sop == 0.0) {
                    ++censored;
                    continue;
                }
                sum += base_sop / ext_sop;
            }
            const std::int64_t kept = spec.n_configs - censored;
            SweepRow row{base_n, r, k,
                         kept > 0 ? sum / double(kept)
                                  : std::numeric_limits<double>::quiet_NaN(),
                         censored};
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace satgw::experiments
