// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "satgw/math.hpp"
#include "satgw/pbd.hpp"
#include "satgw/types.hpp"

namespace satgw::approx {

enum class Method { BA, PA, NA, RNA, CB };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::BA: return "BA";
        case Method::PA: return "PA";
        case Method::NA: return "NA";
        case Method::RNA: return "RNA";
        case Method::CB: return "CB";
    }
    return "?";
}

/// One approximate tail value. `applicable` is false when the method's
/// preconditions fail (degenerate variance, threshold outside a bound's
/// validity range); the value is NaN in that case.
struct Result {
    double value = std::numeric_limits<double>::quiet_NaN();
    Method method{};
    bool applicable = false;
};

enum class BoundKind { Ehm, LeCam };

/// Total variation distance between the outage-count law and a reference
/// distribution, paired with the analytic bound that certifies it.
struct TvDiagnostics {
    double tv_distance = std::numeric_limits<double>::quiet_NaN();
    double bound = std::numeric_limits<double>::quiet_NaN();
    BoundKind bound_kind{};
    bool applicable = false;
    // Extra fields populated for the binomial reference.
    double p_bar = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double corrected_score(int threshold, const PbdMoments& m) {
    return (double(threshold) - m.mean - 0.5) / m.std_dev;
}

}  // namespace detail

/// Binomial approximation: matches the mean by using the average outage
/// probability for every gateway. Exact when the input is homogeneous.
inline Result binomial(const OutageVector& p, const TailQuery& q) {
    satgw::detail::check_query(p, q);
    const int n = q.n_gateways;
    const double p_bar = moments(p).mean / double(n);
    double value;
    if (p_bar <= 0.0)
        value = q.threshold <= 0 ? 1.0 : 0.0;  // point mass at 0
    else if (p_bar >= 1.0)
        value = q.threshold <= n ? 1.0 : 0.0;  // point mass at N
    else
        value = math::binomial_ccdf(n, p_bar, q.threshold);
    return {std::clamp(value, 0.0, 1.0), Method::BA, true};
}

/// Poisson approximation with rate equal to the expected outage count.
inline Result poisson(const OutageVector& p, const TailQuery& q) {
    satgw::detail::check_query(p, q);
    const double mu = moments(p).mean;
    const double value = 1.0 - math::poisson_cdf(mu, q.threshold - 1);
    return {std::clamp(value, 0.0, 1.0), Method::PA, true};
}

/// Normal approximation with continuity correction. A zero-variance input
/// degenerates to a point mass at the mean: the tail is 1 when the
/// corrected threshold does not exceed the mean, else 0.
inline Result normal(const OutageVector& p, const TailQuery& q) {
    satgw::detail::check_query(p, q);
    const PbdMoments m = moments(p);
    if (m.std_dev == 0.0) {
        return {double(q.threshold) <= m.mean + 0.5 ? 1.0 : 0.0, Method::NA,
                true};
    }
    return {math::normal_ccdf(detail::corrected_score(q.threshold, m)),
            Method::NA, true};
}

/// Normal approximation refined with the third-moment correction term,
/// clamped into [0,1]. The tail is evaluated as Q(score) minus the
/// correction rather than 1 minus the corrected CDF, so a vanishing third
/// central moment degenerates to the plain normal approximation exactly.
/// Inapplicable for zero variance.
inline Result refined_normal(const OutageVector& p, const TailQuery& q) {
    satgw::detail::check_query(p, q);
    const PbdMoments m = moments(p);
    if (m.std_dev == 0.0) return {.method = Method::RNA};
    const double skew_scale =
        m.third_central / (6.0 * m.std_dev * m.std_dev * m.std_dev);
    const double score = detail::corrected_score(q.threshold, m);
    const double value =
        math::normal_ccdf(score) -
        skew_scale * (1.0 - score * score) * math::normal_pdf(score);
    return {std::clamp(value, 0.0, 1.0), Method::RNA, true};
}

/// Chernoff upper bound (mu/L)^L e^(L-mu), valid for thresholds in
/// {floor(mu)+1, ..., N} and positive mu; inapplicable elsewhere. The raw
/// bound can exceed 1, in which case it is clamped (still a valid bound).
inline Result chernoff_bound(const OutageVector& p, const TailQuery& q) {
    satgw::detail::check_query(p, q);
    const double mu = moments(p).mean;
    const int lo = int(std::floor(mu)) + 1;
    if (mu <= 0.0 || q.threshold < lo || q.threshold > q.n_gateways)
        return {.method = Method::CB};
    const double ell = double(q.threshold);
    const double value = std::pow(mu / ell, ell) * std::exp(ell - mu);
    return {std::clamp(value, 0.0, 1.0), Method::CB, true};
}

inline Result evaluate(Method m, const OutageVector& p, const TailQuery& q) {
    switch (m) {
        case Method::BA: return binomial(p, q);
        case Method::PA: return poisson(p, q);
        case Method::NA: return normal(p, q);
        case Method::RNA: return refined_normal(p, q);
        case Method::CB: return chernoff_bound(p, q);
    }
    throw std::invalid_argument("unknown approximation method");
}

/// Exact total variation distances from the outage-count law to its
/// binomial and Poisson references, each paired with its analytic bound
/// (Ehm's inequality, Le Cam's inequality). Distances are computed as half
/// l1 differences of PMFs; the Poisson PMF is truncated once its cumulative
/// mass reaches 1 - 1e-15 and the remainder is added to the l1 sum, which
/// can only enlarge the reported distance. The binomial diagnostic is
/// inapplicable for a degenerate average probability.
inline std::pair<TvDiagnostics, TvDiagnostics> tv_distance_and_bounds(
    const OutageVector& p) {
    const PbdMoments m = moments(p);
    const int n = p.size();
    const PbdPmf pmf = pmf_fft(p);

    TvDiagnostics ehm;
    ehm.bound_kind = BoundKind::Ehm;
    const double p_bar = m.mean / double(n);
    const double q_bar = 1.0 - p_bar;
    if (p_bar > 0.0 && p_bar < 1.0) {
        double l1 = 0.0;
        for (int k = 0; k <= n; ++k)
            l1 += std::abs(pmf[std::size_t(k)] - math::binomial_pmf(n, k, p_bar));
        const double delta = 1.0 - m.variance / (double(n) * p_bar * q_bar);
        ehm.tv_distance = 0.5 * l1;
        ehm.bound = double(n) / double(n + 1) *
                    (1.0 - std::pow(p_bar, n + 1) - std::pow(q_bar, n + 1)) *
                    delta;
        ehm.p_bar = p_bar;
        ehm.delta = delta;
        ehm.applicable = true;
    }

    TvDiagnostics lecam;
    lecam.bound_kind = BoundKind::LeCam;
    {
        double l1 = 0.0;
        double pois_cum = 0.0;
        int k = 0;
        while (k <= n || pois_cum < 1.0 - 1e-15) {
            const double pk = math::poisson_pmf(m.mean, k);
            const double sk = k <= n ? pmf[std::size_t(k)] : 0.0;
            l1 += std::abs(sk - pk);
            pois_cum += pk;
            ++k;
            if (k > n + 2000) break;  // guard; unreachable for sane inputs
        }
        l1 += std::max(0.0, 1.0 - pois_cum);
        double bound = 0.0;
        for (double pn : p) bound += pn * pn;
        lecam.tv_distance = 0.5 * l1;
        lecam.bound = bound;
        lecam.applicable = true;
    }
    return {ehm, lecam};
}

}  // namespace satgw::approx
