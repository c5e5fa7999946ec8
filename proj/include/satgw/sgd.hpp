// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satgw/common.hpp"
#include "satgw/pbd.hpp"
#include "satgw/types.hpp"

namespace satgw {

/// A gateway fleet plus the traffic it must carry. Per-user demands are
/// kept as given, but only their total matters for outage: the network
/// reroutes load freely, so the users' demand is met exactly when the
/// aggregate capacity of the available gateways covers the total.
class SgdScenario {
  public:
    SgdScenario(std::vector<double> gateway_capacities,
                std::vector<double> user_demands, OutageVector outage_probs)
        : capacities_(std::move(gateway_capacities)),
          demands_(std::move(user_demands)),
          probs_(std::move(outage_probs)) {
        if (capacities_.size() != std::size_t(probs_.size()))
            throw std::invalid_argument(
                "SgdScenario: capacity/probability length mismatch");
        for (double c : capacities_)
            if (!(c > 0.0))
                throw std::invalid_argument("SgdScenario: capacities must be > 0");
        for (double d : demands_)
            if (!(d >= 0.0))
                throw std::invalid_argument("SgdScenario: demands must be >= 0");
        total_demand_ = std::accumulate(demands_.begin(), demands_.end(), 0.0);
        if (!(total_demand_ > 0.0))
            throw std::invalid_argument("SgdScenario: total demand must be > 0");
    }

    int n_gateways() const { return probs_.size(); }
    const std::vector<double>& capacities() const { return capacities_; }
    const std::vector<double>& user_demands() const { return demands_; }
    const OutageVector& outage_probs() const { return probs_; }
    double total_demand() const { return total_demand_; }
    double total_capacity() const {
        return std::accumulate(capacities_.begin(), capacities_.end(), 0.0);
    }
    bool equal_capacities() const {
        return std::all_of(capacities_.begin(), capacities_.end(),
                           [&](double c) { return c == capacities_.front(); });
    }

  private:
    std::vector<double> capacities_;
    std::vector<double> demands_;
    OutageVector probs_;
    double total_demand_;
};

/// Demand-to-capacity ratio and the outage threshold it induces.
struct DemandRatio {
    double ratio = 0.0;   // total demand / per-gateway capacity
    int ceil_ratio = 0;   // minimum number of gateways that must stay up
    int threshold = 0;    // outage count at which the system fails
};

/// Comparison of a base fleet against the same fleet with extra gateways.
struct ImprovementReport {
    double base_sop = 0.0;
    double extended_sop = 0.0;
    double factor = 0.0;  // base_sop / extended_sop, >= 1
    int extra_gateways = 0;
};

/// Maps an equal-capacity fleet and a total demand to the outage threshold:
/// with ratio r = demand / capacity, the system fails as soon as fewer than
/// ceil(r) gateways remain available, i.e. at N - ceil(r) + 1 outages.
///
/// The ceiling is taken after shrinking the ratio by a 1e-9 relative
/// tolerance so that float noise sitting just above an integer does not
/// inflate the gateway requirement by one.
inline DemandRatio threshold_from_demand(int n_gateways, double gw_capacity,
                                         double total_demand) {
    if (n_gateways < 1)
        throw std::invalid_argument("threshold_from_demand: need >= 1 gateway");
    if (!(gw_capacity > 0.0))
        throw std::invalid_argument("threshold_from_demand: capacity must be > 0");
    if (!(total_demand > 0.0))
        throw std::invalid_argument("threshold_from_demand: demand must be > 0");
    DemandRatio dr;
    dr.ratio = total_demand / gw_capacity;
    dr.ceil_ratio = int(std::ceil(dr.ratio * (1.0 - 1e-9)));
    if (dr.ceil_ratio < 1) dr.ceil_ratio = 1;
    if (dr.ceil_ratio > n_gateways)
        throw InfeasibleError(
            "threshold_from_demand: demand exceeds aggregate capacity");
    dr.threshold = n_gateways - dr.ceil_ratio + 1;
    return dr;
}

/// System outage probability of an equal-capacity fleet, via the recursion
/// engine at the demand-induced threshold.
inline TailResult sop_equal_capacity(const SgdScenario& scenario) {
    if (!scenario.equal_capacities())
        throw std::invalid_argument("sop_equal_capacity: capacities differ");
    const int n = scenario.n_gateways();
    const DemandRatio dr = threshold_from_demand(
        n, scenario.capacities().front(), scenario.total_demand());
    TailQuery q(dr.threshold, n);
    return {tail_recursive(scenario.outage_probs(), q), "recursive", q};
}

/// System outage probability with arbitrary per-gateway capacities: sums
/// the probability of every outage pattern whose surviving capacity falls
/// strictly below the demand. A pattern whose remaining capacity exactly
/// equals the demand is not an outage. Exponential enumeration; N <= 25.
inline TailResult sop_general(const SgdScenario& scenario) {
    const int n = scenario.n_gateways();
    if (n > 25)
        throw SizeLimitError("sop_general: enumeration limited to N <= 25");
    if (scenario.total_demand() > scenario.total_capacity())
        throw InfeasibleError("sop_general: demand exceeds aggregate capacity");
    const auto& probs = scenario.outage_probs();
    const auto& caps = scenario.capacities();
    const double demand = scenario.total_demand();

    auto rec = [&](auto&& self, int idx, double prod, double avail) -> double {
        if (prod == 0.0) return 0.0;
        if (idx == n) return avail < demand ? prod : 0.0;
        return self(self, idx + 1, prod * probs[idx], avail) +
               self(self, idx + 1, prod * (1.0 - probs[idx]), avail + caps[idx]);
    };
    const double value = std::clamp(rec(rec, 0, 1.0, 0.0), 0.0, 1.0);

    std::optional<TailQuery> q;
    if (scenario.equal_capacities()) {
        const DemandRatio dr = threshold_from_demand(
            n, scenario.capacities().front(), scenario.total_demand());
        q = TailQuery(dr.threshold, n);
    }
    return {value, "general", q};
}

/// Outage-probability improvement from appending extra gateways of the
/// same capacity, at the same demand. The extended fleet keeps the same
/// minimum-surviving-gateway requirement, so its threshold grows by the
/// number of extras. The factor is base SOP over extended SOP and is
/// always >= 1.
inline ImprovementReport improvement_factor(
    const SgdScenario& base, const std::vector<double>& extra_probs) {
    if (!base.equal_capacities())
        throw std::invalid_argument("improvement_factor: capacities differ");
    for (double p : extra_probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(
                "improvement_factor: extra probability outside [0,1]");
    const int n = base.n_gateways();
    const int k = int(extra_probs.size());
    const DemandRatio dr = threshold_from_demand(
        n, base.capacities().front(), base.total_demand());

    ImprovementReport rep;
    rep.extra_gateways = k;
    rep.base_sop =
        tail_recursive(base.outage_probs(), TailQuery(dr.threshold, n));

    std::vector<double> combined = base.outage_probs().probs();
    combined.insert(combined.end(), extra_probs.begin(), extra_probs.end());
    rep.extended_sop = tail_recursive(OutageVector(std::move(combined)),
                                      TailQuery(dr.threshold + k, n + k));
    if (rep.extended_sop == 0.0)
        throw std::domain_error(
            "improvement_factor: extended SOP underflowed to zero");
    rep.factor = rep.base_sop / rep.extended_sop;
    return rep;
}

}  // namespace satgw
