// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satgw/common.hpp"

namespace satgw {

/// Per-gateway outage probabilities. Validated on construction: at least
/// one entry, every entry a finite number in [0, 1].
class OutageVector {
  public:
    explicit OutageVector(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty())
            throw std::invalid_argument("OutageVector: needs at least one gateway");
        for (double p : probs_) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument(
                    "OutageVector: probability outside [0,1]");
        }
    }

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    auto begin() const { return probs_.begin(); }
    auto end() const { return probs_.end(); }

  private:
    std::vector<double> probs_;
};

/// First three moments of the gateway-outage count.
struct PbdMoments {
    double mean = 0.0;
    double variance = 0.0;
    double std_dev = 0.0;
    double third_central = 0.0;
};

/// Probability mass of the outage count, indexed m = 0..N. Validated:
/// non-negative entries summing to 1 within 1e-12.
class PbdPmf {
  public:
    explicit PbdPmf(std::vector<double> mass) : mass_(std::move(mass)) {
        if (mass_.empty()) throw std::invalid_argument("PbdPmf: empty mass");
        double sum = 0.0;
        for (double m : mass_) {
            if (!(m >= 0.0)) throw std::invalid_argument("PbdPmf: negative mass");
            sum += m;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("PbdPmf: masses do not sum to 1");
    }

    /// Number of gateways the PMF describes (= size() - 1).
    int n_gateways() const { return static_cast<int>(mass_.size()) - 1; }
    std::size_t size() const { return mass_.size(); }
    double operator[](std::size_t m) const { return mass_[m]; }
    const std::vector<double>& mass() const { return mass_; }

  private:
    std::vector<double> mass_;
};

/// An upper-tail query: probability of at least `threshold` outages among
/// `n_gateways`. threshold = 0 and threshold = N+1 are the boundary queries
/// (probability 1 and 0 respectively).
struct TailQuery {
    int threshold;
    int n_gateways;

    TailQuery(int threshold_L, int n) : threshold(threshold_L), n_gateways(n) {
        if (n < 1) throw std::invalid_argument("TailQuery: n_gateways must be >= 1");
        if (threshold_L < 0 || threshold_L > n + 1)
            throw std::invalid_argument("TailQuery: threshold outside [0, N+1]");
    }
};

/// One computed system outage probability, tagged with the method that
/// produced it and the query it answered. Unequal-capacity results carry
/// no query: their failure set is not an at-least-L event.
struct TailResult {
    double value = 0.0;
    std::string method;
    std::optional<TailQuery> query;

    double availability() const { return 1.0 - value; }
};

}  // namespace satgw
