// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace satgw::math {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Standard normal density.
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(two_pi);
}

/// Standard normal CDF, evaluated through erfc so that both tails keep
/// full absolute accuracy (well below 1e-12 everywhere).
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// Standard normal CCDF, Q(x) = 1 - CDF(x).
inline double normal_ccdf(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

/// Binomial coefficient as a double. Exact integer arithmetic fits a double
/// mantissa up to n = 50 (C(50,25) < 2^53); larger n goes through lgamma.
inline double binomial_coeff(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    if (n <= 50) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
        return std::round(c);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(n - k + 1.0));
}

/// Binomial PMF P(X = m) for X ~ Bin(n, p). Log-space above n = 50.
inline double binomial_pmf(int n, int m, double p) {
    if (m < 0 || m > n) return 0.0;
    if (p <= 0.0) return m == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return m == n ? 1.0 : 0.0;
    if (n <= 50) {
        return binomial_coeff(n, m) * std::pow(p, m) * std::pow(1.0 - p, n - m);
    }
    double logpmf = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                    std::lgamma(n - m + 1.0) + m * std::log(p) +
                    (n - m) * std::log1p(-p);
    return std::exp(logpmf);
}

/// Upper tail P(X >= lo) for X ~ Bin(n, p), by summing the PMF over the
/// shorter side of the split and complementing if that side is the lower one.
inline double binomial_ccdf(int n, double p, int lo) {
    if (lo <= 0) return 1.0;
    if (lo > n) return 0.0;
    if (lo <= n - lo + 1) {
        double s = 0.0;
        for (int m = 0; m < lo; ++m) s += binomial_pmf(n, m, p);
        return std::max(0.0, std::min(1.0, 1.0 - s));
    }
    double s = 0.0;
    for (int m = n; m >= lo; --m) s += binomial_pmf(n, m, p);
    return std::min(1.0, s);
}

/// Poisson PMF P(X = m) for X ~ Pois(lambda), log-space for large lambda.
inline double poisson_pmf(double lambda, int m) {
    if (m < 0) return 0.0;
    if (lambda <= 0.0) return m == 0 ? 1.0 : 0.0;
    if (lambda < 30.0 && m < 150) {
        double t = std::exp(-lambda);
        for (int i = 1; i <= m; ++i) t *= lambda / double(i);
        return t;
    }
    return std::exp(m * std::log(lambda) - lambda - std::lgamma(m + 1.0));
}

/// Lower tail P(X <= hi) for X ~ Pois(lambda).
inline double poisson_cdf(double lambda, int hi) {
    if (hi < 0) return 0.0;
    if (lambda <= 0.0) return 1.0;
    double s = 0.0;
    if (lambda < 30.0 && hi < 150) {
        double t = std::exp(-lambda);
        s = t;
        for (int m = 1; m <= hi; ++m) {
            t *= lambda / double(m);
            s += t;
        }
    } else {
        for (int m = 0; m <= hi; ++m) s += poisson_pmf(lambda, m);
    }
    return std::min(1.0, s);
}

}  // namespace satgw::math
