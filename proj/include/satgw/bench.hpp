// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

#include "satgw/pbd.hpp"
#include "satgw/types.hpp"

namespace satgw::bench {

/// Flushes subnormal floats to zero for the lifetime of the guard. At the
/// benchmark sizes the tail accumulators and generating-function products
/// sink deep into the subnormal range, where hardware assists cost ~100x a
/// normal multiply; that would measure the FPU's subnormal handling, not
/// the algorithms' operation counts. Accuracy-sensitive code never runs
/// under this guard.
class SubnormalFlushGuard {
  public:
#if defined(__SSE2__)
    SubnormalFlushGuard() : saved_(_mm_getcsr()) {
        _mm_setcsr(saved_ | 0x8040);  // FTZ | DAZ
    }
    ~SubnormalFlushGuard() { _mm_setcsr(saved_); }

  private:
    unsigned saved_;
#endif
};

/// Median per-call wall time of fn. Each sample repeats fn until at least
/// min_sample_seconds have elapsed, so sub-microsecond calls still get a
/// stable reading.
template <typename Fn>
double median_seconds(Fn&& fn, int samples = 5,
                      double min_sample_seconds = 0.01) {
    using clock = std::chrono::steady_clock;
    std::vector<double> per_call;
    for (int s = 0; s < samples; ++s) {
        long reps = 0;
        const auto start = clock::now();
        double elapsed = 0.0;
        do {
            fn();
            ++reps;
            elapsed = std::chrono::duration<double>(clock::now() - start).count();
        } while (elapsed < min_sample_seconds);
        per_call.push_back(elapsed / double(reps));
    }
    std::sort(per_call.begin(), per_call.end());
    return per_call[per_call.size() / 2];
}

/// Least-squares slope of log(time) against log(size): the empirical
/// growth exponent.
inline double fit_loglog_slope(const std::vector<double>& sizes,
                               const std::vector<double>& times) {
    const std::size_t n = sizes.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(sizes[i]);
        const double y = std::log(times[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

struct TimingRow {
    std::string method;
    int n_gateways = 0;
    double seconds = 0.0;
};

struct BenchReport {
    std::vector<TimingRow> rows;
    double slope_cfe = 0.0;
    double slope_recursive_half = 0.0;  // threshold at N/2
    double slope_recursive_one = 0.0;   // threshold at 1
    double slope_fft_pmf = 0.0;
};

/// Times the closed-form, recursion (at thresholds N/2 and 1) and PMF
/// engines over geometric size grids and fits growth exponents. The
/// closed-form and recursion grids stop at cfe_n_max; the PMF grid
/// continues to fft_n_max where the log-factor regime is visible.
inline BenchReport run_standard_bench(int cfe_n_max = 4096,
                                      int fft_n_max = 16384, int samples = 5,
                                      double min_sample_seconds = 0.01) {
    BenchReport report;
    [[maybe_unused]] const SubnormalFlushGuard flush_guard;
    volatile double sink = 0.0;  // keep calls observable

    auto probe_vector = [](int n) {
        return OutageVector(std::vector<double>(std::size_t(n), 0.3));
    };

    std::vector<double> sizes, times;
    auto record = [&](const std::string& method, int n, double secs) {
        report.rows.push_back({method, n, secs});
        sizes.push_back(double(n));
        times.push_back(secs);
    };
    auto fit_and_reset = [&]() {
        const double slope = fit_loglog_slope(sizes, times);
        sizes.clear();
        times.clear();
        return slope;
    };

    for (int n = 256; n <= cfe_n_max; n *= 2) {
        const OutageVector p = probe_vector(n);
        const double secs = median_seconds(
            [&] { sink = sink + tail_cfe(p, TailQuery(n / 2, n)); }, samples,
            min_sample_seconds);
        record("cfe", n, secs);
    }
    report.slope_cfe = fit_and_reset();

    for (int n = 256; n <= cfe_n_max; n *= 2) {
        const OutageVector p = probe_vector(n);
        const double secs = median_seconds(
            [&] { sink = sink + tail_recursive(p, TailQuery(n / 2, n)); },
            samples, min_sample_seconds);
        record("recursive_half", n, secs);
    }
    report.slope_recursive_half = fit_and_reset();

    for (int n = 256; n <= cfe_n_max; n *= 2) {
        const OutageVector p = probe_vector(n);
        const double secs = median_seconds(
            [&] { sink = sink + tail_recursive(p, TailQuery(1, n)); }, samples,
            min_sample_seconds);
        record("recursive_one", n, secs);
    }
    report.slope_recursive_one = fit_and_reset();

    for (int n = 256; n <= fft_n_max; n *= 2) {
        const OutageVector p = probe_vector(n);
        const double secs = median_seconds(
            [&] { sink = sink + pmf_fft(p)[0]; }, samples, min_sample_seconds);
        record("fft_pmf", n, secs);
    }
    report.slope_fft_pmf = fit_and_reset();

    return report;
}

}  // namespace satgw::bench
