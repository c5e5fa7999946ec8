// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "satgw/common.hpp"
#include "satgw/math.hpp"
#include "satgw/types.hpp"

namespace satgw {

namespace detail {

inline void check_query(const OutageVector& p, const TailQuery& q) {
    if (q.n_gateways != p.size())
        throw std::invalid_argument("query/gateway-count mismatch");
}

/// Iterative radix-2 FFT. Twiddles are computed per level from the angle
/// directly (no incremental products), keeping round-off near machine
/// precision even at the largest sizes used here.
inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> twiddle;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? math::two_pi : -math::two_pi) / double(len);
        twiddle.resize(len / 2);
        for (std::size_t j = 0; j < len / 2; ++j)
            twiddle[j] = std::polar(1.0, ang * double(j));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * twiddle[j];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) x /= double(n);
    }
}

/// Operand length at or below which plain quadratic convolution beats the
/// FFT (transform overhead dominates at small sizes).
inline constexpr std::size_t conv_fft_cutoff = 64;

/// Real convolution via one packed FFT: both operands ride in a single
/// complex transform (a in the real lane, b in the imaginary lane) and the
/// two spectra are separated with the conjugate-symmetry identity, so a
/// product costs two transforms instead of three.
inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    if (std::max(a.size(), b.size()) <= conv_fft_cutoff) {
        std::vector<double> c(out_len, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    }
    std::size_t n = 1;
    while (n < out_len) n <<= 1;
    std::vector<std::complex<double>> packed(n);
    for (std::size_t i = 0; i < a.size(); ++i) packed[i] = {a[i], 0.0};
    for (std::size_t i = 0; i < b.size(); ++i) packed[i].imag(b[i]);
    fft_radix2(packed, false);
    std::vector<std::complex<double>> prod(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kc = (n - k) & (n - 1);
        const std::complex<double> fk = packed[k];
        const std::complex<double> fc = std::conj(packed[kc]);
        const std::complex<double> fa = 0.5 * (fk + fc);
        const std::complex<double> fb =
            std::complex<double>(0.0, -0.5) * (fk - fc);
        prod[k] = fa * fb;
    }
    fft_radix2(prod, true);
    std::vector<double> c(out_len);
    for (std::size_t k = 0; k < out_len; ++k) c[k] = prod[k].real();
    return c;
}

/// Balanced divide-and-conquer product of the per-gateway [1-p, p] factors
/// over probs[lo, hi).
inline std::vector<double> conv_tree(const std::vector<double>& probs,
                                     std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {1.0 - probs[lo], probs[lo]};
    const std::size_t mid = lo + (hi - lo) / 2;
    return convolve(conv_tree(probs, lo, mid), conv_tree(probs, mid, hi));
}

}  // namespace detail

/// Mean, variance and third central moment of the outage count, from the
/// closed-form sums over the per-gateway probabilities.
inline PbdMoments moments(const OutageVector& p) {
    PbdMoments m;
    for (double pn : p) {
        m.mean += pn;
        m.variance += pn * (1.0 - pn);
        m.third_central += pn * (1.0 - pn) * (1.0 - 2.0 * pn);
    }
    m.std_dev = std::sqrt(m.variance);
    return m;
}

/// Exact upper tail P(S >= L) by enumeration of outage patterns. The sum
/// over all subsets with at least L outages is evaluated as a depth-first
/// product tree; branches that can no longer reach L outages contribute
/// nothing and are cut, and once a branch has reached L outages every
/// completion counts, so the running product is added as is.
///
/// Exponential in the number of gateways; refuses N > 25.
inline double tail_direct(const OutageVector& p, const TailQuery& q) {
    detail::check_query(p, q);
    if (p.size() > 25)
        throw SizeLimitError("tail_direct: enumeration limited to N <= 25");
    const int n = q.n_gateways;
    const int min_outages = q.threshold;
    if (min_outages <= 0) return 1.0;
    if (min_outages > n) return 0.0;

    auto rec = [&](auto&& self, int idx, int outages, double prod) -> double {
        if (prod == 0.0) return 0.0;
        if (outages >= min_outages) return prod;
        if (outages + (n - idx) < min_outages) return 0.0;
        return self(self, idx + 1, outages, prod * (1.0 - p[idx])) +
               self(self, idx + 1, outages + 1, prod * p[idx]);
    };
    return std::clamp(rec(rec, 0, 0, 1.0), 0.0, 1.0);
}

/// Exact upper tail by the DFT-based closed form: with c = e^{i*2*pi/(N+1)},
///
///   P(S >= L) = 1 - (L + sum_{n=1..N} (1 - c^{-nL})/(1 - c^{-n})
///                                     * prod_m (1 + (c^n - 1) p_m)) / (N+1)
///
/// The complex terms sum to a real number; the imaginary residue is pure
/// floating-point phase error. It is checked against 1e-9 (an internal
/// consistency failure throws) and discarded, and the real part is clamped
/// into [0,1]. Boundary queries L = 0 and L = N+1 return their defining
/// values exactly. Quadratic cost in N.
inline double tail_cfe(const OutageVector& p, const TailQuery& q) {
    detail::check_query(p, q);
    const int n = q.n_gateways;
    const int min_outages = q.threshold;
    if (min_outages == 0) return 1.0;
    if (min_outages == n + 1) return 0.0;

    std::complex<double> sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double theta = math::two_pi * double(k) / double(n + 1);
        const std::complex<double> ck = std::polar(1.0, theta);
        const std::complex<double> num =
            1.0 - std::polar(1.0, -theta * double(min_outages));
        const std::complex<double> den = 1.0 - std::polar(1.0, -theta);
        std::complex<double> prod = 1.0;
        for (double pm : p) prod *= 1.0 + (ck - 1.0) * pm;
        sum += num / den * prod;
    }
    const std::complex<double> value =
        1.0 - (double(min_outages) + sum) / double(n + 1);
    if (std::abs(value.imag()) > 1e-9)
        throw std::logic_error("tail_cfe: imaginary residue exceeds 1e-9");
    return std::clamp(value.real(), 0.0, 1.0);
}

/// Exact upper tail by the two-term recursion
///
///   P(S >= L | p_1..p_N) = (1-p_N) P(S >= L | p_1..p_{N-1})
///                        +    p_N  P(S >= L-1 | p_1..p_{N-1})
///
/// evaluated in place over a rolling accumulator acc[j] ~ P(at least j
/// outages among the gateways seen so far). Only the index window that can
/// still influence acc[L] is updated, and the inner loop runs top-down so
/// each pass reuses the previous one without a scratch row. Update count is
/// L*(N-L+1); the result is bit-reproducible for a fixed input.
inline double tail_recursive(const OutageVector& p, const TailQuery& q) {
    detail::check_query(p, q);
    const int n = q.n_gateways;
    const int min_outages = q.threshold;
    const int slack = n - min_outages;
    std::vector<double> acc(std::size_t(min_outages) + 1, 0.0);
    acc[0] = 1.0;
    int lo = 1;
    for (int i = 1; i <= n; ++i) {
        const double pi = p[i - 1];
        const int hi = std::min(i, min_outages);
        if (i > slack + 1) lo = i - slack;
        for (int j = hi; j >= lo; --j)
            acc[j] = (1.0 - pi) * acc[j] + pi * acc[j - 1];
    }
    return acc[min_outages];
}

/// Full PMF of the outage count as the N-fold convolution of the
/// per-gateway [1-p, p] mass pairs, combined over a balanced tree with
/// FFT-backed convolution above the size cutoff. O(N log^2 N).
///
/// Round-off can leave tiny negative coefficients; magnitudes below 1e-12
/// are clamped to zero and the mass renormalized, anything larger is an
/// internal consistency failure.
inline PbdPmf pmf_fft(const OutageVector& p) {
    std::vector<double> mass =
        detail::conv_tree(p.probs(), 0, p.probs().size());
    double sum = 0.0;
    for (double& m : mass) {
        if (m < 0.0) {
            if (m <= -1e-12)
                throw std::logic_error("pmf_fft: negative mass beyond round-off");
            m = 0.0;
        }
        sum += m;
    }
    for (double& m : mass) m /= sum;
    return PbdPmf(std::move(mass));
}

/// Upper tail as the suffix sum of a PMF, accumulated from the small end.
/// Boundary queries return their defining values exactly.
inline double tail_from_pmf(const PbdPmf& pmf, const TailQuery& q) {
    if (q.n_gateways != pmf.n_gateways())
        throw std::invalid_argument("query/PMF size mismatch");
    const int n = pmf.n_gateways();
    if (q.threshold <= 0) return 1.0;
    if (q.threshold > n) return 0.0;
    double sum = 0.0;
    for (int m = n; m >= q.threshold; --m) sum += pmf[std::size_t(m)];
    return std::min(sum, 1.0);
}

}  // namespace satgw
