#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gmpxx.h>

#include "hypermatch/errors.hpp"
#include "hypermatch/lognumber.hpp"

namespace hypermatch {

/// Exact non-negative integer of arbitrary size.
using BigCount = mpz_class;

inline constexpr double kLn2 = 0.6931471805599453094;

/// 2^n - 1 as an exact integer.
inline BigCount pow2m1(std::uint64_t n) {
    BigCount x = 1;
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), n);
    return x - 1;
}

/// ln(x) for x > 0 of any size, via mantissa/exponent split.
inline double ln_big(const BigCount& x) {
    signed long exp = 0;
    const double d = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * kLn2;
}

/// Exact C(n, k); 0 when k > n.
inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigCount binomial(const BigCount& n, std::uint64_t k) {
    if (n < 0 || BigCount(k) > n) return 0;
    BigCount r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

namespace comb_detail {

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

/// log(e^a + e^b) tolerant of -inf inputs.
inline double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

/// True when x is small enough that double conversion is finite and sane.
inline bool fits_double(const BigCount& x, double& out) {
    signed long exp = 0;
    const double d = mpz_get_d_2exp(&exp, x.get_mpz_t());
    if (exp > 1000) return false;
    out = std::ldexp(d, static_cast<int>(exp));
    return true;
}

} // namespace comb_detail

/// ln C(n, k). The short side of the coefficient is summed term by term
/// (compensated), which keeps every value that fits 4096 bits within 1e-9
/// relative of exact: such values always have min(k, n-k) < 4096. Larger
/// coefficients fall back to a Stirling-series evaluation.
inline LogNumber log_binomial(const BigCount& n, const BigCount& k) {
    if (k < 0 || n < 0 || k > n) return LogNumber::zero();
    BigCount m = k;
    BigCount other = n - k;
    if (other < m) mpz_swap(m.get_mpz_t(), other.get_mpz_t());
    if (m == 0) return LogNumber::one();

    if (m <= 8192) {
        const std::uint64_t mi = mpz_get_ui(m.get_mpz_t());
        comb_detail::KahanSum acc;
        if (n.fits_ulong_p()) {
            const std::uint64_t ni = mpz_get_ui(n.get_mpz_t());
            for (std::uint64_t i = 0; i < mi; ++i)
                acc.add(std::log(static_cast<double>(ni - i)) -
                        std::log(static_cast<double>(i + 1)));
        } else {
            BigCount t = n;
            for (std::uint64_t i = 0; i < mi; ++i) {
                acc.add(ln_big(t) - std::log(static_cast<double>(i + 1)));
                t -= 1;
            }
        }
        return LogNumber::from_ln(acc.sum);
    }

    // Values here exceed 2^4096; a few ulps of slack is acceptable.
    double nd = 0;
    if (comb_detail::fits_double(n, nd)) {
        const double md = mpz_get_d(m.get_mpz_t());
        const double od = nd - md;
        const double ln = md * std::log(nd / md) + od * std::log(nd / od) +
                          0.5 * std::log(nd / (2.0 * M_PI * md * od)) +
                          (1.0 / (12.0 * nd) - 1.0 / (12.0 * md) - 1.0 / (12.0 * od));
        return LogNumber::from_ln(ln);
    }
    // n astronomically larger than m^2: C(n, m) ~ n^m / m!.
    const double md = mpz_get_d(m.get_mpz_t());
    return LogNumber::from_ln(md * ln_big(n) - std::lgamma(md + 1.0));
}

inline LogNumber log_binomial(std::uint64_t n, std::uint64_t k) {
    return log_binomial(BigCount(static_cast<unsigned long>(n)),
                        BigCount(static_cast<unsigned long>(k)));
}

/// Exact Stirling numbers of the second kind {j k} for j = 0..n_max, via the
/// positive-term recurrence S(j,k) = k S(j-1,k) + S(j-1,k-1).
inline std::vector<BigCount> stirling2_column(std::uint64_t n_max, std::uint64_t k) {
    std::vector<BigCount> prev(n_max + 1, 0), cur(n_max + 1, 0);
    prev[0] = 1;  // column k=0: {0 0}=1, {j 0}=0 for j>=1
    if (k == 0) return prev;
    for (std::uint64_t c = 1; c <= k; ++c) {
        cur.assign(n_max + 1, 0);
        for (std::uint64_t j = c; j <= n_max; ++j) {
            cur[j] = BigCount(static_cast<unsigned long>(c)) * cur[j - 1] + prev[j - 1];
        }
        std::swap(prev, cur);
    }
    return prev;
}

/// Exact {n k}; 0 for k > n and for k = 0, n > 0.
inline BigCount stirling2(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    return stirling2_column(n, k)[n];
}

/// ln {j k} for j = 0..n_max (-inf where zero), same recurrence in log space.
inline std::vector<double> log_stirling2_column(std::uint64_t n_max, std::uint64_t k) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> prev(n_max + 1, ninf), cur(n_max + 1, ninf);
    prev[0] = 0.0;
    if (k == 0) return prev;
    for (std::uint64_t c = 1; c <= k; ++c) {
        std::fill(cur.begin(), cur.end(), ninf);
        const double ln_c = std::log(static_cast<double>(c));
        for (std::uint64_t j = c; j <= n_max; ++j) {
            cur[j] = comb_detail::log_add(ln_c + cur[j - 1], prev[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev;
}

inline LogNumber log_stirling2(std::uint64_t n, std::uint64_t k) {
    if (k > n) return LogNumber::zero();
    return LogNumber::from_ln(log_stirling2_column(n, k)[n]);
}

/// D(n, k): unordered families of k pairwise-disjoint nonempty subsets of an
/// n-set, as the sum over support sizes j of C(n,j) {j k}.
inline BigCount disjoint_family_count(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k > n) return 0;
    const auto col = stirling2_column(n, k);
    BigCount acc = 0;
    for (std::uint64_t j = k; j <= n; ++j) acc += binomial(n, j) * col[j];
    return acc;
}

inline LogNumber log_disjoint_family_count(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k > n) return LogNumber::zero();
    const auto col = log_stirling2_column(n, k);
    LogNumber acc = LogNumber::zero();
    for (std::uint64_t j = k; j <= n; ++j) {
        acc = acc + LogNumber::from_ln(log_binomial(n, j).ln_magnitude() + col[j]);
    }
    return acc;
}

} // namespace hypermatch
