#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "hypermatch/combinatorics.hpp"
#include "hypermatch/errors.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/lognumber.hpp"

namespace hypermatch {

namespace analytics_detail {

inline void check_n(std::uint32_t n) {
    if (n < 1) throw ParameterError("vertex count must be at least 1");
    if (n > kMaxVertices) throw CapacityError("vertex count exceeds the configured cap");
}

inline void check_n_m(std::uint32_t n, std::uint64_t m) {
    check_n(n);
    if (m < 1) throw ParameterError("edge count must be at least 1");
    if (BigCount(static_cast<unsigned long>(m)) > pow2m1(n))
        throw ParameterError("edge count exceeds 2^n - 1");
}

} // namespace analytics_detail

/// Probability that a fixed family of k distinct nonempty subsets drawn from
/// the pattern space is a matching of a sample with support size n_support:
/// D(n_support, k) / C(2^n - 1, k).
inline LogNumber match_probability(std::uint32_t n, std::uint32_t n_support, std::uint64_t k) {
    analytics_detail::check_n(n);
    if (n_support < 1 || n_support > n)
        throw ParameterError("support size must lie in [1, n]");
    if (k < 1) throw ParameterError("matching size must be at least 1");
    return log_disjoint_family_count(n_support, k) / log_binomial(pow2m1(n), BigCount(k));
}

/// Bracket on E[X_k]: upper = C(M,k) D(n,k) / C(2^n-1,k), lower = (M/2^n) upper.
struct ExpectationBounds {
    LogNumber lower;
    LogNumber upper;
};

inline ExpectationBounds expected_matchings_bounds(std::uint32_t n, std::uint64_t m,
                                                   std::uint64_t k) {
    analytics_detail::check_n_m(n, m);
    if (k < 1) throw ParameterError("matching size must be at least 1");
    const LogNumber upper = log_binomial(m, k) * log_disjoint_family_count(n, k) /
                            log_binomial(pow2m1(n), BigCount(k));
    const LogNumber scale = LogNumber::from_ln(
        std::log(static_cast<double>(m)) - static_cast<double>(n) * kLn2);
    return ExpectationBounds{scale * upper, upper};
}

/// Exact E[X_k] over the uniform M-subset model:
/// D(n,k) C(2^n-1-k, M-k) / C(2^n-1, M). Coincides with the upper bracket
/// bound through the subset-chain identity; computed by this independent
/// route on purpose. Zero when k > M.
inline LogNumber expected_matchings_exact(std::uint32_t n, std::uint64_t m, std::uint64_t k) {
    analytics_detail::check_n_m(n, m);
    if (k < 1) throw ParameterError("matching size must be at least 1");
    if (k > m) return LogNumber::zero();
    const BigCount space = pow2m1(n);
    return log_disjoint_family_count(n, k) * log_binomial(space - k, BigCount(m - k)) /
           log_binomial(space, BigCount(m));
}

/// Markov bound on Pr[X_2 >= 1] (no disjoint pair exists beyond this):
/// M(M-1) ((3^n+1)/2 - 2^n) / ((2^n-1)(2^n-2)), i.e. exactly E_up[X_2].
/// The middle factor is D(n,2), evaluated as its positive sum.
inline LogNumber markov_no_pair_bound(std::uint32_t n, std::uint64_t m) {
    analytics_detail::check_n_m(n, m);
    if (m < 2) throw ParameterError("bound needs at least two edges");
    const BigCount space = pow2m1(n);
    const double ln_m = std::log(static_cast<double>(m)) +
                        std::log(static_cast<double>(m - 1));
    return LogNumber::from_ln(ln_m) * log_disjoint_family_count(n, 2) /
           LogNumber::from_ln(ln_big(space) + ln_big(space - 1));
}

/// Conditional bound of the covariance analysis: the probability that one
/// size-k family is a matching given an overlapping one is, with l shared
/// members covering t vertices, is at most
/// D(n-t, k-l) / C(2^n-k-1, k-l).
inline LogNumber conditional_match_probability_bound(std::uint32_t n, std::uint64_t k,
                                                     std::uint64_t l, std::uint64_t t) {
    analytics_detail::check_n(n);
    if (k < 1) throw ParameterError("matching size must be at least 1");
    if (l > k) throw ParameterError("shared count cannot exceed the family size");
    if (t < l) throw ParameterError("shared edges cover at least one vertex each");
    if (t > n) throw ParameterError("covered vertices cannot exceed n");
    if (k - l == 0) return LogNumber::zero();  // {j 0} = 0 for every j >= 1
    const BigCount denom_top = pow2m1(n) - k;
    const LogNumber denom = log_binomial(denom_top, BigCount(k - l));
    if (denom.is_zero()) throw ParameterError("family size exceeds the pattern space");
    return log_disjoint_family_count(n - t, k - l) / denom;
}

namespace analytics_detail {

/// Sum over l = 2..f of C(f,l) D(n-l, f-l); the overlap weight shared by the
/// variance bound and the Chebyshev ratio.
inline LogNumber covariance_weight(std::uint32_t n, std::uint64_t f) {
    LogNumber acc = LogNumber::zero();
    for (std::uint64_t l = 2; l <= f && l <= n; ++l) {
        acc = acc + log_binomial(f, l) * log_disjoint_family_count(n - l, f - l);
    }
    return acc;
}

} // namespace analytics_detail

/// Var[X_f] <= E[X_f] (1 + sum_{l=2..f} C(f,l) D(n-l, f-l)), with E[X_f]
/// instantiated by the upper bracket bound.
inline LogNumber variance_upper_bound(std::uint32_t n, std::uint64_t m, std::uint64_t f) {
    analytics_detail::check_n_m(n, m);
    if (f < 1 || f > m) throw ParameterError("f must lie in [1, M]");
    const LogNumber e_up = expected_matchings_bounds(n, m, f).upper;
    return e_up * (LogNumber::one() + analytics_detail::covariance_weight(n, f));
}

/// Chebyshev bound on Pr[X_f = 0]:
/// (1 + sum_{l=2..f} C(f,l) D(n-l, f-l)) / E[X_f], with E[X_f] instantiated
/// by the lower bracket bound (the conservative side of the ratio).
inline LogNumber chebyshev_ratio(std::uint32_t n, std::uint64_t m, std::uint64_t f) {
    analytics_detail::check_n_m(n, m);
    if (f < 1 || f > m) throw ParameterError("f must lie in [1, M]");
    const LogNumber e_low = expected_matchings_bounds(n, m, f).lower;
    return (LogNumber::one() + analytics_detail::covariance_weight(n, f)) / e_low;
}

/// Edge-density regime of (n, M).
enum class Regime { Unit, Gap, Dense };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Unit: return "unit";
        case Regime::Gap: return "gap";
        case Regime::Dense: return "dense";
    }
    return "?";
}

/// Classification with the implied matching-number interval
/// [lower_fn_value, upper_fn_value].
struct RegimeReport {
    Regime regime;
    double lower_fn_value;
    double upper_fn_value;
    double delta;
    double dense_fraction;
    double unit_threshold;
};

/// Below this edge count the matching number concentrates on 1:
/// e^{(n/2)(2 ln 2 - ln 3)} = (4/3)^{n/2} ~ 1.1547^n.
inline double unit_threshold(std::uint32_t n) {
    return std::exp(0.5 * static_cast<double>(n) * std::log(4.0 / 3.0));
}

inline RegimeReport regime_classify(std::uint32_t n, std::uint64_t m, double delta = 0.1,
                                    double dense_fraction = 0.25) {
    analytics_detail::check_n_m(n, m);
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    if (!(dense_fraction > 0.0) || dense_fraction > 1.0)
        throw ParameterError("dense fraction must lie in (0, 1]");

    RegimeReport r{};
    r.delta = delta;
    r.dense_fraction = dense_fraction;
    r.unit_threshold = unit_threshold(n);

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    if (md < r.unit_threshold) {
        r.regime = Regime::Unit;
        r.lower_fn_value = 1.0;
        r.upper_fn_value = 1.0;
    } else if (std::log(md) >= std::log(dense_fraction) + nd * kLn2) {
        r.regime = Regime::Dense;
        r.lower_fn_value = std::pow(nd, 0.5 - delta);
        r.upper_fn_value = nd;
    } else {
        r.regime = Regime::Gap;
        r.lower_fn_value = 1.0;
        r.upper_fn_value = nd;
    }
    return r;
}

} // namespace hypermatch
