#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "hypermatch/errors.hpp"

namespace hypermatch {

/// Two-sided Student-t quantile, e.g. t(0.975, 29) = 2.0452.
inline double student_t_quantile(double p, std::uint64_t df) {
    if (df < 1) throw StatisticsError("t quantile needs at least one degree of freedom");
    return boost::math::quantile(boost::math::students_t_distribution<double>(
                                     static_cast<double>(df)),
                                 p);
}

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw StatisticsError("mean of an empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Sample standard deviation (n - 1 denominator).
inline double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) throw StatisticsError("sample sd needs at least two values");
    const double mu = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct ConfidenceInterval {
    double mean;
    double lo;
    double hi;
};

/// Two-sided 95% CI with Student t at df = n - 1. A zero-variance sample
/// gives a degenerate interval [mean, mean].
inline ConfidenceInterval t_confidence_interval95(std::span<const double> xs) {
    if (xs.size() < 2) throw StatisticsError("confidence interval needs at least two values");
    const double mu = mean(xs);
    const double sd = sample_sd(xs);
    const double half = student_t_quantile(0.975, xs.size() - 1) * sd /
                        std::sqrt(static_cast<double>(xs.size()));
    return ConfidenceInterval{mu, mu - half, mu + half};
}

/// Ranks with ties assigned their average rank (1-based).
inline std::vector<double> average_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation (Pearson on average ranks); 0 for degenerate
/// inputs with no rank variance.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw StatisticsError("spearman needs two equally sized samples of >= 2 values");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double mx = mean(rx), my = mean(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

/// Chi-square statistic against a uniform expectation over `bins` outcomes.
inline double chi_square_uniform(std::span<const std::uint64_t> counts, double total) {
    if (counts.empty()) throw StatisticsError("chi-square needs at least one bin");
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

} // namespace hypermatch
