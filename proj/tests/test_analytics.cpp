#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hypermatch/analytics.hpp"
#include "hypermatch/combinatorics.hpp"
#include "hypermatch/lognumber.hpp"
#include "hypermatch/solver.hpp"
#include "oracles.hpp"

using namespace hypermatch;

namespace {

/// |ln a - ln b| <= tol, treating shared zeros as equal.
void require_log_close(const LogNumber& got, const BigCount& exact, double tol = 1e-9) {
    if (exact == 0) {
        REQUIRE(got.is_zero());
        return;
    }
    REQUIRE(got.sign() == (exact > 0 ? 1 : -1));
    REQUIRE_THAT(got.ln_magnitude(),
                 Catch::Matchers::WithinAbs(ln_big(abs(BigCount(exact))), tol));
}

void require_log_close_q(const LogNumber& got, const mpq_class& exact, double tol = 1e-9) {
    if (exact == 0) {
        REQUIRE(got.is_zero());
        return;
    }
    const double ln_exact = ln_big(exact.get_num()) - ln_big(exact.get_den());
    REQUIRE(got.sign() == 1);
    REQUIRE_THAT(got.ln_magnitude(), Catch::Matchers::WithinAbs(ln_exact, tol));
}

mpq_class q_binom(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return mpq_class(b);
}

} // namespace

TEST_CASE("log numbers behave as signed log-space reals", "[analytics]") {
    const LogNumber a = LogNumber::from_value(6.0);
    const LogNumber b = LogNumber::from_value(-2.5);
    REQUIRE_THAT((a * b).value(), Catch::Matchers::WithinRel(-15.0, 1e-12));
    REQUIRE_THAT((a / b).value(), Catch::Matchers::WithinRel(-2.4, 1e-12));
    REQUIRE_THAT((a + b).value(), Catch::Matchers::WithinRel(3.5, 1e-12));
    REQUIRE_THAT((a - b).value(), Catch::Matchers::WithinRel(8.5, 1e-12));
    REQUIRE((a + LogNumber::from_value(-6.0)).is_zero());

    const LogNumber zero = LogNumber::zero();
    REQUIRE(zero.is_zero());
    REQUIRE(zero.value() == 0.0);
    REQUIRE((zero * a).is_zero());
    REQUIRE((zero + b).value() == b.value());
    REQUIRE(zero < a);
    REQUIRE(b < zero);
    REQUIRE(b < a);

    REQUIRE(LogNumber::from_value(0.3).clamped01() == 0.3);
    REQUIRE(LogNumber::from_value(7.0).clamped01() == 1.0);
    REQUIRE(b.clamped01() == 0.0);
    REQUIRE_THAT(LogNumber::from_value(1000.0).log10_magnitude(),
                 Catch::Matchers::WithinAbs(3.0, 1e-12));
}

TEST_CASE("binomial coefficients: exact values and log agreement", "[analytics]") {
    REQUIRE(binomial(5, 2) == 10);
    REQUIRE(binomial(17, 0) == 1);
    REQUIRE(binomial(17, 17) == 1);
    REQUIRE(binomial(4, 9) == 0);

    for (std::uint64_t n = 1; n <= 30; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            require_log_close(log_binomial(n, k), binomial(n, k));
        }
    }

    // anchors far outside fixed-width arithmetic, still under 4096 bits
    const BigCount huge = pow2m1(40);
    require_log_close(log_binomial(huge, BigCount(4)), binomial(huge, 4));
    require_log_close(log_binomial(4000, 2000), binomial(4000, 2000));
    require_log_close(log_binomial(100000, 3), binomial(100000, 3));
}

TEST_CASE("binomial bracketing bounds hold exhaustively", "[analytics]") {
    // (n/k)^k <= C(n,k) <= (ne/k)^k for 1 <= k <= n <= 30
    for (std::uint64_t n = 1; n <= 30; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) {
            mpz_class lhs, cpow;
            mpz_ui_pow_ui(lhs.get_mpz_t(), n, k);           // n^k
            mpz_ui_pow_ui(cpow.get_mpz_t(), k, k);          // k^k
            REQUIRE(lhs <= binomial(n, k) * cpow);          // exact integer compare
            const double ln_upper =
                static_cast<double>(k) *
                (1.0 + std::log(static_cast<double>(n) / static_cast<double>(k)));
            REQUIRE(ln_big(binomial(n, k)) <= ln_upper + 1e-12);
        }
    }
}

TEST_CASE("stirling numbers: recurrence, enumeration and the explicit sum", "[analytics]") {
    for (std::uint64_t n = 1; n <= 20; ++n) {
        REQUIRE(stirling2(n, 1) == 1);
        REQUIRE(stirling2(n, n) == 1);
    }
    REQUIRE(stirling2(4, 2) == 7);
    REQUIRE(stirling2(4, 2) == oracles::partition_count_enum(4, 2));
    REQUIRE(stirling2(3, 5) == 0);
    REQUIRE(stirling2(5, 0) == 0);
    REQUIRE(stirling2(0, 0) == 1);

    // direct enumeration for every small case
    for (unsigned n = 1; n <= 8; ++n) {
        for (unsigned k = 1; k <= n; ++k) {
            REQUIRE(stirling2(n, k) == oracles::partition_count_enum(n, k));
        }
    }

    // the alternating explicit sum, evaluated in exact rationals
    for (unsigned n = 1; n <= 20; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            REQUIRE(stirling2(n, k) == oracles::stirling2_explicit_sum(n, k));
        }
    }
    REQUIRE(stirling2(10, 5) == oracles::stirling2_explicit_sum(10, 5));

    // log variant tracks the exact one
    for (std::uint64_t n = 1; n <= 40; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) {
            require_log_close(log_stirling2(n, k), stirling2(n, k));
        }
    }
    require_log_close(log_stirling2(200, 100), stirling2(200, 100));
}

TEST_CASE("stirling bracketing bounds hold exhaustively", "[analytics]") {
    // (k^2+k+2) k^(n-k-1) - 2 <= 2 {n k} <= C(n,k) k^(n-k), exact integers
    for (std::uint64_t n = 2; n <= 30; ++n) {
        for (std::uint64_t k = 1; k + 1 <= n; ++k) {
            mpz_class kpow_lo, kpow_hi;
            mpz_ui_pow_ui(kpow_lo.get_mpz_t(), k, n - k - 1);
            mpz_ui_pow_ui(kpow_hi.get_mpz_t(), k, n - k);
            const BigCount two_s = 2 * stirling2(n, k);
            REQUIRE(BigCount((k * k + k + 2)) * kpow_lo - 2 <= two_s);
            REQUIRE(two_s <= binomial(n, k) * kpow_hi);
        }
    }
}

TEST_CASE("disjoint family counts", "[analytics]") {
    for (std::uint64_t n = 1; n <= 20; ++n) {
        REQUIRE(disjoint_family_count(n, 1) == pow2m1(n));
    }
    REQUIRE(disjoint_family_count(3, 2) == 6);
    REQUIRE(disjoint_family_count(3, 3) == 1);
    REQUIRE(disjoint_family_count(2, 3) == 0);

    for (unsigned n = 1; n <= 5; ++n) {
        BigCount row_total = 0;
        for (unsigned k = 1; k <= n; ++k) {
            REQUIRE(disjoint_family_count(n, k) == oracles::disjoint_families_enum(n, k));
            row_total += disjoint_family_count(n, k);
        }
        REQUIRE(row_total == oracles::all_disjoint_families_enum(n));
    }

    for (std::uint64_t n = 1; n <= 40; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) {
            require_log_close(log_disjoint_family_count(n, k), disjoint_family_count(n, k));
        }
    }
}

TEST_CASE("match probability follows the counting formula", "[analytics]") {
    REQUIRE_THAT(match_probability(3, 3, 1).value(), Catch::Matchers::WithinRel(1.0, 1e-12));
    REQUIRE_THAT(match_probability(3, 3, 2).value(),
                 Catch::Matchers::WithinRel(2.0 / 7.0, 1e-12));
    REQUIRE_THAT(match_probability(3, 2, 2).value(),
                 Catch::Matchers::WithinRel(1.0 / 21.0, 1e-12));
    REQUIRE(match_probability(4, 2, 3).is_zero());  // k exceeds the support

    REQUIRE_THROWS_AS(match_probability(3, 0, 1), ParameterError);
    REQUIRE_THROWS_AS(match_probability(3, 4, 1), ParameterError);
    REQUIRE_THROWS_AS(match_probability(3, 3, 0), ParameterError);
}

TEST_CASE("expectation bracket", "[analytics]") {
    const ExpectationBounds b = expected_matchings_bounds(3, 7, 2);
    REQUIRE_THAT(b.upper.value(), Catch::Matchers::WithinRel(6.0, 1e-12));
    REQUIRE_THAT(b.lower.value(), Catch::Matchers::WithinRel(5.25, 1e-12));

    const ExpectationBounds c = expected_matchings_bounds(4, 5, 2);
    require_log_close_q(c.upper, mpq_class(50, 21));

    // k = 1 collapses to M
    for (std::uint32_t n : {3u, 6u, 9u}) {
        for (std::uint64_t m : {1ull, 5ull, 7ull}) {
            const ExpectationBounds e = expected_matchings_bounds(n, m, 1);
            REQUIRE_THAT(e.upper.value(),
                         Catch::Matchers::WithinRel(static_cast<double>(m), 1e-12));
        }
    }

    // lower = (M / 2^n) * upper by construction
    const ExpectationBounds d = expected_matchings_bounds(9, 100, 3);
    REQUIRE_THAT(d.lower.ln_magnitude() - d.upper.ln_magnitude(),
                 Catch::Matchers::WithinAbs(std::log(100.0 / 512.0), 1e-12));

    REQUIRE_THROWS_AS(expected_matchings_bounds(3, 0, 1), ParameterError);
    REQUIRE_THROWS_AS(expected_matchings_bounds(3, 8, 1), ParameterError);
}

TEST_CASE("exact expectation coincides with the upper bracket", "[analytics]") {
    REQUIRE_THAT(expected_matchings_exact(3, 7, 2).value(),
                 Catch::Matchers::WithinRel(6.0, 1e-12));
    REQUIRE(expected_matchings_exact(3, 7, 2).value() ==
            Catch::Approx(static_cast<double>(count_matchings_of_size(complete_hypergraph(3), 2))));
    REQUIRE_THAT(expected_matchings_exact(3, 7, 3).value(),
                 Catch::Matchers::WithinRel(1.0, 1e-12));
    REQUIRE(expected_matchings_exact(4, 2, 3).is_zero());  // k > M

    for (std::uint32_t n = 1; n <= 8; ++n) {
        const std::uint64_t space = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(4, n); ++k) {
            for (std::uint64_t m = k; m <= space; m += std::max<std::uint64_t>(1, space / 7)) {
                const LogNumber exact = expected_matchings_exact(n, m, k);
                const ExpectationBounds bounds = expected_matchings_bounds(n, m, k);
                REQUIRE_THAT(exact.ln_magnitude(),
                             Catch::Matchers::WithinAbs(bounds.upper.ln_magnitude(), 1e-9));
                REQUIRE(exact > bounds.lower);
            }
        }
    }
}

TEST_CASE("Markov bound on a disjoint pair existing", "[analytics]") {
    REQUIRE_THAT(markov_no_pair_bound(3, 2).value(),
                 Catch::Matchers::WithinRel(2.0 / 7.0, 1e-12));
    const LogNumber vacuous = markov_no_pair_bound(3, 7);
    REQUIRE_THAT(vacuous.value(), Catch::Matchers::WithinRel(6.0, 1e-12));
    REQUIRE(vacuous.clamped01() == 1.0);
    REQUIRE_THROWS_AS(markov_no_pair_bound(3, 1), ParameterError);

    // closed form (M(M-1) ((3^n+1)/2 - 2^n)) / ((2^n-1)(2^n-2)) at (8, 10)
    mpq_class expect(mpz_class(10 * 9) * ((mpz_class(6561) + 1) / 2 - 256),
                     mpz_class(255) * 254);
    expect.canonicalize();
    require_log_close_q(markov_no_pair_bound(8, 10), expect);
}

TEST_CASE("conditional matching probability bound", "[analytics]") {
    REQUIRE_THAT(conditional_match_probability_bound(3, 2, 1, 1).value(),
                 Catch::Matchers::WithinRel(3.0 / 5.0, 1e-12));
    REQUIRE_THAT(conditional_match_probability_bound(4, 2, 1, 2).value(),
                 Catch::Matchers::WithinRel(3.0 / 13.0, 1e-12));
    REQUIRE(conditional_match_probability_bound(3, 2, 2, 2).is_zero());

    REQUIRE_THROWS_AS(conditional_match_probability_bound(3, 2, 1, 4), ParameterError);
    REQUIRE_THROWS_AS(conditional_match_probability_bound(3, 2, 3, 3), ParameterError);
    REQUIRE_THROWS_AS(conditional_match_probability_bound(3, 2, 2, 1), ParameterError);
}

TEST_CASE("variance upper bound", "[analytics]") {
    // f = 1: the overlap sum is empty, leaving E[X_1] = M
    for (std::uint64_t m : {2ull, 9ull, 31ull}) {
        REQUIRE_THAT(variance_upper_bound(5, m, 1).value(),
                     Catch::Matchers::WithinRel(static_cast<double>(m), 1e-12));
    }
    REQUIRE_THAT(variance_upper_bound(3, 7, 2).value(),
                 Catch::Matchers::WithinRel(6.0, 1e-12));
    // frozen value of E_up at (5, 20, 2): C(20,2) D(5,2)/C(31,2) = 190*90/465
    mpq_class expect(mpz_class(190) * 90, mpz_class(465));
    expect.canonicalize();
    require_log_close_q(variance_upper_bound(5, 20, 2), expect);
    REQUIRE_THROWS_AS(variance_upper_bound(5, 4, 5), ParameterError);
    REQUIRE_THROWS_AS(variance_upper_bound(5, 4, 0), ParameterError);
}

TEST_CASE("chebyshev ratio", "[analytics]") {
    REQUIRE_THAT(chebyshev_ratio(3, 7, 1).value(),
                 Catch::Matchers::WithinRel(8.0 / 49.0, 1e-12));

    // f = 1 in general: exactly 1 / lower
    for (std::uint32_t n : {4u, 7u, 10u}) {
        for (std::uint64_t m : {3ull, 11ull}) {
            const LogNumber ratio = chebyshev_ratio(n, m, 1);
            const LogNumber lower = expected_matchings_bounds(n, m, 1).lower;
            REQUIRE_THAT(ratio.ln_magnitude(),
                         Catch::Matchers::WithinAbs(-lower.ln_magnitude(), 1e-12));
        }
    }

    // frozen value at (10, 1023, 2): 1024 / (1023 * D(10,2)), D(10,2) = 28501
    REQUIRE(disjoint_family_count(10, 2) == 28501);
    REQUIRE_THAT(chebyshev_ratio(10, 1023, 2).value(),
                 Catch::Matchers::WithinRel(1024.0 / (1023.0 * 28501.0), 1e-9));
}

TEST_CASE("regime classification", "[analytics]") {
    // 2638 = floor(1.154^55), just under the n=55 threshold of ~2727.8
    const RegimeReport unit = regime_classify(55, 2638, 0.1, 0.25);
    REQUIRE(unit.regime == Regime::Unit);
    REQUIRE(unit.lower_fn_value == 1.0);
    REQUIRE(unit.upper_fn_value == 1.0);

    const RegimeReport dense = regime_classify(13, 8191, 0.1, 0.25);
    REQUIRE(dense.regime == Regime::Dense);
    REQUIRE_THAT(dense.lower_fn_value,
                 Catch::Matchers::WithinRel(std::pow(13.0, 0.4), 1e-12));
    REQUIRE(dense.upper_fn_value == 13.0);
    REQUIRE_THAT(dense.unit_threshold, Catch::Matchers::WithinRel(6.487864753, 1e-8));

    const RegimeReport gap = regime_classify(13, 1000, 0.1, 0.25);
    REQUIRE(gap.regime == Regime::Gap);
    REQUIRE(gap.lower_fn_value == 1.0);
    REQUIRE(gap.upper_fn_value == 13.0);

    SECTION("monotone in M: unit, then gap, then dense") {
        int prev = 0;
        for (std::uint64_t m = 1; m <= 8191; m += 13) {
            const RegimeReport r = regime_classify(13, m, 0.1, 0.25);
            const int stage = r.regime == Regime::Unit ? 0 : (r.regime == Regime::Gap ? 1 : 2);
            REQUIRE(stage >= prev);
            prev = stage;
        }
        REQUIRE(prev == 2);
    }

    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(regime_classify(13, 1000, 0.0, 0.25), ParameterError);
        REQUIRE_THROWS_AS(regime_classify(13, 1000, 0.1, 0.0), ParameterError);
        REQUIRE_THROWS_AS(regime_classify(13, 1000, 0.1, 1.5), ParameterError);
        REQUIRE_THROWS_AS(regime_classify(13, 0, 0.1, 0.25), ParameterError);
        REQUIRE_THROWS_AS(regime_classify(13, 10000, 0.1, 0.25), ParameterError);
    }
}
