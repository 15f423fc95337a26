#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/rng.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/solver.hpp"
#include "hypermatch/stats.hpp"

namespace hypermatch {

enum class SweepMode { Unity, Gap };

/// Monte-Carlo sweep description. Results are a pure function of this
/// struct: per-trial RNG streams are derived statelessly from
/// (master_seed, n, M, trial), so any jobs count yields identical output.
struct SweepConfig {
    SweepMode mode = SweepMode::Unity;

    // Unity mode: n ranges over [n_from, n_to] with M = floor(base^n).
    std::uint32_t n_from = 5;
    std::uint32_t n_to = 30;
    double base = 1.154;

    // Gap mode: fixed n, M over {m_from, m_from+m_step, ...} up to m_to,
    // plus the forced dense endpoint M = 2^n - 1.
    std::uint32_t gap_n = 13;
    std::uint64_t m_from = 1;
    std::uint64_t m_to = 8191;
    std::uint64_t m_step = 100;
    bool force_dense_endpoint = true;

    std::uint32_t trials = 30;
    Seed master_seed{};
    std::uint32_t jobs = 1;
    std::uint64_t node_budget = 100'000'000;
};

struct TrialRecord {
    std::uint32_t n;
    std::uint64_t m;
    std::uint32_t trial;
    std::uint32_t matching_number;
    std::uint64_t seed;
    bool optimal;
};

struct SummaryRow {
    std::uint32_t n;
    std::uint64_t m;
    std::uint32_t trials;
    double mean;
    double ci_lo;
    double ci_hi;
};

/// floor(base^n) by iterated multiplication; bit-reproducible across
/// platforms, unlike pow().
inline std::uint64_t floor_power(double base, std::uint32_t n) {
    double x = 1.0;
    for (std::uint32_t i = 0; i < n; ++i) x *= base;
    return static_cast<std::uint64_t>(std::floor(x));
}

namespace experiments_detail {

template <class Fn>
void parallel_for(std::size_t count, std::uint32_t jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lk(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::uint32_t width = std::min<std::uint32_t>(jobs, static_cast<std::uint32_t>(count));
    pool.reserve(width);
    for (std::uint32_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct Point {
    std::uint32_t n;
    std::uint64_t m;
};

inline std::vector<TrialRecord> run_points(const std::vector<Point>& points,
                                           const SweepConfig& cfg) {
    const std::size_t total = points.size() * cfg.trials;
    std::vector<TrialRecord> records(total);
    parallel_for(total, cfg.jobs, [&](std::size_t i) {
        const Point& p = points[i / cfg.trials];
        const std::uint32_t trial = static_cast<std::uint32_t>(i % cfg.trials);
        const std::uint64_t seed = derive_trial_seed(cfg.master_seed, p.n, p.m, trial);
        const Hypergraph h = sample_hypergraph(p.n, p.m, Seed{seed});
        TrialRecord rec{p.n, p.m, trial, 0, seed, true};
        try {
            SolveOptions opt;
            opt.node_budget = cfg.node_budget;
            rec.matching_number = static_cast<std::uint32_t>(max_matching_exact(h, opt).matching.size());
        } catch (const NodeBudgetError& e) {
            rec.matching_number = static_cast<std::uint32_t>(e.best().size());
            rec.optimal = false;
        }
        records[i] = rec;
    });
    return records;
}

inline void check_common(const SweepConfig& cfg) {
    if (cfg.trials < 2) throw ParameterError("sweeps need at least two trials per point");
    if (cfg.jobs < 1) throw ParameterError("jobs must be at least 1");
}

} // namespace experiments_detail

/// Unity-regime sweep: for each n in [n_from, n_to], samples `trials`
/// hypergraphs with M = floor(base^n) and solves each exactly.
inline std::vector<TrialRecord> run_unity_sweep(const SweepConfig& cfg) {
    experiments_detail::check_common(cfg);
    if (!(cfg.base > 1.0)) throw ParameterError("base must exceed 1");
    if (cfg.n_from < 1 || cfg.n_from > cfg.n_to)
        throw ParameterError("need 1 <= n_from <= n_to");
    std::vector<experiments_detail::Point> points;
    for (std::uint32_t n = cfg.n_from; n <= cfg.n_to; ++n) {
        const std::uint64_t m = floor_power(cfg.base, n);
        if (m < 1) throw ParameterError("floor(base^n) must be at least 1");
        if (n <= 63 && m > ((std::uint64_t{1} << n) - 1))
            throw ParameterError("floor(base^n) exceeds 2^n - 1");
        points.push_back({n, m});
    }
    return experiments_detail::run_points(points, cfg);
}

/// Behavioral-gap sweep: fixed n, M over the arithmetic range plus the
/// forced dense endpoint 2^n - 1 (an exact anchor: the complete hypergraph).
inline std::vector<TrialRecord> run_gap_sweep(const SweepConfig& cfg) {
    experiments_detail::check_common(cfg);
    if (cfg.m_step < 1) throw ParameterError("step must be at least 1");
    if (cfg.gap_n < 1 || cfg.gap_n > 63) throw ParameterError("gap sweeps need 1 <= n <= 63");
    const std::uint64_t space = (std::uint64_t{1} << cfg.gap_n) - 1;
    if (cfg.m_from < 1 || cfg.m_from > cfg.m_to || cfg.m_to > space)
        throw ParameterError("need 1 <= m_from <= m_to <= 2^n - 1");
    std::vector<experiments_detail::Point> points;
    for (std::uint64_t m = cfg.m_from; m <= cfg.m_to; m += cfg.m_step) {
        points.push_back({cfg.gap_n, m});
    }
    if (cfg.force_dense_endpoint && (points.empty() || points.back().m != space)) {
        points.push_back({cfg.gap_n, space});
    }
    return experiments_detail::run_points(points, cfg);
}

/// Per-(n, M) mean and two-sided 95% Student-t confidence interval, in order
/// of first appearance. Every group needs at least two trials.
inline std::vector<SummaryRow> summarize(std::span<const TrialRecord> records) {
    std::vector<SummaryRow> rows;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> keys;
    std::vector<std::vector<double>> groups;
    for (const TrialRecord& r : records) {
        const std::pair<std::uint32_t, std::uint64_t> key{r.n, r.m};
        std::size_t g = 0;
        for (; g < keys.size(); ++g)
            if (keys[g] == key) break;
        if (g == keys.size()) {
            keys.push_back(key);
            groups.emplace_back();
        }
        groups[g].push_back(static_cast<double>(r.matching_number));
    }
    rows.reserve(keys.size());
    for (std::size_t g = 0; g < keys.size(); ++g) {
        if (groups[g].size() < 2)
            throw StatisticsError("group (" + std::to_string(keys[g].first) + ", " +
                                  std::to_string(keys[g].second) +
                                  ") has fewer than two trials");
        const auto ci = t_confidence_interval95(groups[g]);
        rows.push_back(SummaryRow{keys[g].first, keys[g].second,
                                  static_cast<std::uint32_t>(groups[g].size()), ci.mean,
                                  ci.lo, ci.hi});
    }
    return rows;
}

namespace experiments_detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

} // namespace experiments_detail

inline std::string trials_csv(std::span<const TrialRecord> records) {
    std::string out = "n,M,trial,matching_number,seed,status\n";
    for (const TrialRecord& r : records) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(r.matching_number);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += r.optimal ? "ok" : "budget";
        out += '\n';
    }
    return out;
}

inline std::string summary_csv(std::span<const SummaryRow> rows) {
    std::string out = "n,M,trials,mean,ci_lo,ci_hi\n";
    for (const SummaryRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += experiments_detail::fmt_double(r.mean);
        out += ',';
        out += experiments_detail::fmt_double(r.ci_lo);
        out += ',';
        out += experiments_detail::fmt_double(r.ci_hi);
        out += '\n';
    }
    return out;
}

inline std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
    std::vector<SummaryRow> rows;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        if (header) {
            if (line != "n,M,trials,mean,ci_lo,ci_hi")
                throw ParseError(ParseError::Kind::MalformedHeader,
                                 "expected summary CSV header");
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t f = 0;
        while (true) {
            std::size_t c = line.find(',', f);
            if (c == std::string_view::npos) {
                fields.emplace_back(line.substr(f));
                break;
            }
            fields.emplace_back(line.substr(f, c - f));
            f = c + 1;
        }
        if (fields.size() != 6)
            throw ParseError(ParseError::Kind::TrailingContent,
                             "summary CSV row must have six fields");
        SummaryRow r{};
        try {
            r.n = static_cast<std::uint32_t>(std::stoul(fields[0]));
            r.m = std::stoull(fields[1]);
            r.trials = static_cast<std::uint32_t>(std::stoul(fields[2]));
            r.mean = std::stod(fields[3]);
            r.ci_lo = std::stod(fields[4]);
            r.ci_hi = std::stod(fields[5]);
        } catch (const std::exception&) {
            throw ParseError(ParseError::Kind::TrailingContent,
                             "summary CSV row has a non-numeric field");
        }
        rows.push_back(r);
    }
    if (header)
        throw ParseError(ParseError::Kind::MalformedHeader, "summary CSV is empty");
    return rows;
}

} // namespace hypermatch
