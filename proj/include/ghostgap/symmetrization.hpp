#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ghostgap/combinatorics.hpp"
#include "ghostgap/concept_class.hpp"
#include "ghostgap/constructors.hpp"
#include "ghostgap/enumeration.hpp"
#include "ghostgap/rng.hpp"

namespace ghostgap {

// Shape of the one-sided symmetrization bound: front * growth(2m) *
// exp(-m * eps^2 / denom). The classical citation does not pin the constants,
// so they live here as the single configuration point.
struct BoundConvention {
    double front = 1.0;
    double exponent_denominator = 8.0;
};

inline constexpr BoundConvention kDefaultBound{};

// growth(2m) * exp(-m * eps^2 / 8) under the default convention. m >= 1.
inline double symmetrization_bound(std::uint64_t growth_2m, std::size_t m, const Rat& eps,
                                   const BoundConvention& convention = kDefaultBound) {
    if (m < 1) throw ValidationError("symmetrization_bound needs m >= 1");
    if (eps.sign() <= 0) throw ValidationError("symmetrization_bound needs eps > 0");
    double eps_sq = (eps * eps).to_double();
    return convention.front * static_cast<double>(growth_2m) *
           std::exp(-static_cast<double>(m) * eps_sq / convention.exponent_denominator);
}

// Hoeffding radius at confidence level 1 - delta_ci for a mean of `trials`
// indicator draws.
inline double hoeffding_radius(std::uint64_t trials, double delta_ci) {
    if (trials == 0) throw ValidationError("hoeffding_radius needs trials >= 1");
    if (!(delta_ci > 0.0 && delta_ci < 1.0))
        throw ValidationError("hoeffding_radius needs delta_ci in (0,1)");
    return std::sqrt(std::log(2.0 / delta_ci) / (2.0 * static_cast<double>(trials)));
}

inline constexpr double kDefaultDeltaCi = 1e-3;

struct EstimateReport {
    enum class Mode { exact, monte_carlo };

    Mode mode = Mode::exact;
    Rat exact_probability;          // exact mode only
    double probability = 0.0;       // float view in both modes (hits/trials for MC)
    std::uint64_t trials = 0;       // MC only
    std::uint64_t hits = 0;         // MC only
    double confidence_radius = 0.0; // MC only, at delta_ci
    double delta_ci = kDefaultDeltaCi;
    std::uint64_t seed = 0;         // MC only
    std::uint64_t growth_2m = 1;
    double bound = 1.0;             // symmetrization bound at (m, eps, growth_2m)
    bool bound_satisfied = true;
    std::size_t m = 0;
    Rat eps;
};

namespace detail {

// Bound fields shared by the exact and Monte Carlo reports. m = 0 keeps the
// trivial bound 1 (the formula needs m >= 1; every probability is <= 1).
inline void fill_bound(EstimateReport& report, const ParamClass& cls, std::size_t m,
                       const Rat& eps, const Budgets& budgets,
                       const BoundConvention& convention) {
    if (m == 0) {
        report.growth_2m = 1;
        report.bound = 1.0;
        return;
    }
    report.growth_2m = growth_function_clamped(cls, static_cast<int>(2 * m), budgets);
    report.bound = symmetrization_bound(report.growth_2m, m, eps, convention);
}

}  // namespace detail

// Integrates the bad-event indicator against the exact product measure:
// sum over all pairs of weight * 1[bad]. Exact rational output.
inline EstimateReport exact_bad_event_prob(const ParamClass& cls, const Target& c,
                                           const FiniteMeasure& mu, std::size_t m,
                                           const Rat& eps,
                                           const Budgets& budgets = Budgets::defaults(),
                                           const BoundConvention& convention = kDefaultBound) {
    validate_class(cls);
    if (eps.sign() <= 0) throw ValidationError("eps must be positive");
    if (!(*cls.domain == *mu.domain()))
        throw DomainMismatch("class and measure live on different domains");
    Rat prob;
    for_each_pair(mu, m, budgets.enumeration_cap, [&](const SamplePair& p, const Rat& w) {
        if (bad_event_contains(cls, c, m, eps, p)) prob += w;
    });
    EstimateReport report;
    report.mode = EstimateReport::Mode::exact;
    report.exact_probability = prob;
    report.probability = prob.to_double();
    report.m = m;
    report.eps = eps;
    detail::fill_bound(report, cls, m, eps, budgets, convention);
    // Outward rounding: the exact probability is rounded up before the float
    // comparison, so floating error cannot mask a true violation.
    report.bound_satisfied = report.bound >= prob.to_double_upper();
    return report;
}

// Monte Carlo estimate of the same probability. Trial i draws its pair from
// the stream derived from (seed, i): the hit count is a sum over trials, so
// the report is bit-identical for any thread count.
inline EstimateReport monte_carlo_bad_event_prob(
    const ParamClass& cls, const Target& c, const FiniteMeasure& mu, std::size_t m,
    const Rat& eps, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1,
    double delta_ci = kDefaultDeltaCi, const Budgets& budgets = Budgets::defaults(),
    const BoundConvention& convention = kDefaultBound) {
    validate_class(cls);
    if (trials < 1) throw ValidationError("monte carlo needs trials >= 1");
    if (eps.sign() <= 0) throw ValidationError("eps must be positive");
    if (!(*cls.domain == *mu.domain()))
        throw DomainMismatch("class and measure live on different domains");
    if (threads < 1) threads = 1;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::uint64_t hits = 0;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            RngStream stream(seed, trial);
            SamplePair p;
            p.train = sample_iid(mu, m, stream);
            p.ghost = sample_iid(mu, m, stream);
            if (bad_event_contains(cls, c, m, eps, p)) ++hits;
        }
        return hits;
    };

    std::uint64_t hits = 0;
    if (threads == 1) {
        hits = run_range(0, trials);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::uint64_t lo = std::min<std::uint64_t>(trials, t * chunk);
            std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { partial[t] = run_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (std::uint64_t h : partial) hits += h;
    }

    EstimateReport report;
    report.mode = EstimateReport::Mode::monte_carlo;
    report.trials = trials;
    report.hits = hits;
    report.probability = static_cast<double>(hits) / static_cast<double>(trials);
    report.confidence_radius = hoeffding_radius(trials, delta_ci);
    report.delta_ci = delta_ci;
    report.seed = seed;
    report.m = m;
    report.eps = eps;
    detail::fill_bound(report, cls, m, eps, budgets, convention);
    report.bound_satisfied = report.bound >= report.probability;
    return report;
}

struct ExchangeReport {
    Rat probability;
    Rat swapped_probability;
    bool equal = false;
};

// Exact probability of the bad event versus the exact probability of the
// mask-swapped event {p : bad(swap(p, mask))}. Product symmetry makes these
// equal; the check is exact rational equality.
inline ExchangeReport exchangeability_check(const ParamClass& cls, const Target& c,
                                            const FiniteMeasure& mu, std::size_t m,
                                            const Rat& eps, const std::vector<bool>& mask,
                                            const Budgets& budgets = Budgets::defaults()) {
    validate_class(cls);
    if (mask.size() != m) throw ValidationError("swap mask length does not match m");
    Rat original;
    Rat swapped;
    for_each_pair(mu, m, budgets.enumeration_cap, [&](const SamplePair& p, const Rat& w) {
        if (bad_event_contains(cls, c, m, eps, p)) original += w;
        if (bad_event_contains(cls, c, m, eps, swap_coordinates(p, mask))) swapped += w;
    });
    return ExchangeReport{original, swapped, original == swapped};
}

// Sufficient realizable-case sample size:
// ceil((8/eps) * (d*log2(16/eps) + log2(2/delta))). A standard shape, fixed
// here as the artifact's convention; monotone in d, 1/eps, 1/delta.
inline long long pac_sample_complexity(int d, double eps, double delta) {
    if (d < 0) throw ValidationError("pac_sample_complexity needs d >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("pac eps must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("pac delta must lie in (0,1)");
    double value = (8.0 / eps) * (d * std::log2(16.0 / eps) + std::log2(2.0 / delta));
    return static_cast<long long>(std::ceil(value));
}

// Structural check behind the witness class: with C_A = {0} u {1_a : a in A},
// target 0, m = 1, eps = 1, the bad event holds at ((x),(y)) exactly when
// y is in A and x != y. Verified over every pair of domain points.
inline bool separation_witness_check(const DomainPtr& domain, const std::vector<int>& support) {
    ParamClass cls = singleton_witness_class(domain, support);
    Target c = Target::constant(0);
    std::set<int> in_support(support.begin(), support.end());
    Rat eps(1);
    for (const auto& x : domain->points()) {
        for (const auto& y : domain->points()) {
            SamplePair p{Sample{{x}}, Sample{{y}}};
            bool bad = bad_event_contains(cls, c, 1, eps, p);
            bool expected = in_support.count(y.id) != 0 && x.id != y.id;
            if (bad != expected) return false;
        }
    }
    return true;
}

}  // namespace ghostgap
