#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "ghostgap/concept_class.hpp"
#include "ghostgap/enumeration.hpp"
#include "ghostgap/errors.hpp"

namespace ghostgap {

// Explicit knobs for the enumeration-heavy paths. GHOSTGAP_BUDGET, when set,
// replaces the three count defaults.
struct Budgets {
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::uint64_t subset_budget = 1'000'000;
    std::uint64_t eval_budget = 100'000'000;
    int bitvec_cap = 24;

    static Budgets defaults() {
        Budgets b;
        if (const char* env = std::getenv("GHOSTGAP_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) {
                b.enumeration_cap = v;
                b.subset_budget = v;
                b.eval_budget = v;
            }
        }
        return b;
    }
};

// Binomial coefficient, exact, overflow-checked.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;  // division is exact at each step
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw ArithmeticOverflow("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                     ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

// Sum_{i=0}^{min(d,m)} C(m, i), the growth-function upper bound for VC
// dimension d. Exact integer arithmetic.
inline std::uint64_t sauer_shelah(int d, int m) {
    if (d < 0 || m < 0) throw ValidationError("sauer_shelah needs d, m >= 0");
    int top = std::min(d, m);
    std::uint64_t sum = 0;
    for (int i = 0; i <= top; ++i) {
        std::uint64_t term = binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(i));
        if (sum > std::numeric_limits<std::uint64_t>::max() - term)
            throw ArithmeticOverflow("sauer_shelah sum exceeds 64 bits");
        sum += term;
    }
    return sum;
}

// The restriction of a class to a point set: the exact set of realized label
// vectors, bit-packed one word per labeling (bit i = label of pointset[i]).
struct DichotomySet {
    std::vector<DomainPoint> pointset;
    std::unordered_set<std::uint32_t> labelings;

    std::size_t count() const { return labelings.size(); }
};

namespace detail {

inline void check_dichotomy_budget(const ParamClass& cls,
                                   const std::vector<DomainPoint>& pts,
                                   const Budgets& budgets) {
    if (pts.size() > static_cast<std::size_t>(budgets.bitvec_cap))
        throw CapExceeded("point set of size " + std::to_string(pts.size()) +
                          " exceeds bit-vector cap " + std::to_string(budgets.bitvec_cap));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].id == pts[j].id)
                throw ValidationError("dichotomy point set must be duplicate-free");
    std::uint64_t evals = static_cast<std::uint64_t>(cls.size()) * pts.size();
    if (evals > budgets.eval_budget)
        throw BudgetExceeded("dichotomy scan needs " + std::to_string(evals) +
                             " evaluations, budget is " + std::to_string(budgets.eval_budget));
}

inline std::uint32_t labeling_word(const ParamClass& cls, std::size_t theta,
                                   const std::vector<DomainPoint>& pts) {
    std::uint32_t word = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (cls.eval(theta, pts[i]) != 0) word |= (std::uint32_t{1} << i);
    }
    return word;
}

}  // namespace detail

inline DichotomySet dichotomies(const ParamClass& cls, const std::vector<DomainPoint>& pts,
                                const Budgets& budgets = Budgets::defaults()) {
    validate_class(cls);
    detail::check_dichotomy_budget(cls, pts, budgets);
    DichotomySet out;
    out.pointset = pts;
    out.labelings.reserve(cls.size());
    for (std::size_t theta = 0; theta < cls.size(); ++theta)
        out.labelings.insert(detail::labeling_word(cls, theta, pts));
    return out;
}

// True iff all 2^k labelings are realized. Same scan as dichotomies but stops
// as soon as the set is full.
inline bool shatters(const ParamClass& cls, const std::vector<DomainPoint>& pts,
                     const Budgets& budgets = Budgets::defaults()) {
    validate_class(cls);
    detail::check_dichotomy_budget(cls, pts, budgets);
    std::uint64_t full = std::uint64_t{1} << pts.size();
    if (cls.size() < full) return false;  // fewer parameters than labelings
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(full);
    for (std::size_t theta = 0; theta < cls.size(); ++theta) {
        seen.insert(detail::labeling_word(cls, theta, pts));
        if (seen.size() == full) return true;
    }
    return false;
}

namespace detail {

// Lexicographic k-subset scan of [0, n); fn gets the index vector, returns
// false to stop early. Caller checks C(n, k) against the subset budget.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return;
        // advance
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

}  // namespace detail

struct VcResult {
    int value = 0;
    // True when every size up to the cap had a shattered subset, so the true
    // dimension may exceed the reported value.
    bool saturated_at_cap = false;
};

// Exact VC dimension by ascending subset search: downward closure of
// shattering means the first size with no shattered subset ends the search.
inline VcResult vc_dimension(const ParamClass& cls, int cap,
                             const Budgets& budgets = Budgets::defaults()) {
    validate_class(cls);
    if (cap < 0) throw ValidationError("vc_dimension cap must be >= 0");
    std::size_t n = cls.domain->size();
    int limit = std::min<int>(cap, static_cast<int>(n));
    for (int k = 1; k <= limit; ++k) {
        std::uint64_t subsets = binomial(n, static_cast<std::uint64_t>(k));
        if (subsets > budgets.subset_budget)
            throw BudgetExceeded("vc_dimension at k=" + std::to_string(k) + " needs " +
                                     std::to_string(subsets) + " subsets, budget is " +
                                     std::to_string(budgets.subset_budget),
                                 k - 1);
        bool found = false;
        detail::for_each_subset(n, static_cast<std::size_t>(k),
                                [&](const std::vector<std::size_t>& idx) {
                                    std::vector<DomainPoint> pts;
                                    pts.reserve(idx.size());
                                    for (std::size_t i : idx) pts.push_back(cls.domain->point(i));
                                    if (shatters(cls, pts, budgets)) {
                                        found = true;
                                        return false;
                                    }
                                    return true;
                                });
        if (!found) return VcResult{k - 1, false};
    }
    // Every size up to the limit is shattered. Exact when the whole domain was
    // searched, saturated when the cap cut the search short.
    return VcResult{limit, cap < static_cast<int>(n)};
}

// Max number of realized labelings over all m-subsets of the domain. Exact.
inline std::uint64_t growth_function(const ParamClass& cls, int m,
                                     const Budgets& budgets = Budgets::defaults()) {
    validate_class(cls);
    if (m < 0) throw ValidationError("growth_function needs m >= 0");
    std::size_t n = cls.domain->size();
    if (static_cast<std::size_t>(m) > n)
        throw ValidationError("growth_function needs m <= domain size");
    if (m == 0) return 1;
    std::uint64_t subsets = binomial(n, static_cast<std::uint64_t>(m));
    if (subsets > budgets.subset_budget)
        throw BudgetExceeded("growth_function at m=" + std::to_string(m) + " needs " +
                             std::to_string(subsets) + " subsets, budget is " +
                             std::to_string(budgets.subset_budget));
    std::uint64_t best = 0;
    std::uint64_t full = std::uint64_t{1} << m;
    detail::for_each_subset(n, static_cast<std::size_t>(m),
                            [&](const std::vector<std::size_t>& idx) {
                                std::vector<DomainPoint> pts;
                                pts.reserve(idx.size());
                                for (std::size_t i : idx) pts.push_back(cls.domain->point(i));
                                std::uint64_t c = dichotomies(cls, pts, budgets).count();
                                if (c > best) best = c;
                                return best < full;  // cannot beat 2^m
                            });
    return best;
}

// Growth evaluated at min(m, |domain|): repeated points never add labelings,
// so this equals the growth function of the class at m on its finite domain.
inline std::uint64_t growth_function_clamped(const ParamClass& cls, int m,
                                             const Budgets& budgets = Budgets::defaults()) {
    int clamped = std::min<int>(m, static_cast<int>(cls.domain->size()));
    return growth_function(cls, clamped, budgets);
}

}  // namespace ghostgap
