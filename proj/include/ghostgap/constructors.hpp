#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ghostgap/concept_class.hpp"
#include "ghostgap/families.hpp"

namespace ghostgap {

// A router is itself a parameterized class: route(rho, x) in {0,1} selects
// which branch labels x.
using RouterClass = ParamClass;

// Patched class on the product parameter space Theta1 x Theta2 x P:
// evaluates e1(theta1, x) where route(rho, x) = 1 and e2(theta2, x) elsewhere.
// Parameter order is theta1-major, then theta2, then rho.
inline ParamClass patch_class(const ParamClass& c1, const ParamClass& c2,
                              const RouterClass& r, std::string name = "patch") {
    validate_class(c1);
    validate_class(c2);
    validate_class(r);
    require_same_domain(c1, c2, "patch");
    require_same_domain(c1, r, "patch");

    auto left = std::make_shared<ParamClass>(c1);
    auto right = std::make_shared<ParamClass>(c2);
    auto router = std::make_shared<ParamClass>(r);
    std::size_t n2 = right->size();
    std::size_t nr = router->size();

    std::vector<std::string> names;
    names.reserve(left->size() * n2 * nr);
    for (const auto& a : left->param_names)
        for (const auto& b : right->param_names)
            for (const auto& c : router->param_names)
                names.push_back("(" + a + "|" + b + "|" + c + ")");

    return ParamClass{
        c1.domain, std::move(names),
        [left, right, router, n2, nr](std::size_t theta, const DomainPoint& x) {
            std::size_t rho = theta % nr;
            std::size_t rest = theta / nr;
            std::size_t t2 = rest % n2;
            std::size_t t1 = rest / n2;
            return router->eval(rho, x) == 1 ? left->eval(t1, x) : right->eval(t2, x);
        },
        std::move(name)};
}

// Single-router-parameter region indicator.
inline RouterClass region_router(const DomainPtr& domain, const std::vector<int>& region_ids,
                                 std::string router_name = "region") {
    std::set<int> region;
    for (int id : region_ids) {
        if (!domain->contains_id(id))
            throw ValidationError("region id " + std::to_string(id) + " not in domain");
        region.insert(id);
    }
    return ParamClass{
        domain, {std::move(router_name)},
        [region = std::move(region)](std::size_t, const DomainPoint& x) {
            return region.count(x.id) ? 1 : 0;
        },
        "region-router"};
}

// Fixed-region interpolation: c1 on the region, c2 on its complement.
// Exactly patching with a one-parameter router.
inline ParamClass interp_fixed(const ParamClass& c1, const ParamClass& c2,
                               const std::vector<int>& region_ids) {
    require_same_domain(c1, c2, "interp_fixed");
    return patch_class(c1, c2, region_router(c1.domain, region_ids), "interp_fixed");
}

// Finite family of regions; router parameter n selects region A_n, giving
// c1 on A_n and c2 elsewhere.
inline ParamClass interp_countable(const ParamClass& c1, const ParamClass& c2,
                                   const std::vector<std::vector<int>>& regions) {
    require_same_domain(c1, c2, "interp_family");
    if (regions.empty()) throw EmptyFamily("interp_family needs at least one region");
    std::vector<std::set<int>> sets;
    std::vector<std::string> names;
    sets.reserve(regions.size());
    for (std::size_t n = 0; n < regions.size(); ++n) {
        std::set<int> region;
        for (int id : regions[n]) {
            if (!c1.domain->contains_id(id))
                throw ValidationError("region id " + std::to_string(id) + " not in domain");
            region.insert(id);
        }
        sets.push_back(std::move(region));
        names.push_back("A" + std::to_string(n));
    }
    RouterClass router{
        c1.domain, std::move(names),
        [sets = std::move(sets)](std::size_t n, const DomainPoint& x) {
            return sets[n].count(x.id) ? 1 : 0;
        },
        "family-router"};
    return patch_class(c1, c2, router, "interp_family");
}

// The agreement relation {(i, j) : pi1[i] == pi2[j]}, materialized eagerly in
// lexicographic order.
inline std::vector<std::pair<std::size_t, std::size_t>> agreement_relation(
    const std::vector<long long>& pi1, const std::vector<long long>& pi2) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < pi1.size(); ++i)
        for (std::size_t j = 0; j < pi2.size(); ++j)
            if (pi1[i] == pi2[j]) pairs.emplace_back(i, j);
    return pairs;
}

// merge(theta1, theta2, x) -> {0,1}
using MergeFn = std::function<int(std::size_t, std::size_t, const DomainPoint&)>;

// Fiber-product amalgamation: parameters are exactly the agreement pairs,
// labeled by the merge map. (The usual symbol for the merge map collides with
// the sample size, hence "merge".)
inline ParamClass amalg_class(const ParamClass& c1, const ParamClass& c2,
                              const std::vector<long long>& pi1,
                              const std::vector<long long>& pi2, MergeFn merge,
                              std::string name = "amalg") {
    validate_class(c1);
    validate_class(c2);
    require_same_domain(c1, c2, "amalg");
    if (pi1.size() != c1.size() || pi2.size() != c2.size())
        throw ValidationError("amalg projections must tag every parameter");
    auto pairs = agreement_relation(pi1, pi2);
    if (pairs.empty())
        throw EmptyFiberProduct("amalg fiber product is empty: no parameters agree");

    std::vector<std::string> names;
    names.reserve(pairs.size());
    for (const auto& [i, j] : pairs)
        names.push_back("(" + c1.param_names[i] + "," + c2.param_names[j] + ")");

    return ParamClass{
        c1.domain, std::move(names),
        [pairs = std::move(pairs), merge = std::move(merge)](std::size_t theta,
                                                             const DomainPoint& x) {
            const auto& [i, j] = pairs[theta];
            return merge(i, j, x);
        },
        std::move(name)};
}

// Canonical merge maps for amalgamation.
inline MergeFn merge_left(const ParamClass& c1) {
    auto left = std::make_shared<ParamClass>(c1);
    return [left](std::size_t i, std::size_t, const DomainPoint& x) { return left->eval(i, x); };
}
inline MergeFn merge_right(const ParamClass& c2) {
    auto right = std::make_shared<ParamClass>(c2);
    return [right](std::size_t, std::size_t j, const DomainPoint& x) { return right->eval(j, x); };
}
inline MergeFn merge_xor(const ParamClass& c1, const ParamClass& c2) {
    auto left = std::make_shared<ParamClass>(c1);
    auto right = std::make_shared<ParamClass>(c2);
    return [left, right](std::size_t i, std::size_t j, const DomainPoint& x) {
        return left->eval(i, x) ^ right->eval(j, x);
    };
}

// Witness class {0} union {1_{a} : a in support}. Parameter 0 is the zero
// concept; the support may be empty.
inline ParamClass singleton_witness_class(DomainPtr domain, const std::vector<int>& support_ids,
                                          std::string name = "singleton-witness") {
    std::vector<int> support;
    std::vector<std::string> names{"zero"};
    for (int id : support_ids) {
        if (!domain->contains_id(id))
            throw ValidationError("support id " + std::to_string(id) + " not in domain");
        if (std::find(support.begin(), support.end(), id) != support.end())
            throw ValidationError("duplicate support id " + std::to_string(id));
        support.push_back(id);
        names.push_back("ind " + std::to_string(id));
    }
    return ParamClass{
        std::move(domain), std::move(names),
        [support = std::move(support)](std::size_t theta, const DomainPoint& x) {
            if (theta == 0) return 0;
            return x.id == support[theta - 1] ? 1 : 0;
        },
        std::move(name)};
}

// Drops parameters that duplicate an earlier parameter's labeling. Utility
// for combinatorics; bad-event semantics never need it.
inline ParamClass dedup_class(const ParamClass& cls) {
    validate_class(cls);
    std::vector<std::vector<int>> seen;
    std::vector<std::size_t> keep;
    for (std::size_t theta = 0; theta < cls.size(); ++theta) {
        std::vector<int> row;
        row.reserve(cls.domain->size());
        for (const auto& x : cls.domain->points()) row.push_back(cls.eval(theta, x));
        if (std::find(seen.begin(), seen.end(), row) == seen.end()) {
            seen.push_back(std::move(row));
            keep.push_back(theta);
        }
    }
    auto base = std::make_shared<ParamClass>(cls);
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (std::size_t idx : keep) names.push_back(cls.param_names[idx]);
    return ParamClass{
        cls.domain, std::move(names),
        [base, keep = std::move(keep)](std::size_t theta, const DomainPoint& x) {
            return base->eval(keep[theta], x);
        },
        cls.name + "-dedup"};
}

}  // namespace ghostgap
