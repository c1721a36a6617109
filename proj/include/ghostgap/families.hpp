#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ghostgap/concept_class.hpp"

namespace ghostgap {

// Built-in grid families. Thresholds and intervals require coordinates.

// e_theta(x) = 1[x >= theta], one parameter per grid coordinate.
inline ParamClass threshold_class(DomainPtr domain) {
    if (!domain->has_coords())
        throw ValidationError("threshold class needs a coordinate grid");
    std::vector<std::string> names;
    std::vector<Rat> cuts;
    names.reserve(domain->size());
    cuts.reserve(domain->size());
    for (const auto& p : domain->points()) {
        names.push_back("ge " + p.coord->to_string());
        cuts.push_back(*p.coord);
    }
    return ParamClass{
        std::move(domain), std::move(names),
        [cuts = std::move(cuts)](std::size_t theta, const DomainPoint& x) {
            return *x.coord >= cuts[theta] ? 1 : 0;
        },
        "threshold"};
}

// e_(lo,hi)(x) = 1[lo <= x <= hi] over all endpoint pairs lo <= hi.
inline ParamClass interval_class(DomainPtr domain) {
    if (!domain->has_coords())
        throw ValidationError("interval class needs a coordinate grid");
    std::vector<std::string> names;
    std::vector<std::pair<Rat, Rat>> bounds;
    for (std::size_t i = 0; i < domain->size(); ++i) {
        for (std::size_t j = i; j < domain->size(); ++j) {
            const Rat& lo = *domain->point(i).coord;
            const Rat& hi = *domain->point(j).coord;
            names.push_back("[" + lo.to_string() + "," + hi.to_string() + "]");
            bounds.emplace_back(lo, hi);
        }
    }
    return ParamClass{
        std::move(domain), std::move(names),
        [bounds = std::move(bounds)](std::size_t theta, const DomainPoint& x) {
            const auto& [lo, hi] = bounds[theta];
            return (lo <= *x.coord && *x.coord <= hi) ? 1 : 0;
        },
        "interval"};
}

// Explicit labels, rows[theta][point_index] in {0,1}.
inline ParamClass table_class(DomainPtr domain, std::vector<std::vector<int>> rows,
                              std::string name = "table") {
    if (rows.empty()) throw ValidationError("table class needs at least one row");
    for (const auto& row : rows) {
        if (row.size() != domain->size())
            throw ValidationError("table row length does not match domain size");
        for (int v : row)
            if (v != 0 && v != 1) throw ValidationError("table labels must be 0 or 1");
    }
    std::vector<std::string> names;
    names.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) names.push_back("row" + std::to_string(i));
    auto dom = domain;
    return ParamClass{
        std::move(domain), std::move(names),
        [dom, rows = std::move(rows)](std::size_t theta, const DomainPoint& x) {
            return rows[theta][dom->index_of_id(x.id)];
        },
        std::move(name)};
}

}  // namespace ghostgap
