#pragma once

// Shared helpers for the test suites: seeded random instances and small
// enumeration utilities, independent of the library's probability paths.

#include <vector>

#include "ghostgap/concept_class.hpp"
#include "ghostgap/domain.hpp"
#include "ghostgap/enumeration.hpp"
#include "ghostgap/families.hpp"
#include "ghostgap/rng.hpp"

namespace testsupport {

using namespace ghostgap;

inline ParamClass random_table_class(const DomainPtr& domain, std::size_t n_params,
                                     RngStream& stream, std::string name = "random-table") {
    std::vector<std::vector<int>> rows;
    rows.reserve(n_params);
    for (std::size_t i = 0; i < n_params; ++i) {
        std::vector<int> row;
        row.reserve(domain->size());
        for (std::size_t j = 0; j < domain->size(); ++j)
            row.push_back(static_cast<int>(stream.next_below(2)));
        rows.push_back(std::move(row));
    }
    return table_class(domain, std::move(rows), std::move(name));
}

inline Target random_table_target(const DomainPtr& domain, RngStream& stream) {
    std::vector<int> labels;
    labels.reserve(domain->size());
    for (std::size_t j = 0; j < domain->size(); ++j)
        labels.push_back(static_cast<int>(stream.next_below(2)));
    return Target::from_table(domain, labels);
}

// All sample pairs of length m over the domain (uniform enumeration order,
// weights ignored).
inline std::vector<SamplePair> all_pairs(const DomainPtr& domain, std::size_t m) {
    std::vector<SamplePair> out;
    FiniteMeasure uniform = FiniteMeasure::uniform(domain);
    for_each_pair(uniform, m, kDefaultEnumerationCap,
                  [&](const SamplePair& p, const Rat&) { out.push_back(p); });
    return out;
}

}  // namespace testsupport
