#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghostgap/domain.hpp"
#include "ghostgap/errors.hpp"
#include "ghostgap/rational.hpp"

namespace ghostgap {

// A concept class presented as an ordered finite parameter list plus a total,
// deterministic evaluator (theta index, point) -> {0,1}. Immutable after
// construction; evaluators must be re-entrant.
struct ParamClass {
    DomainPtr domain;
    std::vector<std::string> param_names;
    std::function<int(std::size_t, const DomainPoint&)> evaluator;
    std::string name;

    std::size_t size() const { return param_names.size(); }

    int eval(std::size_t theta, const DomainPoint& x) const {
        return evaluator(theta, x);
    }
};

inline void validate_class(const ParamClass& cls) {
    if (!cls.domain) throw ValidationError("class '" + cls.name + "' has no domain");
    if (cls.param_names.empty())
        throw ValidationError("class '" + cls.name + "' has no parameters");
    if (!cls.evaluator) throw ValidationError("class '" + cls.name + "' has no evaluator");
}

inline void require_same_domain(const ParamClass& a, const ParamClass& b,
                                const char* context) {
    if (!(*a.domain == *b.domain))
        throw DomainMismatch(std::string(context) + ": classes '" + a.name + "' and '" +
                             b.name + "' live on different domains");
}

// Labeling function the learner must match. realizable_ref records membership
// in a class when the target was taken from one; the labeler then agrees
// pointwise with that hypothesis by construction.
struct Target {
    std::function<int(const DomainPoint&)> labeler;
    std::optional<std::size_t> realizable_ref;

    int operator()(const DomainPoint& x) const { return labeler(x); }

    static Target constant(int label) {
        return Target{[label](const DomainPoint&) { return label; }, std::nullopt};
    }

    static Target from_table(const DomainPtr& domain, std::vector<int> labels) {
        if (labels.size() != domain->size())
            throw ValidationError("target table needs one label per domain point");
        for (int v : labels)
            if (v != 0 && v != 1) throw ValidationError("target labels must be 0 or 1");
        auto dom = domain;
        return Target{[dom, labels = std::move(labels)](const DomainPoint& x) {
                          return labels[dom->index_of_id(x.id)];
                      },
                      std::nullopt};
    }

    static Target realizable(const ParamClass& cls, std::size_t theta) {
        if (theta >= cls.size())
            throw ValidationError("realizable target index out of range");
        auto shared = std::make_shared<ParamClass>(cls);
        return Target{[shared, theta](const DomainPoint& x) { return shared->eval(theta, x); },
                      theta};
    }
};

// Gap values live on the finite grid {k/m : |k| <= m} (0 for m = 0); the Rat
// canonical form keeps the denominator a divisor of m automatically.
using GapValue = Rat;

// Empirical zero-one error of hypothesis theta against target c on S.
// Empty-sample average is defined as 0.
inline Rat empirical_error(const ParamClass& cls, std::size_t theta, const Target& c,
                           const Sample& s) {
    if (theta >= cls.size()) throw ValidationError("parameter index out of range");
    if (s.size() == 0) return Rat::zero();
    long long mismatches = 0;
    for (const auto& x : s.points) {
        if (cls.eval(theta, x) != c(x)) ++mismatches;
    }
    return Rat(mismatches, static_cast<long long>(s.size()));
}

// One-sided ghost gap: ghost empirical error minus training empirical error.
inline GapValue ghost_gap(const ParamClass& cls, std::size_t theta, const Target& c,
                          const SamplePair& p) {
    validate_pair(p);
    return empirical_error(cls, theta, c, p.ghost) - empirical_error(cls, theta, c, p.train);
}

// Membership of (theta, p) in the witness set: gap >= eps/2, closed
// inequality, exact rational comparison.
inline bool witness_contains(const ParamClass& cls, std::size_t theta, const Target& c,
                             std::size_t m, const Rat& eps, const SamplePair& p) {
    if (eps.sign() <= 0) throw ValidationError("eps must be positive");
    if (p.length() != m) throw ValidationError("sample pair length does not match m");
    return ghost_gap(cls, theta, c, p) >= eps / Rat(2);
}

// Membership of p in the bad event: some hypothesis has gap >= eps/2.
// Short-circuiting scan over the parameter list.
inline bool bad_event_contains(const ParamClass& cls, const Target& c, std::size_t m,
                               const Rat& eps, const SamplePair& p) {
    if (eps.sign() <= 0) throw ValidationError("eps must be positive");
    if (p.length() != m) throw ValidationError("sample pair length does not match m");
    Rat threshold = eps / Rat(2);
    for (std::size_t theta = 0; theta < cls.size(); ++theta) {
        if (ghost_gap(cls, theta, c, p) >= threshold) return true;
    }
    return false;
}

// Largest ghost gap over the parameter list; attained since the list is
// finite. The bad event at eps is exactly the superlevel set at eps/2.
inline GapValue sup_gap(const ParamClass& cls, const Target& c, std::size_t m,
                        const SamplePair& p) {
    if (p.length() != m) throw ValidationError("sample pair length does not match m");
    validate_class(cls);
    Rat best = ghost_gap(cls, 0, c, p);
    for (std::size_t theta = 1; theta < cls.size(); ++theta) {
        Rat g = ghost_gap(cls, theta, c, p);
        if (g > best) best = g;
    }
    return best;
}

}  // namespace ghostgap
