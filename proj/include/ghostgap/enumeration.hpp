#pragma once

#include <cstdint>
#include <vector>

#include "ghostgap/domain.hpp"
#include "ghostgap/errors.hpp"

namespace ghostgap {

// Default enumeration cap: 10^7 tuples.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Streams every element of X^m x X^m exactly once, with its exact product
// weight under mu^{2m}. Weights sum to exactly 1. Single consumer.
class PairEnumerator {
public:
    PairEnumerator(const FiniteMeasure& mu, std::size_t m,
                   std::uint64_t cap = kDefaultEnumerationCap)
        : mu_(&mu), m_(m), digits_(2 * m, 0) {
        std::uint64_t n = mu.domain()->size();
        total_ = 1;
        for (std::size_t i = 0; i < 2 * m; ++i) {
            if (n != 0 && total_ > cap / n)
                throw CapExceeded("pair enumeration needs more than " + std::to_string(cap) +
                                  " tuples");
            total_ *= n;
        }
        if (total_ > cap)
            throw CapExceeded("pair enumeration needs more than " + std::to_string(cap) +
                              " tuples");
    }

    std::uint64_t total() const { return total_; }

    // Fills the next pair and its weight; returns false once exhausted.
    bool next(SamplePair& pair, Rat& weight) {
        if (emitted_ == total_) return false;
        const FiniteDomain& dom = *mu_->domain();
        pair.train.points.clear();
        pair.ghost.points.clear();
        pair.train.points.reserve(m_);
        pair.ghost.points.reserve(m_);
        weight = Rat::one();
        for (std::size_t i = 0; i < m_; ++i) {
            pair.train.points.push_back(dom.point(digits_[i]));
            weight *= mu_->weight(digits_[i]);
        }
        for (std::size_t i = 0; i < m_; ++i) {
            pair.ghost.points.push_back(dom.point(digits_[m_ + i]));
            weight *= mu_->weight(digits_[m_ + i]);
        }
        ++emitted_;
        advance();
        return true;
    }

private:
    const FiniteMeasure* mu_;
    std::size_t m_;
    std::vector<std::size_t> digits_;  // odometer over [0, n)^{2m}, train digits first
    std::uint64_t total_ = 1;
    std::uint64_t emitted_ = 0;

    void advance() {
        std::size_t n = mu_->domain()->size();
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (++digits_[i] < n) return;
            digits_[i] = 0;
        }
    }
};

template <typename Fn>
void for_each_pair(const FiniteMeasure& mu, std::size_t m, std::uint64_t cap, Fn&& fn) {
    PairEnumerator en(mu, m, cap);
    SamplePair p;
    Rat w;
    while (en.next(p, w)) fn(p, w);
}

}  // namespace ghostgap
