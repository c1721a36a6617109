#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghostgap/errors.hpp"
#include "ghostgap/rational.hpp"
#include "ghostgap/rng.hpp"

namespace ghostgap {

// One point of a finite domain. coord is present for grid-discretized
// families (thresholds, intervals) and absent for purely symbolic domains.
struct DomainPoint {
    int id = 0;
    std::optional<Rat> coord;

    friend bool operator==(const DomainPoint& a, const DomainPoint& b) {
        return a.id == b.id && a.coord == b.coord;
    }
};

class FiniteDomain {
public:
    explicit FiniteDomain(std::vector<DomainPoint> points) : points_(std::move(points)) {
        if (points_.empty()) throw ValidationError("domain must be nonempty");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!index_by_id_.emplace(points_[i].id, i).second)
                throw ValidationError("duplicate domain point id " + std::to_string(points_[i].id));
        }
        // If coords are present they must be total and strictly increasing in
        // listing order, so id order and coord order agree.
        bool any_coord = false;
        for (const auto& p : points_) any_coord = any_coord || p.coord.has_value();
        if (any_coord) {
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (!points_[i].coord)
                    throw ValidationError("domain mixes coordinate and coordinate-free points");
                if (i > 0 && !(*points_[i - 1].coord < *points_[i].coord))
                    throw ValidationError("domain coordinates must be strictly increasing");
            }
        }
        has_coords_ = any_coord;
    }

    // n evenly spaced rational coordinates on [lo, hi], ids 0..n-1.
    static std::shared_ptr<const FiniteDomain> grid(const Rat& lo, const Rat& hi, int n) {
        if (n < 1) throw ValidationError("grid needs at least one point");
        if (n > 1 && !(lo < hi)) throw ValidationError("grid needs lo < hi");
        std::vector<DomainPoint> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Rat coord = n == 1 ? lo : lo + (hi - lo) * Rat(i, n - 1);
            pts.push_back(DomainPoint{i, coord});
        }
        return std::make_shared<const FiniteDomain>(std::move(pts));
    }

    // ids 0..n-1 with no coordinates.
    static std::shared_ptr<const FiniteDomain> indexed(int n) {
        if (n < 1) throw ValidationError("domain needs at least one point");
        std::vector<DomainPoint> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pts.push_back(DomainPoint{i, std::nullopt});
        return std::make_shared<const FiniteDomain>(std::move(pts));
    }

    std::size_t size() const { return points_.size(); }
    bool has_coords() const { return has_coords_; }
    const DomainPoint& point(std::size_t index) const { return points_.at(index); }
    const std::vector<DomainPoint>& points() const { return points_; }

    std::size_t index_of_id(int id) const {
        auto it = index_by_id_.find(id);
        if (it == index_by_id_.end())
            throw ValidationError("unknown domain point id " + std::to_string(id));
        return it->second;
    }
    bool contains_id(int id) const { return index_by_id_.count(id) != 0; }

    friend bool operator==(const FiniteDomain& a, const FiniteDomain& b) {
        return a.points_ == b.points_;
    }

private:
    std::vector<DomainPoint> points_;
    std::unordered_map<int, std::size_t> index_by_id_;
    bool has_coords_ = false;
};

using DomainPtr = std::shared_ptr<const FiniteDomain>;

// Exact probability measure on a finite domain: nonnegative rational weights
// summing to exactly 1.
class FiniteMeasure {
public:
    FiniteMeasure(DomainPtr domain, std::vector<Rat> weights)
        : domain_(std::move(domain)), weights_(std::move(weights)) {
        if (!domain_) throw ValidationError("measure needs a domain");
        if (weights_.size() != domain_->size())
            throw ValidationError("measure needs one weight per domain point");
        Rat total;
        for (const auto& w : weights_) {
            if (w.sign() < 0) throw ValidationError("negative weight " + w.to_string());
            total += w;
        }
        if (total != Rat::one())
            throw ValidationError("weights sum to " + total.to_string() + ", expected 1");
        build_sampler_table();
    }

    static FiniteMeasure uniform(DomainPtr domain) {
        if (!domain) throw ValidationError("measure needs a domain");
        auto n = static_cast<long long>(domain->size());
        std::vector<Rat> w(domain->size(), Rat(1, n));
        return FiniteMeasure(std::move(domain), std::move(w));
    }

    const DomainPtr& domain() const { return domain_; }
    const Rat& weight(std::size_t index) const { return weights_.at(index); }
    const std::vector<Rat>& weights() const { return weights_; }

    // Draws one point index; exact w.r.t. the rational weights (weights are
    // rescaled to integers over their common denominator, and the uniform
    // integer draw is rejection-unbiased). Zero-weight points are never drawn.
    std::size_t draw_index(RngStream& stream) const {
        std::uint64_t r = stream.next_below(common_denominator_);
        // First index with cumulative > r.
        std::size_t lo = 0, hi = cumulative_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative_[mid] > r)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    std::uint64_t common_denominator() const { return common_denominator_; }

private:
    DomainPtr domain_;
    std::vector<Rat> weights_;
    std::uint64_t common_denominator_ = 1;
    std::vector<std::uint64_t> cumulative_;  // inclusive prefix sums, last == denominator

    void build_sampler_table() {
        using detail::int128;
        int128 lcm = 1;
        for (const auto& w : weights_) {
            int128 d = w.den();
            int128 g = detail::gcd128(lcm, d);
            lcm = (lcm / g) * d;
            if (lcm > static_cast<int128>(std::numeric_limits<std::uint64_t>::max()))
                throw ArithmeticOverflow("common denominator of weights exceeds 64 bits");
        }
        common_denominator_ = static_cast<std::uint64_t>(lcm);
        cumulative_.reserve(weights_.size());
        std::uint64_t acc = 0;
        for (const auto& w : weights_) {
            int128 scaled = (lcm / w.den()) * static_cast<int128>(w.num());
            acc += static_cast<std::uint64_t>(scaled);
            cumulative_.push_back(acc);
        }
        // Exact sum-to-one means the scaled weights fill the denominator.
        if (acc != common_denominator_)
            throw InternalError("scaled weights do not sum to the common denominator");
    }
};

// Ordered sample; repetition allowed, order significant, m = 0 permitted.
struct Sample {
    std::vector<DomainPoint> points;

    std::size_t size() const { return points.size(); }
    const DomainPoint& operator[](std::size_t i) const { return points[i]; }
};

// Training sample and ghost sample of equal length.
struct SamplePair {
    Sample train;
    Sample ghost;

    std::size_t length() const { return train.size(); }
};

inline void validate_pair(const SamplePair& p) {
    if (p.train.size() != p.ghost.size())
        throw ValidationError("sample pair with unequal lengths");
}

// m IID draws from mu; a deterministic function of the stream state.
inline Sample sample_iid(const FiniteMeasure& mu, std::size_t m, RngStream& stream) {
    Sample s;
    s.points.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        s.points.push_back(mu.domain()->point(mu.draw_index(stream)));
    }
    return s;
}

// Swaps train[i] and ghost[i] wherever mask[i] is set. mask.size() == m.
inline SamplePair swap_coordinates(const SamplePair& p, const std::vector<bool>& mask) {
    validate_pair(p);
    if (mask.size() != p.length())
        throw ValidationError("swap mask length does not match sample length");
    SamplePair out = p;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) std::swap(out.train.points[i], out.ghost.points[i]);
    }
    return out;
}

}  // namespace ghostgap
