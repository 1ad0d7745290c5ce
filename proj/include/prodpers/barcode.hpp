#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "prodpers/interval.hpp"

namespace prodpers {

// Graded multiset of intervals, one multiset per homology degree.
class Barcode {
public:
    Barcode() = default;
    explicit Barcode(std::size_t degrees) : bars_(degrees) {}

    std::size_t degree_count() const { return bars_.size(); }

    int max_degree() const { return static_cast<int>(bars_.size()) - 1; }

    const std::vector<Interval>& bars(std::size_t degree) const {
        static const std::vector<Interval> empty;
        return degree < bars_.size() ? bars_[degree] : empty;
    }

    void add(std::size_t degree, const Interval& bar) {
        if (degree >= bars_.size()) bars_.resize(degree + 1);
        bars_[degree].push_back(bar);
    }

    void add(std::size_t degree, const std::optional<Interval>& bar) {
        if (bar) add(degree, *bar);
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& d : bars_) n += d.size();
        return n;
    }

    // Drops degrees above the given one; used when a complex was truncated
    // and higher degrees would carry spurious essential classes.
    Barcode truncated(std::size_t max_degree) const {
        Barcode out;
        for (std::size_t d = 0; d <= max_degree && d < bars_.size(); ++d)
            for (const auto& bar : bars_[d]) out.add(d, bar);
        return out;
    }

    void sort() {
        for (auto& d : bars_)
            std::sort(d.begin(), d.end(), [](const Interval& x, const Interval& y) {
                return x.birth != y.birth ? x.birth < y.birth : x.death < y.death;
            });
    }

private:
    std::vector<std::vector<Interval>> bars_;
};

// Number of intervals in the given degree containing t. An infinite t counts
// the essential classes.
inline std::size_t pointwise_rank(const Barcode& barcode, std::size_t degree, value_t t) {
    std::size_t rank = 0;
    for (const auto& bar : barcode.bars(degree)) {
        if (std::isinf(t)) {
            if (bar.essential()) ++rank;
        } else if (bar.birth <= t && t < bar.death) {
            ++rank;
        }
    }
    return rank;
}

// Multiset equality of bars within eps on endpoints, degree by degree.
inline bool barcodes_match(const Barcode& lhs, const Barcode& rhs,
                           value_t eps = kDefaultTolerance) {
    const std::size_t degrees = std::max(lhs.degree_count(), rhs.degree_count());
    for (std::size_t d = 0; d < degrees; ++d) {
        std::vector<Interval> a = lhs.bars(d), b = rhs.bars(d);
        if (a.size() != b.size()) return false;
        auto by_endpoints = [](const Interval& x, const Interval& y) {
            return x.birth != y.birth ? x.birth < y.birth : x.death < y.death;
        };
        std::sort(a.begin(), a.end(), by_endpoints);
        std::sort(b.begin(), b.end(), by_endpoints);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!approx_eq(a[i], b[i], eps)) return false;
    }
    return true;
}

} // namespace prodpers
