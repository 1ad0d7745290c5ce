#pragma once

// Bottleneck distance between persistence diagrams: the min-max matching
// cost where unmatched points are charged their distance to the diagonal
// and infinity minus infinity counts as zero. Points with infinite death
// can only match each other; they form a separate exact matching problem
// solved by sorted pairing before the finite part.

#include <algorithm>
#include <vector>

#include "prodpers/barcode.hpp"
#include "prodpers/core.hpp"

namespace prodpers {

// Diagram point (birth, death); derived from a bar by forgetting the
// interval's half-openness.
struct DiagramPoint {
    value_t birth = 0.0;
    value_t death = 0.0;

    bool essential() const { return std::isinf(death); }
};

// Per-degree multiset of diagram points.
class Diagram {
public:
    Diagram() = default;

    static Diagram from_barcode(const Barcode& barcode) {
        Diagram out;
        out.points_.resize(barcode.degree_count());
        for (std::size_t d = 0; d < barcode.degree_count(); ++d)
            for (const Interval& bar : barcode.bars(d))
                out.points_[d].push_back({bar.birth, bar.death});
        return out;
    }

    std::size_t degree_count() const { return points_.size(); }

    const std::vector<DiagramPoint>& points(std::size_t degree) const {
        static const std::vector<DiagramPoint> empty;
        return degree < points_.size() ? points_[degree] : empty;
    }

    void add(std::size_t degree, DiagramPoint point) {
        if (degree >= points_.size()) points_.resize(degree + 1);
        points_[degree].push_back(point);
    }

private:
    std::vector<std::vector<DiagramPoint>> points_;
};

namespace detail {

inline value_t diagonal_cost(const DiagramPoint& p) {
    return p.essential() ? kInf : (p.death - p.birth) / 2.0;
}

inline value_t transport_cost(const DiagramPoint& a, const DiagramPoint& b) {
    if (a.essential() != b.essential()) return kInf;
    const value_t death_gap = a.essential() ? 0.0 : std::fabs(a.death - b.death);
    return std::max(std::fabs(a.birth - b.birth), death_gap);
}

// Maximum bipartite matching (Kuhn augmenting paths with a greedy seed);
// left vertices are given by adjacency lists into [0, n_right).
inline std::size_t max_bipartite_matching(const std::vector<std::vector<std::uint32_t>>& adj,
                                          std::size_t n_right) {
    std::vector<std::int64_t> match_right(n_right, -1);
    std::vector<std::int64_t> match_left(adj.size(), -1);
    std::size_t matched = 0;
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (std::uint32_t v : adj[u])
            if (match_right[v] < 0) {
                match_right[v] = static_cast<std::int64_t>(u);
                match_left[u] = static_cast<std::int64_t>(v);
                ++matched;
                break;
            }
    std::vector<std::uint32_t> stamp(n_right, 0);
    std::uint32_t round = 0;
    auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::uint32_t v : adj[u]) {
            if (stamp[v] == round) continue;
            stamp[v] = round;
            if (match_right[v] < 0 || self(self, static_cast<std::size_t>(match_right[v]))) {
                match_right[v] = static_cast<std::int64_t>(u);
                match_left[u] = static_cast<std::int64_t>(v);
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < adj.size(); ++u) {
        if (match_left[u] >= 0) continue;
        ++round;
        if (augment(augment, u)) ++matched;
    }
    return matched;
}

// Feasibility at threshold t: every point whose diagonal charge exceeds t
// ("hard" point) must be matched to an opposite point at cost <= t, without
// reusing partners. By the Mendelsohn-Dulmage theorem a matching covering
// the hard points of both sides exists iff each side's hard points can be
// saturated into the full opposite diagram on their own.
class ThresholdMatcher {
public:
    ThresholdMatcher(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b)
        : a_(a), b_(b) {}

    bool feasible(value_t t) const {
        return side_saturates(a_, b_, t) && side_saturates(b_, a_, t);
    }

private:
    static bool side_saturates(const std::vector<DiagramPoint>& from,
                               const std::vector<DiagramPoint>& to, value_t t) {
        std::vector<std::vector<std::uint32_t>> adj;
        for (const auto& p : from) {
            if (diagonal_cost(p) <= t) continue;
            auto& edges = adj.emplace_back();
            for (std::uint32_t j = 0; j < to.size(); ++j)
                if (transport_cost(p, to[j]) <= t) edges.push_back(j);
        }
        return max_bipartite_matching(adj, to.size()) == adj.size();
    }

    const std::vector<DiagramPoint>& a_;
    const std::vector<DiagramPoint>& b_;
};

} // namespace detail

// Bottleneck distance between two degree slices. Exact combinatorial search:
// binary search over the candidate cost set with bipartite matching
// feasibility. Returns +inf when the essential-class counts differ.
inline value_t bottleneck_distance(const std::vector<DiagramPoint>& a,
                                   const std::vector<DiagramPoint>& b) {
    std::vector<value_t> essential_a, essential_b;
    std::vector<DiagramPoint> finite_a, finite_b;
    for (const auto& p : a)
        (p.essential() ? essential_a.push_back(p.birth) : (void)finite_a.push_back(p));
    for (const auto& p : b)
        (p.essential() ? essential_b.push_back(p.birth) : (void)finite_b.push_back(p));

    if (essential_a.size() != essential_b.size()) return kInf;

    // Essential points only match essential points (inf - inf = 0); the
    // min-max assignment on a line is the sorted pairing.
    value_t essential_cost = 0.0;
    std::sort(essential_a.begin(), essential_a.end());
    std::sort(essential_b.begin(), essential_b.end());
    for (std::size_t i = 0; i < essential_a.size(); ++i)
        essential_cost = std::max(essential_cost, std::fabs(essential_a[i] - essential_b[i]));

    if (finite_a.empty() && finite_b.empty()) return essential_cost;

    std::vector<value_t> candidates{0.0};
    for (const auto& p : finite_a) candidates.push_back(detail::diagonal_cost(p));
    for (const auto& p : finite_b) candidates.push_back(detail::diagonal_cost(p));
    for (const auto& p : finite_a)
        for (const auto& q : finite_b) candidates.push_back(detail::transport_cost(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    detail::ThresholdMatcher matcher(finite_a, finite_b);
    std::size_t lo = 0, hi = candidates.size() - 1;
    // The largest candidate (all points to the diagonal) is always feasible.
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matcher.feasible(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(essential_cost, candidates[lo]);
}

inline value_t bottleneck_distance(const Diagram& a, const Diagram& b, std::size_t degree) {
    return bottleneck_distance(a.points(degree), b.points(degree));
}

} // namespace prodpers
