#pragma once

// Vietoris-Rips filtration of a finite metric space: all simplices of
// dimension <= max_dim whose diameter is <= max_scale, filtered by diameter.
// Simplices are identified by their colexicographic rank in the binomial
// numbering system, so face lookup needs no per-simplex hashing.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prodpers/complex.hpp"
#include "prodpers/metric.hpp"

namespace prodpers {

namespace detail {

class BinomialTable {
public:
    BinomialTable(std::size_t n, std::size_t k) : k_(k + 1), table_((n + 1) * (k + 1), 0) {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t j = 1; j <= k && j <= i; ++j)
                at(i, j) = at(i - 1, j - 1) + (i - 1 >= j ? at(i - 1, j) : 0);
        }
    }

    std::uint64_t operator()(std::size_t n, std::size_t k) const {
        return k < k_ ? table_[n * k_ + k] : 0;
    }

private:
    std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * k_ + k]; }
    std::size_t k_;
    std::vector<std::uint64_t> table_;
};

// Colex rank of a strictly increasing vertex tuple: sum of C(v_i, i+1).
inline std::uint64_t colex_rank(const std::vector<std::uint32_t>& vertices,
                                const BinomialTable& binomial) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) rank += binomial(vertices[i], i + 1);
    return rank;
}

} // namespace detail

inline FilteredComplex vietoris_rips(const FiniteMetricSpace& m, int max_dim,
                                     value_t max_scale = kInf) {
    if (max_dim < 0) throw std::invalid_argument("vietoris_rips requires max_dim >= 0");
    const std::size_t n = m.size();
    const int top = max_dim;
    detail::BinomialTable binomial(n, static_cast<std::size_t>(top) + 1);

    // Per dimension: sorted colex ranks, diameters, and the dense cell index
    // of each simplex (ranks are enumerated in increasing colex order below).
    std::vector<std::vector<std::uint64_t>> ranks(top + 1);
    std::vector<std::vector<value_t>> diameters(top + 1);

    std::vector<std::uint32_t> simplex;
    // Depth-first clique enumeration: extend by vertices larger than the
    // current maximum, tracking the running diameter.
    auto extend = [&](auto&& self, std::uint32_t next_min, value_t diam, int dim) -> void {
        if (dim >= top) return;
        for (std::uint32_t v = next_min; v < n; ++v) {
            value_t d = diam;
            bool ok = true;
            for (std::uint32_t u : simplex) {
                const value_t duv = m(u, v);
                if (duv > max_scale) { ok = false; break; }
                d = std::max(d, duv);
            }
            if (!ok || d > max_scale) continue;
            simplex.push_back(v);
            ranks[dim + 1].push_back(detail::colex_rank(simplex, binomial));
            diameters[dim + 1].push_back(d);
            self(self, v + 1, d, dim + 1);
            simplex.pop_back();
        }
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        simplex.assign(1, v);
        ranks[0].push_back(v);
        diameters[0].push_back(0.0);
        extend(extend, v + 1, 0.0, 0);
    }

    // The enumeration is not colex-sorted per dimension; sort once so faces
    // can be found by binary search.
    for (int d = 0; d <= top; ++d) {
        std::vector<std::uint32_t> perm(ranks[d].size());
        for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return ranks[d][a] < ranks[d][b]; });
        std::vector<std::uint64_t> sorted_ranks(perm.size());
        std::vector<value_t> sorted_diams(perm.size());
        for (std::uint32_t i = 0; i < perm.size(); ++i) {
            sorted_ranks[i] = ranks[d][perm[i]];
            sorted_diams[i] = diameters[d][perm[i]];
        }
        ranks[d].swap(sorted_ranks);
        diameters[d].swap(sorted_diams);
    }

    std::vector<std::size_t> offset(top + 2, 0);
    for (int d = 0; d <= top; ++d) offset[d + 1] = offset[d] + ranks[d].size();

    FilteredComplex out;
    std::size_t boundary_entries = 0;
    for (int d = 1; d <= top; ++d) boundary_entries += ranks[d].size() * (d + 1);
    out.reserve(offset[top + 1], boundary_entries);

    auto index_of = [&](int d, std::uint64_t rank) -> std::uint32_t {
        const auto& r = ranks[d];
        const auto it = std::lower_bound(r.begin(), r.end(), rank);
        return static_cast<std::uint32_t>(offset[d] + (it - r.begin()));
    };

    // Unrank: recover vertices from a colex rank to emit faces.
    std::vector<std::uint32_t> vertices;
    auto unrank = [&](std::uint64_t rank, int d) {
        vertices.assign(d + 1, 0);
        std::uint32_t v = static_cast<std::uint32_t>(n);
        for (int i = d; i >= 0; --i) {
            while (binomial(v, i + 1) > rank) --v;
            vertices[i] = v;
            rank -= binomial(v, i + 1);
        }
    };

    std::vector<std::pair<std::uint32_t, std::int32_t>> boundary;
    std::vector<std::uint32_t> face;
    for (int d = 0; d <= top; ++d) {
        for (std::size_t i = 0; i < ranks[d].size(); ++i) {
            boundary.clear();
            if (d > 0) {
                unrank(ranks[d][i], d);
                for (int drop = 0; drop <= d; ++drop) {
                    face.clear();
                    for (int k = 0; k <= d; ++k)
                        if (k != drop) face.push_back(vertices[k]);
                    const std::int32_t sign = (drop % 2 == 0) ? 1 : -1;
                    boundary.emplace_back(index_of(d - 1, detail::colex_rank(face, binomial)),
                                          sign);
                }
            }
            out.add_cell(d, diameters[d][i], boundary);
        }
    }
    return out;
}

} // namespace prodpers
