#pragma once

// Test-only oracles, independent of the closed-form implementation paths
// they check:
//  - pointwise colimit/limit dimension of tensor and hom on a finite grid,
//  - Tor/Ext via the explicit length-one resolutions,
//  - static homology ranks by plain Gaussian elimination,
//  - the reversed (cochain) complex for direct UCT cross-checks,
//  - brute-force bottleneck matching,
//  - random generators for intervals, filtered complexes and diagrams.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "prodpers/bottleneck.hpp"
#include "prodpers/complex.hpp"
#include "prodpers/field.hpp"
#include "prodpers/interval.hpp"

namespace oracle {

using prodpers::FilteredComplex;
using prodpers::Interval;
using prodpers::PExponent;
using prodpers::PrimeField;
using prodpers::value_t;

// Dimension of an interval-or-zero module at t. Boundary membership follows
// the library's half-open convention with its comparison tolerance, so that
// one-ulp rounding differences between algebraically equal endpoint
// expressions cannot flip a verdict.
inline int dim_at(const std::optional<Interval>& module, value_t t) {
    return module && prodpers::approx_le(module->birth, t) &&
                   prodpers::approx_lt(t, module->death)
               ? 1
               : 0;
}

// Grid of evaluation points for a pair of intervals: endpoints, their
// pairwise lp-combinations and lp-differences, midpoints, and a sentinel
// beyond every finite value (standing in for "large t").
inline std::vector<value_t> make_grid(const Interval& lhs, const Interval& rhs, PExponent p,
                                      std::size_t max_points = 64) {
    std::vector<value_t> endpoints{0.0, lhs.birth, rhs.birth};
    if (!lhs.essential()) endpoints.push_back(lhs.death);
    if (!rhs.essential()) endpoints.push_back(rhs.death);

    std::vector<value_t> grid = endpoints;
    for (value_t x : endpoints)
        for (value_t y : endpoints) {
            grid.push_back(prodpers::lp_combine(x, y, p));
            grid.push_back(prodpers::lp_diff(x, y, p));
        }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.push_back(grid.back() + 1.0); // sentinel past everything

    // Fill the remaining budget with midpoints; the critical values above
    // always stay.
    const std::size_t base = grid.size();
    for (std::size_t i = 0; i + 1 < base && grid.size() < max_points; ++i)
        grid.push_back((grid[i] + grid[i + 1]) / 2.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// Pointwise dimensions of tensor and hom of two interval modules, evaluated
// on a finite grid by brute force over the defining colimit/limit diagrams.
class GridOracle {
public:
    GridOracle(const Interval& lhs, const Interval& rhs, PExponent p,
               std::size_t max_points = 64)
        : lhs_(lhs), rhs_(rhs), grid(make_grid(lhs, rhs, p, max_points)) {
        const std::size_t g = grid.size();
        phi_.resize(g * g);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j)
                phi_[i * g + j] = prodpers::lp_combine(grid[i], grid[j], p);
    }

    // dim (M tensor_phi N)_t: the colimit over the down-set
    // {(s,u) : phi(s,u) <= t} of the support rectangle diagram. The class
    // survives iff the rectangle meets the down-set and no support point
    // maps into a zero module inside it.
    int tensor_dim_at(value_t t) const {
        const std::size_t g = grid.size();
        std::vector<char> escape((g + 1) * (g + 1), 0);
        auto esc = [&](std::size_t i, std::size_t j) -> char& {
            return escape[i * (g + 1) + j];
        };
        bool any_support = false, any_escaped = false;
        for (std::size_t ii = g; ii-- > 0;)
            for (std::size_t jj = g; jj-- > 0;) {
                const bool in_down = prodpers::approx_le(phi_[ii * g + jj], t);
                const bool support = in_lhs(grid[ii]) && in_rhs(grid[jj]);
                esc(ii, jj) = (in_down && !support) || esc(ii + 1, jj) || esc(ii, jj + 1);
                if (in_down && support) {
                    any_support = true;
                    if (esc(ii, jj)) any_escaped = true;
                }
            }
        return any_support && !any_escaped ? 1 : 0;
    }

    // dim Hom^phi(M, N)_t: natural transformations over the region
    // {(s,u) : u >= t}, source strip a <= s < b and target band
    // c <= phi(s,u) < d. A transformation dies when the strip survives past
    // the band above (dead source, live target) or the band starts below
    // the strip window (live source, target not yet born).
    int hom_dim_at(value_t t) const {
        const std::size_t g = grid.size();
        std::vector<char> kill_above((g + 1) * (g + 1), 0);
        std::vector<char> kill_below((g + 1) * (g + 1), 0);
        auto above = [&](std::size_t i, std::size_t j) -> char& {
            return kill_above[i * (g + 1) + j];
        };
        auto below = [&](std::size_t i, std::size_t j) -> char& {
            return kill_below[i * (g + 1) + j];
        };
        for (std::size_t ii = g; ii-- > 0;)
            for (std::size_t jj = g; jj-- > 0;) {
                const bool bad = prodpers::approx_le(t, grid[jj]) &&
                                 prodpers::approx_le(lhs_.death, grid[ii]) &&
                                 in_band(phi_[ii * g + jj]);
                above(ii, jj) = bad || above(ii + 1, jj) || above(ii, jj + 1);
            }
        for (std::size_t ii = 0; ii < g; ++ii)
            for (std::size_t jj = 0; jj < g; ++jj) {
                const bool bad = prodpers::approx_le(t, grid[jj]) && in_lhs(grid[ii]) &&
                                 prodpers::approx_lt(phi_[ii * g + jj], rhs_.birth);
                below(ii + 1, jj + 1) = bad || below(ii, jj + 1) || below(ii + 1, jj);
            }
        bool nonempty = false;
        for (std::size_t ii = 0; ii < g; ++ii)
            for (std::size_t jj = 0; jj < g; ++jj) {
                if (!(prodpers::approx_le(t, grid[jj]) && in_lhs(grid[ii]) &&
                      in_band(phi_[ii * g + jj])))
                    continue;
                nonempty = true;
                if (above(ii, jj) || below(ii + 1, jj + 1)) return 0;
            }
        return nonempty ? 1 : 0;
    }

    const std::vector<value_t>& points() const { return grid; }

private:
    bool in_lhs(value_t s) const {
        return prodpers::approx_le(lhs_.birth, s) && prodpers::approx_lt(s, lhs_.death);
    }
    bool in_rhs(value_t u) const {
        return prodpers::approx_le(rhs_.birth, u) && prodpers::approx_lt(u, rhs_.death);
    }
    bool in_band(value_t v) const {
        return prodpers::approx_le(rhs_.birth, v) && prodpers::approx_lt(v, rhs_.death);
    }

    Interval lhs_, rhs_;
    std::vector<value_t> grid;
    std::vector<value_t> phi_;
};

// Tor_1 through the free resolution 0 -> k[b,inf) -> k[a,inf) -> k[a,b) -> 0:
// tensor the resolution with the second argument and take the pointwise
// kernel of the induced map (identity wherever both terms are alive).
inline int tor_resolution_dim_at(const Interval& lhs, const Interval& rhs, PExponent p,
                                 value_t t) {
    if (lhs.essential()) return 0; // already free, nothing to resolve
    const auto t1 = prodpers::tensor_lp(Interval(lhs.death, prodpers::kInf), rhs, p).module;
    const auto t0 = prodpers::tensor_lp(Interval(lhs.birth, prodpers::kInf), rhs, p).module;
    return dim_at(t1, t) * (1 - dim_at(t0, t));
}

// Ext^1 through the injective resolution 0 -> k[c,d) -> k[0,d) -> k[0,c) -> 0:
// apply hom and take the pointwise cokernel.
inline int ext_resolution_dim_at(const Interval& lhs, const Interval& rhs, PExponent p,
                                 value_t t) {
    const auto into_d = prodpers::make_interval(0.0, rhs.death);
    const auto into_c = prodpers::make_interval(0.0, rhs.birth);
    const auto e0 = into_d ? prodpers::hom_lp(lhs, *into_d, p).module : std::nullopt;
    const auto e1 = into_c ? prodpers::hom_lp(lhs, *into_c, p).module : std::nullopt;
    return dim_at(e1, t) * (1 - dim_at(e0, t));
}

// Rank of a sparse matrix over GF(q) by plain elimination; columns are
// (row, coeff) lists.
inline std::size_t gf_rank(std::vector<std::map<int, std::uint32_t>> columns,
                           const PrimeField& field) {
    std::map<int, std::map<int, std::uint32_t>> pivots; // pivot row -> column
    std::size_t rank = 0;
    for (auto& col : columns) {
        while (!col.empty()) {
            const int low = col.rbegin()->first;
            auto hit = pivots.find(low);
            if (hit == pivots.end()) break;
            const std::uint32_t scale =
                field.mul(field.neg(col.rbegin()->second), field.inv(hit->second.rbegin()->second));
            for (const auto& [row, coeff] : hit->second) {
                const std::uint32_t sum = field.add(col[row], field.mul(scale, coeff));
                if (sum == 0)
                    col.erase(row);
                else
                    col[row] = sum;
            }
        }
        if (!col.empty()) {
            pivots[col.rbegin()->first] = col;
            ++rank;
        }
    }
    return rank;
}

// Rank of H_n of the static subcomplex {cell : value <= t}.
inline std::size_t static_homology_rank(const FilteredComplex& c, int degree, value_t t,
                                        const PrimeField& field) {
    std::vector<char> present(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) present[i] = c.value(i) <= t;

    auto boundary_rank = [&](int d) {
        std::vector<std::map<int, std::uint32_t>> columns;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!present[i] || c.dim(i) != d) continue;
            std::map<int, std::uint32_t> col;
            for (auto* e = c.boundary_begin(i); e != c.boundary_end(i); ++e) {
                const std::uint32_t v = field.reduce(e->coeff);
                if (v != 0) col[static_cast<int>(e->cell)] = v;
            }
            columns.push_back(std::move(col));
        }
        return gf_rank(std::move(columns), field);
    };

    std::size_t n_cells = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (present[i] && c.dim(i) == degree) ++n_cells;
    return n_cells - boundary_rank(degree) - boundary_rank(degree + 1);
}

// The regraded cochain complex Hom(C^f(X), k[alpha,inf)): cell sigma gets
// dimension (top - dim sigma), value (alpha^p - f(sigma)^p)^(1/p), and its
// boundary consists of its cofaces with transposed coefficients. Degree-m
// bars of this complex are the degree-(top - m) cochain bars.
inline FilteredComplex reversed_hom_complex(const FilteredComplex& x, value_t alpha, PExponent p) {
    const int top = x.max_dim();
    std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> cofaces(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (auto* e = x.boundary_begin(i); e != x.boundary_end(i); ++e)
            cofaces[e->cell].emplace_back(static_cast<std::uint32_t>(i), e->coeff);

    FilteredComplex out;
    for (std::size_t i = 0; i < x.size(); ++i)
        out.add_cell(top - x.dim(i), prodpers::lp_diff(alpha, x.value(i), p), cofaces[i]);
    return out;
}

// All partial matchings of two small diagrams, for the bottleneck oracle.
inline value_t brute_force_bottleneck(const std::vector<prodpers::DiagramPoint>& a,
                                      const std::vector<prodpers::DiagramPoint>& b) {
    using prodpers::DiagramPoint;
    auto diagonal = [](const DiagramPoint& p) {
        return p.essential() ? prodpers::kInf : (p.death - p.birth) / 2.0;
    };
    auto transport = [](const DiagramPoint& p, const DiagramPoint& q) {
        if (p.essential() != q.essential()) return prodpers::kInf;
        const value_t dd = p.essential() ? 0.0 : std::fabs(p.death - q.death);
        return std::max(std::fabs(p.birth - q.birth), dd);
    };

    std::vector<char> used(b.size(), 0);
    value_t best = prodpers::kInf;
    auto recurse = [&](auto&& self, std::size_t i, value_t cost) -> void {
        if (cost >= best) return;
        if (i == a.size()) {
            value_t total = cost;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) total = std::max(total, diagonal(b[j]));
            best = std::min(best, total);
            return;
        }
        self(self, i + 1, std::max(cost, diagonal(a[i])));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            self(self, i + 1, std::max(cost, transport(a[i], b[j])));
            used[j] = 0;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

// --- random generators -----------------------------------------------------

inline Interval random_interval(std::mt19937_64& rng, bool allow_infinite = true) {
    std::uniform_real_distribution<value_t> birth_dist(0.0, 5.0);
    std::uniform_real_distribution<value_t> length_dist(0.25, 4.0);
    std::uniform_int_distribution<int> coin(0, 4);
    const value_t birth = coin(rng) == 0 ? 0.0 : birth_dist(rng);
    if (allow_infinite && coin(rng) == 1) return Interval(birth, prodpers::kInf);
    return Interval(birth, birth + length_dist(rng));
}

// Random filtered simplicial complex with at most max_cells cells and
// integer filtration values in {0,...,9}.
inline FilteredComplex random_complex(std::mt19937_64& rng, std::size_t max_cells = 8) {
    std::uniform_int_distribution<int> nv_dist(1, 4);
    std::uniform_int_distribution<int> value_dist(0, 9);
    std::uniform_int_distribution<int> coin(0, 99);

    const int nv = nv_dist(rng);
    FilteredComplex out;
    std::vector<std::uint32_t> vertex(nv);
    std::vector<int> vertex_value(nv);
    for (int v = 0; v < nv; ++v) {
        vertex_value[v] = value_dist(rng);
        vertex[v] = static_cast<std::uint32_t>(out.add_cell(0, vertex_value[v]));
    }

    std::map<std::pair<int, int>, std::uint32_t> edge;
    std::map<std::pair<int, int>, int> edge_value;
    for (int u = 0; u < nv && out.size() < max_cells; ++u)
        for (int v = u + 1; v < nv && out.size() < max_cells; ++v) {
            if (coin(rng) >= 55) continue;
            const int base = std::max(vertex_value[u], vertex_value[v]);
            std::uniform_int_distribution<int> val(base, 9);
            const int value = val(rng);
            edge_value[{u, v}] = value;
            edge[{u, v}] = static_cast<std::uint32_t>(
                out.add_cell(1, value, {{vertex[v], 1}, {vertex[u], -1}}));
        }

    for (int u = 0; u < nv && out.size() < max_cells; ++u)
        for (int v = u + 1; v < nv && out.size() < max_cells; ++v)
            for (int w = v + 1; w < nv && out.size() < max_cells; ++w) {
                auto uv = edge.find({u, v}), uw = edge.find({u, w}), vw = edge.find({v, w});
                if (uv == edge.end() || uw == edge.end() || vw == edge.end()) continue;
                if (coin(rng) >= 60) continue;
                const int base = std::max({edge_value[{u, v}], edge_value[{u, w}],
                                           edge_value[{v, w}]});
                std::uniform_int_distribution<int> val(base, 9);
                out.add_cell(2, val(rng),
                             {{vw->second, 1}, {uw->second, -1}, {uv->second, 1}});
            }
    return out;
}

inline std::vector<prodpers::DiagramPoint> random_diagram(std::mt19937_64& rng,
                                                          std::size_t max_points,
                                                          int essential_percent = 20) {
    std::uniform_int_distribution<std::size_t> count(0, max_points);
    std::uniform_real_distribution<value_t> birth_dist(0.0, 5.0);
    std::uniform_real_distribution<value_t> length_dist(0.0, 3.0);
    std::uniform_int_distribution<int> coin(0, 99);
    std::vector<prodpers::DiagramPoint> out;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const value_t birth = birth_dist(rng);
        if (coin(rng) < essential_percent)
            out.push_back({birth, prodpers::kInf});
        else
            out.push_back({birth, birth + length_dist(rng)});
    }
    return out;
}

} // namespace oracle
