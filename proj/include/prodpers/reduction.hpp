#pragma once

// Barcode computation by column reduction of the boundary matrices over a
// prime field. Cells are processed in the global order (value, dim, input
// index), which is deterministic and puts faces before cofaces; each
// dimension reduces independently.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "prodpers/barcode.hpp"
#include "prodpers/complex.hpp"
#include "prodpers/field.hpp"

namespace prodpers {

struct MatrixEntry {
    std::uint32_t row;
    std::uint32_t coeff;
};

using SparseColumn = std::vector<MatrixEntry>;

// Column-reduced boundary matrix of one dimension with the recorded column
// operations: reduced = boundary * ops, ops upper-triangular and invertible,
// and the nonzero reduced columns have pairwise distinct lowest rows.
struct ReducedMatrix {
    int dim = 0;
    std::size_t rows = 0;
    std::vector<SparseColumn> boundary; // D, columns in global order
    std::vector<SparseColumn> reduced;  // R
    std::vector<SparseColumn> ops;      // V
};

struct ReducedBoundary {
    std::vector<ReducedMatrix> matrices; // one per dimension >= 1
};

namespace detail {

// Global cell order: by filtration value, then dimension, then input index.
inline std::vector<std::uint32_t> global_cell_order(const FilteredComplex& c) {
    std::vector<std::uint32_t> order(c.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (c.value(a) != c.value(b)) return c.value(a) < c.value(b);
        if (c.dim(a) != c.dim(b)) return c.dim(a) < c.dim(b);
        return a < b;
    });
    return order;
}

inline void add_scaled_column(const SparseColumn& src, std::uint32_t scale,
                              const PrimeField& field, SparseColumn& dst,
                              SparseColumn& scratch) {
    scratch.clear();
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() && b != src.end()) {
        if (a->row < b->row) {
            scratch.push_back(*a++);
        } else if (b->row < a->row) {
            scratch.push_back({b->row, field.mul(scale, b->coeff)});
            ++b;
        } else {
            const std::uint32_t coeff = field.add(a->coeff, field.mul(scale, b->coeff));
            if (coeff != 0) scratch.push_back({a->row, coeff});
            ++a;
            ++b;
        }
    }
    scratch.insert(scratch.end(), a, dst.end());
    for (; b != src.end(); ++b) scratch.push_back({b->row, field.mul(scale, b->coeff)});
    dst.swap(scratch);
}

} // namespace detail

struct PersistenceResult {
    Barcode barcode;
    std::optional<ReducedBoundary> certificate;
};

// Standard persistence pairing. An unpaired positive cell at value v yields
// [v, inf); a pair (sigma, tau) yields [f(sigma), f(tau)), dropped when the
// values coincide within eps. Throws invalid_filtration on bad input.
inline PersistenceResult reduce_persistence(const FilteredComplex& c, const PrimeField& field,
                                            bool keep_certificate = false,
                                            value_t eps = kDefaultTolerance) {
    {
        auto violations = validate_filtration(c);
        if (!violations.empty())
            throw invalid_filtration("invalid filtration: " + violations.front().reason +
                                     " (cell index " + std::to_string(violations.front().cell) +
                                     "), " + std::to_string(violations.size()) + " violation(s)");
    }

    const int top_dim = c.max_dim();
    PersistenceResult result;
    if (c.empty()) return result;

    const auto order = detail::global_cell_order(c);

    // Rank of every cell among the cells of its dimension, in global order.
    std::vector<std::uint32_t> rank_in_dim(c.size());
    std::vector<std::vector<std::uint32_t>> cells_of_dim(top_dim + 1);
    for (std::uint32_t cell : order) {
        rank_in_dim[cell] = static_cast<std::uint32_t>(cells_of_dim[c.dim(cell)].size());
        cells_of_dim[c.dim(cell)].push_back(cell);
    }

    std::vector<bool> killed(c.size(), false); // appeared as a lowest row

    if (keep_certificate) result.certificate.emplace();

    for (int d = 1; d <= top_dim; ++d) {
        const auto& cols = cells_of_dim[d];
        const auto& row_cells = cells_of_dim[d - 1];
        std::vector<std::int64_t> pivot(row_cells.size(), -1);
        std::vector<SparseColumn> reduced(cols.size());
        std::vector<SparseColumn> ops;
        std::vector<SparseColumn> input;
        if (keep_certificate) {
            ops.resize(cols.size());
            input.resize(cols.size());
        }
        SparseColumn scratch;

        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::uint32_t cell = cols[j];
            SparseColumn& col = reduced[j];
            for (auto* e = c.boundary_begin(cell); e != c.boundary_end(cell); ++e) {
                const std::uint32_t coeff = field.reduce(e->coeff);
                if (coeff != 0) col.push_back({rank_in_dim[e->cell], coeff});
            }
            std::sort(col.begin(), col.end(),
                      [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
            if (keep_certificate) {
                input[j] = col;
                ops[j].push_back({static_cast<std::uint32_t>(j), 1});
            }

            while (!col.empty()) {
                const std::uint32_t low = col.back().row;
                const std::int64_t k = pivot[low];
                if (k < 0) break;
                const std::uint32_t scale =
                    field.mul(field.neg(col.back().coeff), field.inv(reduced[k].back().coeff));
                detail::add_scaled_column(reduced[k], scale, field, col, scratch);
                if (keep_certificate) detail::add_scaled_column(ops[k], scale, field, ops[j], scratch);
            }

            if (!col.empty()) {
                const std::uint32_t low = col.back().row;
                pivot[low] = static_cast<std::int64_t>(j);
                const std::uint32_t birth_cell = row_cells[low];
                killed[birth_cell] = true;
                killed[cell] = true;
                auto bar = make_interval(c.value(birth_cell), c.value(cell), eps);
                if (bar) result.barcode.add(static_cast<std::size_t>(d - 1), *bar);
            }
        }

        if (keep_certificate) {
            ReducedMatrix m;
            m.dim = d;
            m.rows = row_cells.size();
            m.boundary = std::move(input);
            m.reduced = std::move(reduced);
            m.ops = std::move(ops);
            result.certificate->matrices.push_back(std::move(m));
        }
    }

    for (std::size_t cell = 0; cell < c.size(); ++cell)
        if (!killed[cell]) result.barcode.add(c.dim(cell), Interval(c.value(cell), kInf));

    result.barcode.sort();
    return result;
}

inline Barcode persistent_homology(const FilteredComplex& c, const PrimeField& field = PrimeField(2),
                                   value_t eps = kDefaultTolerance) {
    return reduce_persistence(c, field, false, eps).barcode;
}

// Per-degree view of the chain complex of free persistence modules built
// from a filtration: one free generator k[f(cell), inf) per cell, boundary
// coefficients reduced into the field.
struct FreeChainComplex {
    // births[d][i] is the birth of the i-th degree-d generator, in global order.
    std::vector<std::vector<value_t>> births;
    // columns[d][i]: boundary of that generator as (row in degree d-1, coeff).
    std::vector<std::vector<SparseColumn>> columns;
};

inline FreeChainComplex chain_complex_from_filtration(const FilteredComplex& c,
                                                      const PrimeField& field) {
    {
        auto violations = validate_filtration(c);
        if (!violations.empty())
            throw invalid_filtration("invalid filtration: " + violations.front().reason);
    }
    const int top_dim = c.max_dim();
    FreeChainComplex out;
    if (top_dim < 0) return out;
    out.births.resize(top_dim + 1);
    out.columns.resize(top_dim + 1);

    const auto order = detail::global_cell_order(c);
    std::vector<std::uint32_t> rank_in_dim(c.size());
    for (std::uint32_t cell : order) {
        rank_in_dim[cell] = static_cast<std::uint32_t>(out.births[c.dim(cell)].size());
        out.births[c.dim(cell)].push_back(c.value(cell));
    }
    for (std::uint32_t cell : order) {
        SparseColumn col;
        for (auto* e = c.boundary_begin(cell); e != c.boundary_end(cell); ++e) {
            const std::uint32_t coeff = field.reduce(e->coeff);
            if (coeff != 0) col.push_back({rank_in_dim[e->cell], coeff});
        }
        std::sort(col.begin(), col.end(),
                  [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
        out.columns[c.dim(cell)].push_back(std::move(col));
    }
    return out;
}

} // namespace prodpers
