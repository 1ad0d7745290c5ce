#pragma once

// Filtered complexes: cells with dimension, filtration value and signed
// integer boundary. Storage is flat (CSR) so that Vietoris-Rips complexes
// with millions of cells stay cheap; the text format below is the exchange
// representation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "prodpers/core.hpp"
#include "prodpers/field.hpp"

namespace prodpers {

struct BoundaryEntry {
    std::uint32_t cell; // dense cell index
    std::int32_t coeff; // integer coefficient, reduced mod q at use
};

class FilteredComplex {
public:
    FilteredComplex() { offsets_.push_back(0); }

    std::size_t size() const { return dims_.size(); }
    bool empty() const { return dims_.empty(); }

    int dim(std::size_t cell) const { return dims_[cell]; }
    value_t value(std::size_t cell) const { return values_[cell]; }
    index_t external_id(std::size_t cell) const {
        return external_ids_.empty() ? static_cast<index_t>(cell) : external_ids_[cell];
    }

    int max_dim() const {
        int d = -1;
        for (int x : dims_) d = std::max(d, x);
        return d;
    }

    value_t max_value() const {
        value_t v = 0.0;
        for (value_t x : values_) v = std::max(v, x);
        return v;
    }

    std::size_t boundary_size(std::size_t cell) const {
        return offsets_[cell + 1] - offsets_[cell];
    }

    const BoundaryEntry* boundary_begin(std::size_t cell) const {
        return entries_.data() + offsets_[cell];
    }

    const BoundaryEntry* boundary_end(std::size_t cell) const {
        return entries_.data() + offsets_[cell + 1];
    }

    // Appends a cell whose boundary refers to previously added cells.
    std::size_t add_cell(int dim, value_t value,
                         const std::vector<std::pair<std::uint32_t, std::int32_t>>& boundary = {}) {
        dims_.push_back(dim);
        values_.push_back(value);
        for (const auto& [cell, coeff] : boundary) entries_.push_back({cell, coeff});
        offsets_.push_back(static_cast<std::uint64_t>(entries_.size()));
        return dims_.size() - 1;
    }

    void set_external_ids(std::vector<index_t> ids) { external_ids_ = std::move(ids); }
    void set_name(std::string name) { name_ = std::move(name); }
    const std::string& name() const { return name_; }

    void reserve(std::size_t cells, std::size_t boundary_entries) {
        dims_.reserve(cells);
        values_.reserve(cells);
        offsets_.reserve(cells + 1);
        entries_.reserve(boundary_entries);
    }

private:
    std::vector<std::int8_t> dims_;
    std::vector<value_t> values_;
    std::vector<std::uint64_t> offsets_;
    std::vector<BoundaryEntry> entries_;
    std::vector<index_t> external_ids_;
    std::string name_;
};

// One filtration/closure defect: which cell, which boundary reference, why.
struct Violation {
    std::size_t cell;
    std::size_t boundary_cell;
    std::string reason;
};

// Diagnostic check of the Cell invariants: every boundary cell exists, has
// dimension exactly one less, and value <= the cell's value. Negative
// filtration values are rejected outright (the index poset is R_+).
inline std::vector<Violation> validate_filtration(const FilteredComplex& c) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(c.value(i) >= 0.0) || std::isinf(c.value(i)))
            out.push_back({i, i, "filtration value must be finite and nonnegative"});
        for (auto* e = c.boundary_begin(i); e != c.boundary_end(i); ++e) {
            if (e->cell >= c.size()) {
                out.push_back({i, e->cell, "boundary refers to unknown cell"});
                continue;
            }
            if (c.dim(e->cell) != c.dim(i) - 1)
                out.push_back({i, e->cell, "boundary cell is not one dimension lower"});
            if (c.value(e->cell) > c.value(i))
                out.push_back({i, e->cell, "face value exceeds cell value"});
        }
    }
    return out;
}

// Checks d(d(cell)) = 0 over the given field; a structural self-test used
// on generated complexes.
inline bool boundary_squared_is_zero(const FilteredComplex& c, const PrimeField& field) {
    std::unordered_map<std::uint32_t, std::uint32_t> acc;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.dim(i) < 2) continue;
        acc.clear();
        for (auto* e = c.boundary_begin(i); e != c.boundary_end(i); ++e) {
            const std::uint32_t ce = field.reduce(e->coeff);
            for (auto* f = c.boundary_begin(e->cell); f != c.boundary_end(e->cell); ++f) {
                auto& slot = acc[f->cell];
                slot = field.add(slot, field.mul(ce, field.reduce(f->coeff)));
            }
        }
        for (const auto& [cell, coeff] : acc)
            if (coeff != 0) return false;
    }
    return true;
}

// Text format, one cell per line: `id dim value [signed boundary ids...]`,
// `#` starts a comment. Boundary tokens like `-3 +4` contribute -1 and +1
// to the coefficients of cells 3 and 4; repeated ids accumulate.
inline FilteredComplex parse_complex(std::istream& in) {
    struct RawCell {
        index_t id;
        int dim;
        value_t value;
        std::vector<std::pair<index_t, int>> boundary;
    };
    std::vector<RawCell> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        RawCell cell;
        if (!(ls >> cell.id))
            throw invalid_filtration("line " + std::to_string(line_no) + ": expected a cell id");
        if (!(ls >> cell.dim >> cell.value))
            throw invalid_filtration("line " + std::to_string(line_no) +
                                     ": expected `id dim value [boundary...]`");
        std::string token;
        while (ls >> token) {
            int sign = 1;
            std::size_t pos = 0;
            if (token[0] == '+' || token[0] == '-') {
                sign = token[0] == '-' ? -1 : 1;
                pos = 1;
            }
            index_t ref = 0;
            try {
                ref = std::stoll(token.substr(pos));
            } catch (const std::exception&) {
                throw invalid_filtration("line " + std::to_string(line_no) +
                                         ": bad boundary token `" + token + "`");
            }
            cell.boundary.emplace_back(ref, sign);
        }
        raw.push_back(std::move(cell));
    }

    std::unordered_map<index_t, std::uint32_t> dense;
    dense.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!dense.emplace(raw[i].id, static_cast<std::uint32_t>(i)).second)
            throw invalid_filtration("duplicate cell id " + std::to_string(raw[i].id));
    }

    FilteredComplex out;
    std::vector<index_t> external;
    external.reserve(raw.size());
    for (const auto& cell : raw) {
        std::unordered_map<std::uint32_t, std::int64_t> coeffs;
        for (const auto& [ref, sign] : cell.boundary) {
            auto it = dense.find(ref);
            if (it == dense.end())
                throw invalid_filtration("cell " + std::to_string(cell.id) +
                                         " references unknown cell " + std::to_string(ref));
            coeffs[it->second] += sign;
        }
        std::vector<std::pair<std::uint32_t, std::int32_t>> boundary;
        boundary.reserve(coeffs.size());
        for (const auto& [idx, coeff] : coeffs)
            if (coeff != 0) boundary.emplace_back(idx, static_cast<std::int32_t>(coeff));
        std::sort(boundary.begin(), boundary.end());
        out.add_cell(cell.dim, cell.value, boundary);
        external.push_back(cell.id);
    }
    out.set_external_ids(std::move(external));
    return out;
}

inline void format_complex(const FilteredComplex& c, std::ostream& out) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        out << c.external_id(i) << ' ' << c.dim(i) << ' ' << format_value(c.value(i));
        for (auto* e = c.boundary_begin(i); e != c.boundary_end(i); ++e) {
            const index_t id = c.external_id(e->cell);
            for (std::int32_t k = 0; k < std::abs(e->coeff); ++k)
                out << ' ' << (e->coeff < 0 ? '-' : '+') << id;
        }
        out << '\n';
    }
}

} // namespace prodpers
