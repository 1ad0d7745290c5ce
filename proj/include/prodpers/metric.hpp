#pragma once

// Finite metric spaces, l^p product metrics and the seeded samplers used by
// the experiment harness. The persistence pipeline only needs a symmetric
// dissimilarity; the triangle inequality is a diagnostic, not a contract.

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prodpers/core.hpp"
#include "prodpers/interval.hpp"

namespace prodpers {

class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    explicit FiniteMetricSpace(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    value_t operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, value_t v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

    value_t diameter() const {
        value_t d = 0.0;
        for (value_t v : d_) d = std::max(d, v);
        return d;
    }

    bool is_symmetric(value_t eps = kDefaultTolerance) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 0.0) return false;
            for (std::size_t j = i + 1; j < n_; ++j) {
                if ((*this)(i, j) < 0.0) return false;
                if (!approx_eq((*this)(i, j), (*this)(j, i), eps)) return false;
            }
        }
        return true;
    }

    // Diagnostic only; finite dissimilarity inputs may legitimately fail it.
    bool satisfies_triangle_inequality(value_t eps = kDefaultTolerance) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    if ((*this)(i, j) > (*this)(i, k) + (*this)(k, j) + eps) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<value_t> d_;
    std::vector<std::string> labels_;
};

// l^p product metric on X x Y, points in row-major order: index = i*|Y| + j.
// Restricted to p >= 1, where d^p is a metric.
inline FiniteMetricSpace product_metric(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                        PExponent p) {
    if (!p.is_inf() && p.p < 1.0)
        throw std::invalid_argument("product_metric requires p >= 1");
    const std::size_t nx = x.size(), ny = y.size();
    FiniteMetricSpace out(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t k = 0; k < nx; ++k)
                for (std::size_t l = 0; l < ny; ++l) {
                    if (i * ny + j > k * ny + l) continue;
                    out.set(i * ny + j, k * ny + l, lp_combine(x(i, k), y(j, l), p));
                }
    return out;
}

// n i.i.d.-uniform points on [0,1] with the |x - y| metric. Deterministic
// per seed (mt19937_64; identical across runs with the same standard library).
inline FiniteMetricSpace sample_interval(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<value_t> uniform(0.0, 1.0);
    std::vector<value_t> points(n);
    for (auto& x : points) x = uniform(rng);
    FiniteMetricSpace out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, std::fabs(points[i] - points[j]));
    return out;
}

// n i.i.d.-uniform points on the radius-1 circle with the geodesic metric
// min(|t - t'|, 2*pi - |t - t'|).
inline FiniteMetricSpace sample_circle(std::size_t n, std::uint64_t seed) {
    constexpr value_t two_pi = 6.283185307179586476925286766559;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<value_t> uniform(0.0, two_pi);
    std::vector<value_t> angles(n);
    for (auto& t : angles) t = uniform(rng);
    FiniteMetricSpace out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const value_t gap = std::fabs(angles[i] - angles[j]);
            out.set(i, j, std::min(gap, two_pi - gap));
        }
    return out;
}

// CSV distance matrix: full symmetric matrix, one row per line, optional
// header line (skipped when its first field is not numeric).
inline FiniteMetricSpace parse_distance_csv(std::istream& in, value_t eps = kDefaultTolerance) {
    std::vector<std::vector<value_t>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<value_t> row;
        std::stringstream ls(line);
        std::string fieldtext;
        bool numeric = true;
        while (std::getline(ls, fieldtext, ',')) {
            try {
                std::size_t used = 0;
                value_t v = std::stod(fieldtext, &used);
                row.push_back(v);
                (void)used;
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) { first = false; continue; } // header
            throw std::invalid_argument("non-numeric value in distance matrix");
        }
        first = false;
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw std::invalid_argument("distance matrix is not square");
        if (rows[i][i] != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] < 0.0)
                throw std::invalid_argument("distances must be nonnegative");
            if (!approx_eq(rows[i][j], rows[j][i], eps))
                throw std::invalid_argument("distance matrix is not symmetric");
        }
    }
    FiniteMetricSpace out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, rows[i][j]);
    return out;
}

inline void format_distance_csv(const FiniteMetricSpace& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out << ',';
            out << format_value(m(i, j));
        }
        out << '\n';
    }
}

} // namespace prodpers
