#pragma once

// Product filtrations and the pipelines on top of them: the Kunneth
// combination of factor barcodes (tensor plus degree-shifted Tor terms),
// the product filtered complex for cross-validation, and the universal
// coefficient / persistent Borel-Moore cohomology barcodes.

#include <functional>
#include <string>
#include <vector>

#include "prodpers/barcode.hpp"
#include "prodpers/complex.hpp"
#include "prodpers/interval.hpp"
#include "prodpers/reduction.hpp"

namespace prodpers {

// Combination map phi: R_+ x R_+ -> R_+, order-preserving in each argument.
// Either the closed-form l^p_c family or a user-supplied monotone function;
// only the l^p_c form supports the closed-form interval algebra.
class PhiMap {
public:
    PhiMap(PExponent p) : p_(p) {} // NOLINT: implicit by design
    explicit PhiMap(std::function<value_t(value_t, value_t)> fn) : fn_(std::move(fn)) {}

    bool is_lp() const { return !fn_; }
    PExponent exponent() const { return p_; }

    value_t operator()(value_t x, value_t y) const {
        return fn_ ? fn_(x, y) : lp_combine(x, y, p_);
    }

private:
    PExponent p_{2.0};
    std::function<value_t(value_t, value_t)> fn_;
};

// Provenance of one surviving product bar.
struct ProductTerm {
    enum class Kind { tensor, tor };
    Kind kind;
    int degree;     // n: degree of the product bar
    int left_degree;  // i
    int right_degree; // j; tensor has i+j=n, tor has i+j=n-1
    Interval left;
    Interval right;
    Interval result;
};

struct KunnethResult {
    Barcode barcode;
    std::vector<ProductTerm> terms;
};

// Degree-n multiset of the product barcode:
//   { I (x)_p J : I in bk_i, J in bl_j, i+j=n }
//   union { Tor_1(I,J) : I in bk_i, J in bl_j, i+j=n-1 },
// zero terms dropped. For p=inf the Tor terms vanish identically and the
// output is pure tensor.
inline KunnethResult kunneth_product_barcode(const Barcode& bk, const Barcode& bl, PExponent p,
                                             int max_degree = -1,
                                             value_t eps = kDefaultTolerance) {
    if (max_degree < 0) {
        // Tor shifts degree by one past the largest tensor degree.
        max_degree = bk.max_degree() + bl.max_degree() + 1;
        if (max_degree < 0) max_degree = 0;
    }
    KunnethResult out;
    for (int n = 0; n <= max_degree; ++n) {
        for (int i = 0; i <= n; ++i) {
            const int j = n - i;
            for (const Interval& left : bk.bars(i)) {
                for (const Interval& right : bl.bars(j)) {
                    OpResult t = tensor_lp(left, right, p, eps);
                    if (t.module) {
                        out.barcode.add(n, *t.module);
                        out.terms.push_back({ProductTerm::Kind::tensor, n, i, j, left, right,
                                             *t.module});
                    }
                }
            }
        }
        for (int i = 0; i <= n - 1; ++i) {
            const int j = n - 1 - i;
            for (const Interval& left : bk.bars(i)) {
                for (const Interval& right : bl.bars(j)) {
                    OpResult t = tor1_lp(left, right, p, eps);
                    if (t.module) {
                        out.barcode.add(n, *t.module);
                        out.terms.push_back({ProductTerm::Kind::tor, n, i, j, left, right,
                                             *t.module});
                    }
                }
            }
        }
    }
    out.barcode.sort();
    return out;
}

// Product filtered complex: one cell per pair (sigma, tau) with dimension
// |sigma|+|tau| and value phi(f(sigma), g(tau)); boundary by the product
// convention d(sigma x tau) = d(sigma) x tau + (-1)^|sigma| sigma x d(tau).
// A non-monotone user phi is detected on the grid of factor values.
inline FilteredComplex product_filtered_complex(const FilteredComplex& x,
                                                const FilteredComplex& y, const PhiMap& phi) {
    for (const auto* c : {&x, &y}) {
        auto violations = validate_filtration(*c);
        if (!violations.empty())
            throw invalid_filtration("invalid factor filtration: " + violations.front().reason);
    }
    if (!phi.is_lp()) {
        std::vector<value_t> xs, ys;
        xs.reserve(x.size());
        ys.reserve(y.size());
        for (std::size_t i = 0; i < x.size(); ++i) xs.push_back(x.value(i));
        for (std::size_t j = 0; j < y.size(); ++j) ys.push_back(y.value(j));
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            for (value_t v : ys)
                if (phi(xs[i], v) > phi(xs[i + 1], v))
                    throw std::invalid_argument("phi is not order-preserving in its first argument");
        for (std::size_t j = 0; j + 1 < ys.size(); ++j)
            for (value_t v : xs)
                if (phi(v, ys[j]) > phi(v, ys[j + 1]))
                    throw std::invalid_argument("phi is not order-preserving in its second argument");
    }

    const std::size_t ny = y.size();
    FilteredComplex out;
    std::size_t boundary_entries = 0;
    for (std::size_t i = 0; i < x.size(); ++i) boundary_entries += x.boundary_size(i) * ny;
    for (std::size_t j = 0; j < y.size(); ++j) boundary_entries += y.boundary_size(j) * x.size();
    out.reserve(x.size() * ny, boundary_entries);

    std::vector<std::pair<std::uint32_t, std::int32_t>> boundary;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::int32_t sign = (x.dim(i) % 2 == 0) ? 1 : -1;
        for (std::size_t j = 0; j < ny; ++j) {
            boundary.clear();
            for (auto* e = x.boundary_begin(i); e != x.boundary_end(i); ++e)
                boundary.emplace_back(static_cast<std::uint32_t>(e->cell * ny + j), e->coeff);
            for (auto* e = y.boundary_begin(j); e != y.boundary_end(j); ++e)
                boundary.emplace_back(static_cast<std::uint32_t>(i * ny + e->cell),
                                      sign * e->coeff);
            out.add_cell(x.dim(i) + y.dim(j), phi(x.value(i), y.value(j)), boundary);
        }
    }
    out.set_name(x.name().empty() && y.name().empty() ? std::string()
                                                      : x.name() + "x" + y.name());
    return out;
}

// Universal-coefficient cochain barcode with coefficients in A = k[alpha, inf):
// degree-n multiset = { Ext^1(I, A) : I in bk_{n-1} } union { Hom(I, A) : I in bk_n }.
inline Barcode uct_cohomology_barcode(const Barcode& bk, const Interval& coefficient, PExponent p,
                                      value_t eps = kDefaultTolerance) {
    if (!coefficient.essential())
        throw std::invalid_argument("UCT coefficient module must be of the form k[alpha, inf)");
    Barcode out;
    const int degrees = bk.max_degree() + 2;
    for (int n = 0; n < std::max(degrees, 1); ++n) {
        if (n >= 1)
            for (const Interval& bar : bk.bars(n - 1))
                out.add(n, ext1_lp(bar, coefficient, p, eps).module);
        for (const Interval& bar : bk.bars(n))
            out.add(n, hom_lp(bar, coefficient, p, eps).module);
    }
    out.sort();
    return out;
}

// Persistent Borel-Moore barcode of the reversed filtration f_{alpha^p}:
// the UCT cochain barcode of the complex with coefficients k[alpha, inf).
// Requires alpha strictly above every filtration value and finite p.
inline Barcode borel_moore_barcode(const FilteredComplex& x, value_t alpha, PExponent p,
                                   const PrimeField& field = PrimeField(2),
                                   value_t eps = kDefaultTolerance) {
    if (p.is_inf()) throw std::invalid_argument("borel_moore_barcode requires finite p");
    if (!(alpha > x.max_value()))
        throw std::invalid_argument("alpha must exceed every filtration value");
    const Barcode homology = persistent_homology(x, field, eps);
    return uct_cohomology_barcode(homology, Interval(alpha, kInf), p, eps);
}

} // namespace prodpers
