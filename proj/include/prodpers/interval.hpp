#pragma once

// Closed-form l^p_c algebra on one-parameter interval modules: tensor,
// internal hom, Tor_1 and Ext^1, plus the componentwise extension to
// hyper-rectangle modules on R^n_+.

#include <algorithm>
#include <optional>
#include <vector>

#include "prodpers/core.hpp"

namespace prodpers {

// Exponent of the combination map ||(a,b)||_p = (a^p + b^p)^(1/p).
// Quasinorms p in (0,1) are allowed for the algebra; the metric side
// separately restricts to p >= 1.
struct PExponent {
    value_t p = 2.0;

    constexpr PExponent() = default;
    constexpr explicit PExponent(value_t value) : p(value) {}

    static constexpr PExponent inf() { return PExponent(kInf); }

    constexpr bool is_inf() const { return p == kInf; }

    bool valid() const { return p > 0.0; }
};

// ||(a,b)||_p with max for p=inf. Total on nonnegative inputs; infinity is
// absorbing and 0 is a strict unit (x combines with 0 to exactly x, so that
// product filtrations restrict bit-exactly to their factors).
inline value_t lp_combine(value_t a, value_t b, PExponent p) {
    if (a == 0.0) return b;
    if (b == 0.0) return a;
    if (std::isinf(a) || std::isinf(b)) return kInf;
    if (p.is_inf()) return std::max(a, b);
    if (p.p == 1.0) return a + b;
    if (p.p == 2.0) return std::sqrt(a * a + b * b);
    return std::pow(std::pow(a, p.p) + std::pow(b, p.p), 1.0 / p.p);
}

// (max(0, x^p - y^p))^(1/p), the birth/death shifts of the hom and Ext
// formulas. x=inf with finite y gives inf; a y past x clamps to 0.
inline value_t lp_diff(value_t x, value_t y, PExponent p) {
    if (std::isinf(x)) return std::isinf(y) ? 0.0 : kInf;
    if (std::isinf(y) || y >= x) return 0.0;
    if (y == 0.0) return x;
    if (p.p == 1.0) return x - y;
    if (p.p == 2.0) return std::sqrt(std::max(0.0, x * x - y * y));
    return std::pow(std::max(0.0, std::pow(x, p.p) - std::pow(y, p.p)), 1.0 / p.p);
}

// Half-open interval module k[birth, death), death possibly infinite.
// Degenerate pairs never construct; they normalize to the zero module
// (an empty optional) in the operations below.
struct Interval {
    value_t birth = 0.0;
    value_t death = kInf;

    Interval() = default;
    Interval(value_t b, value_t d) : birth(b), death(d) {}

    bool essential() const { return std::isinf(death); }
    value_t length() const { return death - birth; }

    friend bool operator==(const Interval& lhs, const Interval& rhs) {
        return lhs.birth == rhs.birth && lhs.death == rhs.death;
    }
};

inline bool approx_eq(const Interval& lhs, const Interval& rhs, value_t eps = kDefaultTolerance) {
    return approx_eq(lhs.birth, rhs.birth, eps) && approx_eq(lhs.death, rhs.death, eps);
}

// Normalizes [birth, death) to the zero module when birth >= death - eps.
inline std::optional<Interval> make_interval(value_t birth, value_t death,
                                             value_t eps = kDefaultTolerance) {
    if (std::isinf(birth)) return std::nullopt;
    birth = std::max(0.0, birth);
    if (!approx_lt(birth, death, eps)) return std::nullopt;
    return Interval(birth, death);
}

// Result of an algebra operation: the interval module (empty = zero module)
// plus the formula case that produced it, for diagnostics.
struct OpResult {
    std::optional<Interval> module;
    const char* rule = "";

    bool is_zero() const { return !module.has_value(); }
};

// k[a,b) (x)_p k[c,d) = k[ ||(a,c)||_p, min(||(b,c)||_p, ||(a,d)||_p) ).
// The infinite-death cases are the same formula with absorbing infinity.
inline OpResult tensor_lp(const Interval& lhs, const Interval& rhs, PExponent p,
                          value_t eps = kDefaultTolerance) {
    const value_t birth = lp_combine(lhs.birth, rhs.birth, p);
    const value_t death = std::min(lp_combine(lhs.death, rhs.birth, p),
                                   lp_combine(lhs.birth, rhs.death, p));
    auto module = make_interval(birth, death, eps);
    const char* rule = !module              ? "tensor: zero (degenerate overlap)"
                       : std::isinf(death)  ? "tensor: free factors, k[|(a,c)|_p, inf)"
                                            : "tensor: k[|(a,c)|_p, min(|(b,c)|_p, |(a,d)|_p))";
    return {module, rule};
}

// Tor_1^{l^p_c}: nonzero only for p finite and both intervals of finite
// length, where it equals k[ max(||(b,c)||_p, ||(a,d)||_p), ||(b,d)||_p ).
inline OpResult tor1_lp(const Interval& lhs, const Interval& rhs, PExponent p,
                        value_t eps = kDefaultTolerance) {
    if (p.is_inf()) return {std::nullopt, "tor: zero (p=inf, all modules acyclic)"};
    if (lhs.essential() || rhs.essential())
        return {std::nullopt, "tor: zero (free factor)"};
    const value_t birth = std::max(lp_combine(lhs.death, rhs.birth, p),
                                   lp_combine(lhs.birth, rhs.death, p));
    const value_t death = lp_combine(lhs.death, rhs.death, p);
    auto module = make_interval(birth, death, eps);
    return {module, module ? "tor: k[max(|(b,c)|_p, |(a,d)|_p), |(b,d)|_p)"
                           : "tor: zero (degenerate)"};
}

namespace detail {

// Six-case table for Hom^{l^inf}(k[a,b), k[c,d)) with all endpoints finite.
inline OpResult hom_inf_finite(const Interval& lhs, const Interval& rhs, value_t eps) {
    const value_t a = lhs.birth, b = lhs.death, c = rhs.birth, d = rhs.death;
    if (approx_le(b, c, eps)) return {std::nullopt, "hom(p=inf): zero, a<b<=c<d"};
    if (approx_lt(a, c, eps)) {
        if (approx_le(d, b, eps))
            return {make_interval(c, d, eps), "hom(p=inf): k[c,d), a<c<d<=b"};
        return {std::nullopt, "hom(p=inf): zero, a<c<=b<d"};
    }
    if (approx_le(d, a, eps)) return {std::nullopt, "hom(p=inf): zero, c<d<=a<b"};
    if (approx_le(d, b, eps))
        return {make_interval(0.0, d, eps), "hom(p=inf): k[0,d), c<=a<d<=b"};
    return {std::nullopt, "hom(p=inf): zero, c<=a<b<d"};
}

inline OpResult hom_inf(const Interval& lhs, const Interval& rhs, value_t eps) {
    if (!rhs.essential()) {
        if (!lhs.essential()) return hom_inf_finite(lhs, rhs, eps);
        const value_t a = lhs.birth, c = rhs.birth, d = rhs.death;
        if (approx_lt(a, c, eps))
            return {make_interval(c, d, eps), "hom(p=inf): k[c,d), a<c, free source"};
        if (approx_lt(a, d, eps))
            return {make_interval(0.0, d, eps), "hom(p=inf): k[0,d), c<=a<d, free source"};
        return {std::nullopt, "hom(p=inf): zero, d<=a, free source"};
    }
    if (rhs.birth == 0.0) {
        if (lhs.essential())
            return {make_interval(0.0, kInf, eps), "hom(p=inf): k[0,inf) into the unit"};
        return {std::nullopt, "hom(p=inf): zero, finite source into the unit"};
    }
    // Hom^{l^inf}(-, k[c,inf)) with c>0 is not covered by the case tables.
    throw unsupported_case("unsupported p=inf hom case: target k[c,inf) with c>0");
}

} // namespace detail

// Hom^{l^p_c}(k[a,b), k[c,d)). Finite p uses the closed forms
//   k[ (max(0, c^p-a^p, d^p-b^p))^(1/p), (max(0, d^p-a^p))^(1/p) )
// (the d^p-b^p term dropped for free first argument); p=inf dispatches to
// the published case tables and rejects configurations outside them.
inline OpResult hom_lp(const Interval& lhs, const Interval& rhs, PExponent p,
                       value_t eps = kDefaultTolerance) {
    if (p.is_inf()) return detail::hom_inf(lhs, rhs, eps);
    const value_t death = lp_diff(rhs.death, lhs.birth, p);
    if (lhs.essential()) {
        auto module = make_interval(lp_diff(rhs.birth, lhs.birth, p), death, eps);
        return {module, module ? "hom: k[(c^p-a^p)^(1/p), (d^p-a^p)^(1/p)), free source"
                               : "hom: zero (free source, d<=a)"};
    }
    const value_t birth =
        std::max(lp_diff(rhs.birth, lhs.birth, p), lp_diff(rhs.death, lhs.death, p));
    auto module = make_interval(birth, death, eps);
    return {module, module ? "hom: k[(max(0,c^p-a^p,d^p-b^p))^(1/p), (max(0,d^p-a^p))^(1/p))"
                           : "hom: zero (degenerate)"};
}

// Ext^1_{l^p_c}(k[a,b), k[c,d)). Vanishes for a projective first argument
// (death=inf) or an injective second argument (birth=0); finite p uses
//   k[ (max(0, c^p-b^p))^(1/p), min(max(0, c^p-a^p), max(0, d^p-b^p))^(1/p) ),
// p=inf is k[0,c) exactly when a<c<=b<d and is otherwise rejected when the
// second argument has infinite death.
inline OpResult ext1_lp(const Interval& lhs, const Interval& rhs, PExponent p,
                        value_t eps = kDefaultTolerance) {
    if (lhs.essential()) return {std::nullopt, "ext: zero (projective first argument)"};
    if (rhs.birth == 0.0) return {std::nullopt, "ext: zero (injective second argument)"};
    if (p.is_inf()) {
        if (rhs.essential())
            throw unsupported_case("unsupported p=inf ext case: target k[c,inf) with c>0");
        const value_t a = lhs.birth, b = lhs.death, c = rhs.birth, d = rhs.death;
        if (approx_lt(a, c, eps) && approx_le(c, b, eps) && approx_lt(b, d, eps))
            return {make_interval(0.0, c, eps), "ext(p=inf): k[0,c), a<c<=b<d"};
        return {std::nullopt, "ext(p=inf): zero"};
    }
    const value_t birth = lp_diff(rhs.birth, lhs.death, p);
    const value_t death =
        std::min(lp_diff(rhs.birth, lhs.birth, p), lp_diff(rhs.death, lhs.death, p));
    auto module = make_interval(birth, death, eps);
    return {module, module ? "ext: k[(max(0,c^p-b^p))^(1/p), min(...)^(1/p))"
                           : "ext: zero (degenerate)"};
}

// Product of interval modules on R^n_+, one axis interval per coordinate.
// Empty axes never construct: rectangle operations normalize to zero when
// any axis does.
struct HyperRectangle {
    std::vector<Interval> axes;

    HyperRectangle() = default;
    explicit HyperRectangle(std::vector<Interval> a) : axes(std::move(a)) {}

    std::size_t dimension() const { return axes.size(); }
};

inline bool approx_eq(const HyperRectangle& lhs, const HyperRectangle& rhs,
                      value_t eps = kDefaultTolerance) {
    if (lhs.dimension() != rhs.dimension()) return false;
    for (std::size_t i = 0; i < lhs.axes.size(); ++i)
        if (!approx_eq(lhs.axes[i], rhs.axes[i], eps)) return false;
    return true;
}

namespace detail {

template <typename AxisOp>
std::optional<HyperRectangle> rect_axiswise(const HyperRectangle& lhs,
                                            const HyperRectangle& rhs, AxisOp&& op) {
    if (lhs.dimension() != rhs.dimension())
        throw std::invalid_argument("hyper-rectangle dimension mismatch");
    HyperRectangle out;
    out.axes.reserve(lhs.dimension());
    for (std::size_t i = 0; i < lhs.dimension(); ++i) {
        OpResult axis = op(lhs.axes[i], rhs.axes[i]);
        if (axis.is_zero()) return std::nullopt;
        out.axes.push_back(*axis.module);
    }
    return out;
}

} // namespace detail

inline std::optional<HyperRectangle> tensor_rect(const HyperRectangle& lhs,
                                                 const HyperRectangle& rhs, PExponent p,
                                                 value_t eps = kDefaultTolerance) {
    return detail::rect_axiswise(
        lhs, rhs, [&](const Interval& a, const Interval& b) { return tensor_lp(a, b, p, eps); });
}

// Axiswise internal hom; restricted to finite p (the p=inf tables are only
// established one axis at a time).
inline std::optional<HyperRectangle> hom_rect(const HyperRectangle& lhs,
                                              const HyperRectangle& rhs, PExponent p,
                                              value_t eps = kDefaultTolerance) {
    if (p.is_inf())
        throw unsupported_case("hom_rect requires finite p; use the one-parameter case tables");
    return detail::rect_axiswise(
        lhs, rhs, [&](const Interval& a, const Interval& b) { return hom_lp(a, b, p, eps); });
}

} // namespace prodpers
