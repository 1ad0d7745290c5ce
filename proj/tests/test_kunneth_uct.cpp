#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle_utils.hpp"
#include "prodpers/product.hpp"
#include "prodpers/reduction.hpp"

using namespace prodpers;

namespace {

const PExponent kOne{1.0};
const PExponent kTwo{2.0};
const PExponent kInfP = PExponent::inf();

// Filtered 1-simplex: two vertices at a <= b, one edge at c >= b.
FilteredComplex segment(value_t a, value_t b, value_t c) {
    FilteredComplex out;
    const auto u = out.add_cell(0, a);
    const auto v = out.add_cell(0, b);
    out.add_cell(1, c, {{static_cast<std::uint32_t>(v), 1},
                        {static_cast<std::uint32_t>(u), -1}});
    return out;
}

// The worked product-of-segments barcode: four tensor bars in degree 0 and
// one Tor bar in degree 1, all built from lp-combinations of the factor
// values.
Barcode expected_square_barcode(value_t a1, value_t b1, value_t c1, value_t a2, value_t b2,
                                value_t c2, PExponent p) {
    auto lp = [&](value_t x, value_t y) { return lp_combine(x, y, p); };
    Barcode expected;
    expected.add(0, Interval(lp(a1, a2), kInf));
    expected.add(0, make_interval(lp(a1, b2), lp(a1, c2)));
    expected.add(0, make_interval(lp(b1, a2), lp(c1, a2)));
    expected.add(0, make_interval(lp(b1, b2), std::min(lp(b1, c2), lp(c1, b2))));
    if (!p.is_inf())
        expected.add(1, make_interval(std::max(lp(b1, c2), lp(c1, b2)), lp(c1, c2)));
    expected.sort();
    return expected;
}

Barcode random_free_barcode(std::mt19937_64& rng, int max_degree = 2, std::size_t max_bars = 4) {
    std::uniform_int_distribution<std::size_t> count(0, max_bars);
    Barcode out;
    for (int d = 0; d <= max_degree; ++d) {
        const std::size_t n = count(rng);
        for (std::size_t i = 0; i < n; ++i) out.add(d, oracle::random_interval(rng));
    }
    return out;
}

} // namespace

TEST_CASE("Kunneth square matches the closed-form barcode and direct reduction") {
    const value_t cases[][6] = {
        {0, 1, 2, 0, 3, 4},
        {1, 2, 3, 1, 2, 3},
        {0.5, 1.5, 2.5, 1.0, 2.0, 4.0},
    };
    for (const auto& v : cases) {
        const auto k = segment(v[0], v[1], v[2]);
        const auto l = segment(v[3], v[4], v[5]);
        const Barcode bk = persistent_homology(k);
        const Barcode bl = persistent_homology(l);
        for (PExponent p : {kOne, kTwo, kInfP}) {
            const auto combined = kunneth_product_barcode(bk, bl, p);
            const auto expected =
                expected_square_barcode(v[0], v[1], v[2], v[3], v[4], v[5], p);
            CHECK(barcodes_match(combined.barcode, expected));

            for (std::uint32_t q : {2u, 3u}) {
                const auto direct =
                    persistent_homology(product_filtered_complex(k, l, p), PrimeField(q));
                CHECK(barcodes_match(combined.barcode, direct));
            }
        }
    }
}

TEST_CASE("p=inf products are pure tensor") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const Barcode bk = random_free_barcode(rng);
        const Barcode bl = random_free_barcode(rng);
        const auto result = kunneth_product_barcode(bk, bl, kInfP);
        for (const auto& term : result.terms)
            CHECK(term.kind == ProductTerm::Kind::tensor);
    }
}

TEST_CASE("tensoring against the unit barcode is the identity") {
    std::mt19937_64 rng(67);
    Barcode unit;
    unit.add(0, Interval(0.0, kInf));
    for (int trial = 0; trial < 40; ++trial) {
        const Barcode bk = random_free_barcode(rng);
        for (PExponent p : {kOne, kTwo, kInfP})
            CHECK(barcodes_match(kunneth_product_barcode(bk, unit, p).barcode, bk));
    }
}

TEST_CASE("swapping the factors leaves the product barcode unchanged") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const Barcode bk = random_free_barcode(rng);
        const Barcode bl = random_free_barcode(rng);
        for (PExponent p : {kOne, kTwo, kInfP})
            CHECK(barcodes_match(kunneth_product_barcode(bk, bl, p).barcode,
                                 kunneth_product_barcode(bl, bk, p).barcode));
    }
}

TEST_CASE("pointwise dimension identity through the provenance terms") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<value_t> t_dist(0.0, 12.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Barcode bk = random_free_barcode(rng);
        const Barcode bl = random_free_barcode(rng);
        for (PExponent p : {kOne, kTwo, kInfP}) {
            const auto result = kunneth_product_barcode(bk, bl, p);
            for (int probe = 0; probe < 20; ++probe) {
                const value_t t = t_dist(rng);
                for (int n = 0; n <= result.barcode.max_degree(); ++n) {
                    std::size_t from_terms = 0;
                    for (const auto& term : result.terms)
                        if (term.degree == n && term.result.birth <= t && t < term.result.death)
                            ++from_terms;
                    CHECK(pointwise_rank(result.barcode, n, t) == from_terms);
                }
            }
        }
    }
}

TEST_CASE("product filtered complex of two segments is the filtered square") {
    const auto k = segment(0, 1, 2);
    const auto l = segment(0, 3, 4);
    const auto square = product_filtered_complex(k, l, kTwo);
    REQUIRE(square.size() == 9);
    CHECK(validate_filtration(square).empty());
    CHECK(boundary_squared_is_zero(square, PrimeField(3)));
    int counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < square.size(); ++i) ++counts[square.dim(i)];
    CHECK(counts[0] == 4);
    CHECK(counts[1] == 4);
    CHECK(counts[2] == 1);
    for (std::size_t i = 0; i < square.size(); ++i)
        if (square.dim(i) == 2) CHECK(square.value(i) == lp_combine(2, 4, kTwo));
}

TEST_CASE("product with a point factor relabels the other factor") {
    FilteredComplex point;
    point.add_cell(0, 0.0);
    const auto l = segment(0.5, 1.0, 3.0);
    for (PExponent p : {kOne, kTwo, kInfP}) {
        const auto product = product_filtered_complex(point, l, p);
        REQUIRE(product.size() == l.size());
        for (std::size_t i = 0; i < l.size(); ++i) {
            CHECK(product.dim(i) == l.dim(i));
            CHECK(product.value(i) == l.value(i)); // phi(0, y) = y exactly
        }
    }
}

TEST_CASE("user-supplied phi maps") {
    const auto k = segment(0, 1, 2);
    const auto l = segment(0, 3, 4);
    // a monotone non-lp map is accepted on the free-module path
    const PhiMap weighted([](value_t x, value_t y) { return 2 * x + y; });
    const auto product = product_filtered_complex(k, l, weighted);
    CHECK(validate_filtration(product).empty());
    for (std::size_t i = 0; i < product.size(); ++i)
        if (product.dim(i) == 2) CHECK(product.value(i) == 2 * 2 + 4);

    const PhiMap broken([](value_t x, value_t y) { return std::max(x, y) - std::min(x, 1.0); });
    CHECK_THROWS_AS((void)product_filtered_complex(k, l, broken), std::invalid_argument);
}

TEST_CASE("Kunneth combination equals direct reduction on random factor complexes") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 40; ++trial) {
        const auto x = oracle::random_complex(rng, 8);
        const auto y = oracle::random_complex(rng, 8);
        for (PExponent p : {kOne, kTwo, kInfP}) {
            for (std::uint32_t q : {2u, 3u}) {
                const PrimeField field(q);
                const Barcode combined =
                    kunneth_product_barcode(persistent_homology(x, field),
                                            persistent_homology(y, field), p)
                        .barcode;
                const Barcode direct =
                    persistent_homology(product_filtered_complex(x, y, p), field);
                CHECK(barcodes_match(combined, direct));
            }
        }
    }
}

TEST_CASE("UCT cochain barcode of the worked triangle filtration") {
    FilteredComplex triangle;
    const auto x = triangle.add_cell(0, 0.0);
    const auto y = triangle.add_cell(0, 1.0);
    const auto z = triangle.add_cell(0, 2.0);
    const auto xy = triangle.add_cell(1, 3.0, {{static_cast<std::uint32_t>(y), 1},
                                               {static_cast<std::uint32_t>(x), -1}});
    const auto yz = triangle.add_cell(1, 4.0, {{static_cast<std::uint32_t>(z), 1},
                                               {static_cast<std::uint32_t>(y), -1}});
    const auto xz = triangle.add_cell(1, 5.0, {{static_cast<std::uint32_t>(z), 1},
                                               {static_cast<std::uint32_t>(x), -1}});
    triangle.add_cell(2, 6.0, {{static_cast<std::uint32_t>(yz), 1},
                               {static_cast<std::uint32_t>(xz), -1},
                               {static_cast<std::uint32_t>(xy), 1}});

    const value_t alpha = 10.0;
    for (PExponent p : {kOne, kTwo}) {
        auto diff = [&](value_t hi, value_t lo) { return lp_diff(hi, lo, p); };
        Barcode expected;
        expected.add(0, Interval(diff(alpha, 0.0), kInf));
        expected.add(1, Interval(diff(alpha, 3.0), diff(alpha, 1.0)));
        expected.add(1, Interval(diff(alpha, 4.0), diff(alpha, 2.0)));
        expected.add(2, Interval(diff(alpha, 6.0), diff(alpha, 5.0)));
        expected.sort();

        const Barcode uct =
            uct_cohomology_barcode(persistent_homology(triangle), Interval(alpha, kInf), p);
        CHECK(barcodes_match(uct, expected));
        CHECK(barcodes_match(borel_moore_barcode(triangle, alpha, p), expected));
    }
}

TEST_CASE("UCT coefficient module must be of the form k[alpha, inf)") {
    Barcode trivial;
    trivial.add(0, Interval(0.0, kInf));
    CHECK_THROWS_AS((void)uct_cohomology_barcode(trivial, Interval(1.0, 5.0), kOne),
                    std::invalid_argument);
    // unit barcode maps to a single shifted essential class
    const auto uct = uct_cohomology_barcode(trivial, Interval(3.0, kInf), kTwo);
    REQUIRE(uct.bars(0).size() == 1);
    CHECK(approx_eq(uct.bars(0)[0], Interval(3.0, kInf)));
    for (std::size_t d = 1; d < uct.degree_count(); ++d) CHECK(uct.bars(d).empty());
}

TEST_CASE("UCT matches direct reduction of the reversed cochain complex") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 60; ++trial) {
        const auto complex = oracle::random_complex(rng, 8);
        if (complex.empty()) continue;
        const value_t alpha = complex.max_value() + 1 + (trial % 3);
        for (PExponent p : {kOne, kTwo}) {
            const Barcode uct = uct_cohomology_barcode(persistent_homology(complex),
                                                       Interval(alpha, kInf), p);
            const auto reversed = oracle::reversed_hom_complex(complex, alpha, p);
            CHECK(validate_filtration(reversed).empty());
            const Barcode direct = persistent_homology(reversed);
            const int top = complex.max_dim();
            for (int n = 0; n <= top; ++n) {
                Barcode uct_slice, direct_slice;
                for (const auto& bar : uct.bars(n)) uct_slice.add(0, bar);
                for (const auto& bar : direct.bars(top - n)) direct_slice.add(0, bar);
                CHECK(barcodes_match(uct_slice, direct_slice));
            }
            for (int n = top + 1; n <= uct.max_degree(); ++n) CHECK(uct.bars(n).empty());
        }
    }
}

TEST_CASE("Borel-Moore preconditions") {
    FilteredComplex vertex;
    vertex.add_cell(0, 2.0);
    const auto barcode = borel_moore_barcode(vertex, 5.0, kTwo);
    REQUIRE(barcode.bars(0).size() == 1);
    CHECK(approx_eq(barcode.bars(0)[0], Interval(lp_diff(5.0, 2.0, kTwo), kInf)));

    CHECK_THROWS_AS((void)borel_moore_barcode(vertex, 2.0, kTwo), std::invalid_argument);
    CHECK_THROWS_AS((void)borel_moore_barcode(vertex, 1.0, kTwo), std::invalid_argument);
    CHECK_THROWS_AS((void)borel_moore_barcode(vertex, 5.0, kInfP), std::invalid_argument);
}
