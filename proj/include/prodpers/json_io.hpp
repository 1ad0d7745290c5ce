#pragma once

// JSON exchange formats. Intervals serialize as {"birth": x, "death": y}
// with "inf" for infinite deaths; barcodes as an array of
// {"degree": n, "bars": [interval...]} objects; provenance as JSON lines.

#include <json.hpp>

#include <ostream>

#include "prodpers/barcode.hpp"
#include "prodpers/product.hpp"

namespace prodpers {

using json = nlohmann::json;

inline json to_json(const Interval& bar) {
    json out{{"birth", bar.birth}};
    if (bar.essential())
        out["death"] = "inf";
    else
        out["death"] = bar.death;
    return out;
}

inline Interval interval_from_json(const json& j) {
    Interval bar;
    bar.birth = j.at("birth").get<value_t>();
    const auto& death = j.at("death");
    bar.death = death.is_string() ? kInf : death.get<value_t>();
    return bar;
}

inline json to_json(const Barcode& barcode) {
    json out = json::array();
    for (std::size_t d = 0; d < barcode.degree_count(); ++d) {
        json bars = json::array();
        for (const Interval& bar : barcode.bars(d)) bars.push_back(to_json(bar));
        out.push_back({{"degree", d}, {"bars", std::move(bars)}});
    }
    return out;
}

inline Barcode barcode_from_json(const json& j) {
    Barcode out;
    for (const auto& entry : j) {
        const auto degree = entry.at("degree").get<std::size_t>();
        for (const auto& bar : entry.at("bars")) out.add(degree, interval_from_json(bar));
    }
    return out;
}

inline json to_json(const ProductTerm& term) {
    return json{{"kind", term.kind == ProductTerm::Kind::tensor ? "tensor" : "tor"},
                {"n", term.degree},
                {"i", term.left_degree},
                {"j", term.right_degree},
                {"left", to_json(term.left)},
                {"right", to_json(term.right)},
                {"result", to_json(term.result)}};
}

inline void write_provenance_lines(const std::vector<ProductTerm>& terms, std::ostream& out) {
    for (const ProductTerm& term : terms) out << to_json(term).dump() << '\n';
}

} // namespace prodpers
