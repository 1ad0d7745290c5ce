#pragma once

// Experiment harness: sample two factor spaces, compute their Vietoris-Rips
// barcodes, combine them with the Kunneth formula, compute the Vietoris-Rips
// barcode of the l^p product metric space directly, and report per-degree
// bottleneck distances between the two diagrams.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "prodpers/bottleneck.hpp"
#include "prodpers/metric.hpp"
#include "prodpers/product.hpp"
#include "prodpers/reduction.hpp"
#include "prodpers/rips.hpp"

namespace prodpers {

// Thrown when a trial would exceed the configured desk-scale bounds.
class resource_guard_tripped : public std::runtime_error {
public:
    explicit resource_guard_tripped(const std::string& what) : std::runtime_error(what) {}
};

enum class Shape { square, torus };

inline const char* shape_name(Shape s) { return s == Shape::square ? "square" : "torus"; }

struct ExperimentConfig {
    Shape shape = Shape::square;
    std::vector<std::size_t> n_values;  // per-factor sample counts
    std::vector<PExponent> p_values;    // metric exponents, each >= 1
    int max_dim = 1;                    // top product homology degree compared
    std::vector<std::uint64_t> seeds;
    std::size_t n_cap = 16;             // resource guard: max points per factor
    std::size_t cell_cap = 24'000'000;  // resource guard: max product cells
    unsigned workers = 0;               // 0 = hardware concurrency
};

struct ExperimentRow {
    std::string shape;
    value_t p;
    std::size_t n;
    std::uint64_t seed;
    int degree;
    value_t bottleneck;
    value_t diameter_bound; // min(diam X, diam Y) of the factor samples
};

struct TrialDiagrams {
    std::string key; // shape_pP_nN_seedS
    Barcode direct;
    Barcode combined;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t binomial_count(std::uint64_t n, std::uint64_t k) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

} // namespace detail

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<TrialDiagrams> diagrams;
};

inline ExperimentResult run_experiment(const ExperimentConfig& config,
                                       bool keep_diagrams = false) {
    for (std::size_t n : config.n_values) {
        if (n < 2) throw std::invalid_argument("experiment requires n >= 2 per factor");
        if (n > config.n_cap)
            throw resource_guard_tripped("n=" + std::to_string(n) + " exceeds the per-factor cap " +
                                         std::to_string(config.n_cap));
    }
    for (PExponent p : config.p_values)
        if (!p.is_inf() && p.p < 1.0)
            throw std::invalid_argument("experiment metric requires p >= 1");

    // Direct side needs simplices one dimension above the top compared
    // degree so that every compared degree is exact.
    const int direct_dim = config.max_dim + 1;
    for (std::size_t n : config.n_values) {
        std::uint64_t cells = 0;
        for (int d = 0; d <= direct_dim; ++d)
            cells += detail::binomial_count(n * n, static_cast<std::uint64_t>(d) + 1);
        if (cells > config.cell_cap)
            throw resource_guard_tripped(
                "product complex for n=" + std::to_string(n) + " needs " + std::to_string(cells) +
                " cells, above the cap of " + std::to_string(config.cell_cap) +
                " (the direct computation runs out of memory well before large samples)");
    }

    struct Trial {
        std::size_t n;
        PExponent p;
        std::uint64_t seed;
    };
    std::vector<Trial> trials;
    for (std::size_t n : config.n_values)
        for (PExponent p : config.p_values)
            for (std::uint64_t seed : config.seeds) trials.push_back({n, p, seed});

    ExperimentResult result;
    std::mutex sink;
    std::size_t next = 0;
    std::mutex queue;

    auto run_trial = [&](const Trial& trial) {
        const bool torus = config.shape == Shape::torus;
        auto sample = [&](std::uint64_t salt) {
            const std::uint64_t s = detail::mix_seed(trial.seed, salt);
            return torus ? sample_circle(trial.n, s) : sample_interval(trial.n, s);
        };
        const FiniteMetricSpace x = sample(1), y = sample(2);
        const value_t diameter_bound = std::min(x.diameter(), y.diameter());

        // Factor barcodes, exact up to degree max_dim.
        const PrimeField field(2);
        const Barcode bx =
            persistent_homology(vietoris_rips(x, config.max_dim + 1), field).truncated(config.max_dim);
        const Barcode by =
            persistent_homology(vietoris_rips(y, config.max_dim + 1), field).truncated(config.max_dim);

        const Barcode combined =
            kunneth_product_barcode(bx, by, trial.p, config.max_dim).barcode;

        const FiniteMetricSpace xy = product_metric(x, y, trial.p);
        const Barcode direct =
            persistent_homology(vietoris_rips(xy, direct_dim), field).truncated(config.max_dim);

        const Diagram direct_diagram = Diagram::from_barcode(direct);
        const Diagram combined_diagram = Diagram::from_barcode(combined);

        std::vector<ExperimentRow> rows;
        for (int degree = 1; degree <= config.max_dim; ++degree)
            rows.push_back({shape_name(config.shape), trial.p.p, trial.n, trial.seed, degree,
                            bottleneck_distance(direct_diagram, combined_diagram,
                                                static_cast<std::size_t>(degree)),
                            diameter_bound});

        std::lock_guard<std::mutex> lock(sink);
        for (auto& row : rows) result.rows.push_back(std::move(row));
        if (keep_diagrams) {
            std::string key = std::string(shape_name(config.shape)) + "_p" +
                              (trial.p.is_inf() ? std::string("inf") : std::to_string(trial.p.p)) +
                              "_n" + std::to_string(trial.n) + "_seed" + std::to_string(trial.seed);
            result.diagrams.push_back({std::move(key), direct, combined});
        }
    };

    unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, trials.size()));
    if (workers == 1) {
        for (const Trial& trial : trials) run_trial(trial);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t mine;
                    {
                        std::lock_guard<std::mutex> lock(queue);
                        if (next >= trials.size()) return;
                        mine = next++;
                    }
                    run_trial(trials[mine]);
                }
            });
        for (auto& t : pool) t.join();
    }

    // Deterministic output order regardless of worker scheduling.
    std::sort(result.rows.begin(), result.rows.end(),
              [](const ExperimentRow& a, const ExperimentRow& b) {
                  return std::tie(a.shape, a.p, a.n, a.seed, a.degree) <
                         std::tie(b.shape, b.p, b.n, b.seed, b.degree);
              });
    std::sort(result.diagrams.begin(), result.diagrams.end(),
              [](const TrialDiagrams& a, const TrialDiagrams& b) { return a.key < b.key; });
    return result;
}

inline void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    out << "shape,p,n,seed,degree,bottleneck\n";
    for (const auto& row : rows) {
        out << row.shape << ',' << format_value(row.p) << ',' << row.n << ',' << row.seed
            << ',' << row.degree << ',' << format_value(row.bottleneck) << '\n';
    }
}

} // namespace prodpers
