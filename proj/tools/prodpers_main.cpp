// Command-line surface for the interval algebra, persistence pipelines and
// the product-metric experiment harness. Subcommands: algebra, homology, vr,
// kunneth, uct, borel-moore, bottleneck, experiment.
//
// Exit codes: 0 ok, 2 validation error, 3 resource guard.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prodpers/bottleneck.hpp"
#include "prodpers/experiment.hpp"
#include "prodpers/json_io.hpp"
#include "prodpers/metric.hpp"
#include "prodpers/product.hpp"
#include "prodpers/reduction.hpp"
#include "prodpers/rips.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResourceGuard = 3;

using namespace prodpers;

value_t parse_endpoint(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return kInf;
    std::size_t used = 0;
    const value_t v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad endpoint `" + text + "`");
    if (v < 0) throw std::invalid_argument("endpoints must be nonnegative");
    return v;
}

PExponent parse_exponent(const std::string& text) {
    const value_t v = parse_endpoint(text);
    PExponent p(v);
    if (!p.valid()) throw std::invalid_argument("p must be positive");
    return p;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PRODPERS_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

// Expands `--config FILE` occurrences in place: each `key = value` line of
// the file becomes `--key value...` at the position of the flag, so every
// flag has a config equivalent and later command-line flags still win.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config") {
            if (i + 1 >= argc) throw std::invalid_argument("--config needs a file path");
            path = argv[++i];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        } else {
            args.push_back(std::move(arg));
            continue;
        }
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file `" + path + "`");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": expected key=value");
            args.push_back("--" + trim(line.substr(0, eq)));
            std::istringstream values(trim(line.substr(eq + 1)));
            std::string token;
            while (values >> token) args.push_back(token);
        }
    }
    return args;
}

FilteredComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open complex file `" + path + "`");
    return parse_complex(in);
}

Barcode load_barcode(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open barcode file `" + path + "`");
    json j;
    in >> j;
    return barcode_from_json(j);
}

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write `" + out_path + "`");
    out << payload.dump(2) << '\n';
}

struct AlgebraArgs {
    std::string op;
    std::vector<std::string> endpoints;
    std::string p = "2";
    value_t eps = kDefaultTolerance;
};

int run_algebra(const AlgebraArgs& args) {
    const PExponent p = parse_exponent(args.p);
    if (args.endpoints.size() != 4)
        throw std::invalid_argument("expected four endpoints: a b c d");
    const value_t a = parse_endpoint(args.endpoints[0]);
    const value_t b = parse_endpoint(args.endpoints[1]);
    const value_t c = parse_endpoint(args.endpoints[2]);
    const value_t d = parse_endpoint(args.endpoints[3]);
    auto lhs = make_interval(a, b, args.eps), rhs = make_interval(c, d, args.eps);
    if (!lhs || !rhs) throw std::invalid_argument("degenerate input interval");

    OpResult result;
    if (args.op == "tensor")
        result = tensor_lp(*lhs, *rhs, p, args.eps);
    else if (args.op == "hom")
        result = hom_lp(*lhs, *rhs, p, args.eps);
    else if (args.op == "tor")
        result = tor1_lp(*lhs, *rhs, p, args.eps);
    else if (args.op == "ext")
        result = ext1_lp(*lhs, *rhs, p, args.eps);
    else
        throw std::invalid_argument("unknown op `" + args.op +
                                    "` (expected tensor|hom|tor|ext)");

    json payload;
    if (result.module)
        payload = to_json(*result.module);
    else
        payload = json{{"zero", true}};
    payload["case"] = result.rule;
    std::cout << payload.dump() << '\n';
    return 0;
}

int run_homology(const std::string& path, std::uint32_t q, const std::string& out_path) {
    const FilteredComplex complex = load_complex(path);
    const auto violations = validate_filtration(complex);
    if (!violations.empty()) {
        for (const auto& v : violations)
            std::cerr << "violation: cell " << complex.external_id(v.cell) << " / "
                      << complex.external_id(v.boundary_cell) << ": " << v.reason << '\n';
        return kExitValidation;
    }
    emit(to_json(persistent_homology(complex, PrimeField(q))), out_path);
    return 0;
}

struct VrArgs {
    std::string input;
    std::string sample; // interval | circle
    std::size_t n = 0;
    std::uint64_t seed = default_seed();
    int max_dim = 1;
    std::string max_scale = "inf";
    std::uint32_t field = 2;
    std::string complex_out;
    std::string out;
};

int run_vr(const VrArgs& args) {
    FiniteMetricSpace space;
    if (!args.sample.empty()) {
        if (args.n == 0) throw std::invalid_argument("--sample requires --n");
        if (args.sample == "interval")
            space = sample_interval(args.n, args.seed);
        else if (args.sample == "circle")
            space = sample_circle(args.n, args.seed);
        else
            throw std::invalid_argument("--sample must be `interval` or `circle`");
    } else if (!args.input.empty()) {
        std::ifstream in(args.input);
        if (!in) throw std::invalid_argument("cannot open `" + args.input + "`");
        space = parse_distance_csv(in);
    } else {
        throw std::invalid_argument("vr needs --input or --sample");
    }

    const FilteredComplex complex =
        vietoris_rips(space, args.max_dim, parse_endpoint(args.max_scale));
    if (!args.complex_out.empty()) {
        std::ofstream out(args.complex_out);
        if (!out) throw std::invalid_argument("cannot write `" + args.complex_out + "`");
        format_complex(complex, out);
        return 0;
    }
    emit(to_json(persistent_homology(complex, PrimeField(args.field))), args.out);
    return 0;
}

struct KunnethArgs {
    std::string left, right;
    std::string p = "2";
    int max_degree = -1;
    std::string provenance;
    std::vector<std::string> check; // two complex files
    std::uint32_t field = 2;
    std::string out;
};

int run_kunneth(const KunnethArgs& args) {
    const PExponent p = parse_exponent(args.p);
    const Barcode bk = load_barcode(args.left);
    const Barcode bl = load_barcode(args.right);
    KunnethResult result = kunneth_product_barcode(bk, bl, p, args.max_degree);

    if (!args.check.empty()) {
        if (args.check.size() != 2)
            throw std::invalid_argument("--check takes the two factor complex files");
        const FilteredComplex product =
            product_filtered_complex(load_complex(args.check[0]), load_complex(args.check[1]), p);
        const Barcode direct = persistent_homology(product, PrimeField(args.field));
        const int degrees = args.max_degree >= 0
                                ? args.max_degree
                                : std::max(direct.max_degree(), result.barcode.max_degree());
        if (!barcodes_match(result.barcode.truncated(degrees), direct.truncated(degrees))) {
            std::cerr << "mismatch: Kunneth combination disagrees with the reduced product complex\n";
            return kExitValidation;
        }
        std::cerr << "check ok: matches direct reduction of the product complex\n";
    }

    if (!args.provenance.empty()) {
        if (args.provenance == "-") {
            write_provenance_lines(result.terms, std::cout);
        } else {
            std::ofstream out(args.provenance);
            if (!out) throw std::invalid_argument("cannot write `" + args.provenance + "`");
            write_provenance_lines(result.terms, out);
        }
    }
    emit(to_json(result.barcode), args.out);
    return 0;
}

int run_uct(const std::string& barcode_path, const std::string& alpha, const std::string& p,
            const std::string& out_path) {
    const Barcode bk = load_barcode(barcode_path);
    emit(to_json(uct_cohomology_barcode(bk, Interval(parse_endpoint(alpha), kInf),
                                        parse_exponent(p))),
         out_path);
    return 0;
}

int run_borel_moore(const std::string& path, const std::string& alpha, const std::string& p,
                    std::uint32_t q, const std::string& out_path) {
    const FilteredComplex complex = load_complex(path);
    emit(to_json(borel_moore_barcode(complex, parse_endpoint(alpha), parse_exponent(p),
                                     PrimeField(q))),
         out_path);
    return 0;
}

int run_bottleneck(const std::string& left, const std::string& right, int degree) {
    const Diagram a = Diagram::from_barcode(load_barcode(left));
    const Diagram b = Diagram::from_barcode(load_barcode(right));
    json payload = json::array();
    const std::size_t degrees = std::max(a.degree_count(), b.degree_count());
    for (std::size_t d = 0; d < degrees; ++d) {
        if (degree >= 0 && d != static_cast<std::size_t>(degree)) continue;
        const value_t dist = bottleneck_distance(a, b, d);
        payload.push_back({{"degree", d},
                           {"bottleneck", std::isinf(dist) ? json("inf") : json(dist)}});
    }
    std::cout << payload.dump(2) << '\n';
    return 0;
}

struct ExperimentArgs {
    std::string shape = "square";
    std::vector<std::size_t> n_values;
    std::size_t n_min = 0, n_max = 0;
    std::vector<std::string> p_values;
    std::vector<std::uint64_t> seeds;
    std::size_t seed_count = 3;
    int max_dim = -1;
    std::size_t cap_n = 16;
    unsigned workers = 0;
    std::string out;
    std::string dump_dir;
};

int run_experiment(const ExperimentArgs& args) {
    ExperimentConfig config;
    if (args.shape == "square")
        config.shape = Shape::square;
    else if (args.shape == "torus")
        config.shape = Shape::torus;
    else
        throw std::invalid_argument("--shape must be `square` or `torus`");

    config.n_values = args.n_values;
    if (config.n_values.empty()) {
        const std::size_t lo = args.n_min ? args.n_min : 5;
        const std::size_t hi = args.n_max ? args.n_max
                                          : (config.shape == Shape::square ? 12 : 10);
        for (std::size_t n = lo; n <= hi; ++n) config.n_values.push_back(n);
    }

    if (args.p_values.empty()) {
        config.p_values = {PExponent(1), PExponent(2), PExponent(5)};
    } else {
        for (const auto& text : args.p_values) config.p_values.push_back(parse_exponent(text));
    }

    config.seeds = args.seeds;
    if (config.seeds.empty()) {
        const std::uint64_t base = default_seed();
        for (std::size_t i = 0; i < args.seed_count; ++i) config.seeds.push_back(base + i);
    }

    // Desk-scale defaults: degree 1 on the square (higher factor homology is
    // trivial there), degrees up to 2 on the torus.
    config.max_dim = args.max_dim >= 0 ? args.max_dim
                                       : (config.shape == Shape::square ? 1 : 2);
    config.n_cap = args.cap_n;
    config.workers = args.workers;

    const ExperimentResult result = run_experiment(config, !args.dump_dir.empty());

    if (args.out.empty()) {
        write_experiment_csv(result.rows, std::cout);
    } else {
        std::ofstream out(args.out);
        if (!out) throw std::invalid_argument("cannot write `" + args.out + "`");
        write_experiment_csv(result.rows, out);
        std::cerr << "wrote " << result.rows.size() << " rows to " << args.out << '\n';
    }

    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        for (const auto& trial : result.diagrams) {
            std::ofstream direct(args.dump_dir + "/" + trial.key + "_direct.json");
            direct << to_json(trial.direct).dump(2) << '\n';
            std::ofstream combined(args.dump_dir + "/" + trial.key + "_kunneth.json");
            combined << to_json(trial.combined).dump(2) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology of product filtrations via Kunneth short exact sequences"};
    app.require_subcommand(1);

    AlgebraArgs algebra;
    auto* cmd_algebra = app.add_subcommand("algebra", "closed-form interval algebra");
    cmd_algebra->add_option("op", algebra.op, "tensor|hom|tor|ext")->required();
    cmd_algebra->add_option("endpoints", algebra.endpoints, "a b c d (accepting `inf`)")
        ->expected(4);
    cmd_algebra->add_option("--p", algebra.p, "exponent p, positive or `inf`");
    cmd_algebra->add_option("--eps", algebra.eps, "comparison tolerance");

    std::string homology_path, homology_out;
    std::uint32_t homology_field = 2;
    auto* cmd_homology = app.add_subcommand("homology", "barcode of a filtered complex file");
    cmd_homology->add_option("complex", homology_path, "filtered complex file")->required();
    cmd_homology->add_option("--field", homology_field, "prime field characteristic");
    cmd_homology->add_option("--out", homology_out, "output path (default stdout)");

    VrArgs vr;
    auto* cmd_vr = app.add_subcommand("vr", "Vietoris-Rips filtration from a metric space");
    cmd_vr->add_option("--input", vr.input, "distance matrix CSV");
    cmd_vr->add_option("--sample", vr.sample, "sample a space instead: interval|circle");
    cmd_vr->add_option("--n", vr.n, "sample size");
    cmd_vr->add_option("--seed", vr.seed, "sampler seed (default $PRODPERS_SEED or 1)");
    cmd_vr->add_option("--max-dim", vr.max_dim, "top simplex dimension");
    cmd_vr->add_option("--max-scale", vr.max_scale, "diameter cutoff (default inf)");
    cmd_vr->add_option("--field", vr.field, "prime field characteristic");
    cmd_vr->add_option("--complex-out", vr.complex_out, "write the complex instead of reducing");
    cmd_vr->add_option("--out", vr.out, "output path (default stdout)");

    KunnethArgs kunneth;
    auto* cmd_kunneth = app.add_subcommand("kunneth", "combine factor barcodes");
    cmd_kunneth->add_option("left", kunneth.left, "first factor barcode JSON")->required();
    cmd_kunneth->add_option("right", kunneth.right, "second factor barcode JSON")->required();
    cmd_kunneth->add_option("--p", kunneth.p, "exponent p, >= 1 or `inf`");
    cmd_kunneth->add_option("--max-degree", kunneth.max_degree, "cap the output degree");
    cmd_kunneth->add_option("--provenance", kunneth.provenance,
                            "write JSON-lines provenance (`-` for stdout)");
    cmd_kunneth->add_option("--check", kunneth.check,
                            "two factor complex files; assert equality with direct reduction")
        ->expected(2);
    cmd_kunneth->add_option("--field", kunneth.field, "field for --check");
    cmd_kunneth->add_option("--out", kunneth.out, "output path (default stdout)");

    std::string uct_barcode, uct_alpha, uct_p = "2", uct_out;
    auto* cmd_uct = app.add_subcommand("uct", "universal-coefficient cochain barcode");
    cmd_uct->add_option("barcode", uct_barcode, "homology barcode JSON")->required();
    cmd_uct->add_option("--alpha", uct_alpha, "coefficient module birth")->required();
    cmd_uct->add_option("--p", uct_p, "exponent p");
    cmd_uct->add_option("--out", uct_out, "output path (default stdout)");

    std::string bm_path, bm_alpha, bm_p = "2", bm_out;
    std::uint32_t bm_field = 2;
    auto* cmd_bm = app.add_subcommand("borel-moore", "persistent Borel-Moore barcode");
    cmd_bm->add_option("complex", bm_path, "filtered complex file")->required();
    cmd_bm->add_option("--alpha", bm_alpha, "reversal parameter, above every value")->required();
    cmd_bm->add_option("--p", bm_p, "finite exponent p");
    cmd_bm->add_option("--field", bm_field, "prime field characteristic");
    cmd_bm->add_option("--out", bm_out, "output path (default stdout)");

    std::string bn_left, bn_right;
    int bn_degree = -1;
    auto* cmd_bottleneck = app.add_subcommand("bottleneck", "bottleneck distance of diagrams");
    cmd_bottleneck->add_option("left", bn_left, "barcode JSON")->required();
    cmd_bottleneck->add_option("right", bn_right, "barcode JSON")->required();
    cmd_bottleneck->add_option("--degree", bn_degree, "restrict to one degree");

    ExperimentArgs experiment;
    auto* cmd_experiment = app.add_subcommand("experiment", "product-metric comparison sweep");
    cmd_experiment->add_option("--shape", experiment.shape, "square|torus");
    cmd_experiment->add_option("--n", experiment.n_values, "explicit per-factor sample sizes");
    cmd_experiment->add_option("--n-min", experiment.n_min, "smallest per-factor sample size");
    cmd_experiment->add_option("--n-max", experiment.n_max, "largest per-factor sample size");
    cmd_experiment->add_option("--p", experiment.p_values, "metric exponents (default 1 2 5)");
    cmd_experiment->add_option("--seeds", experiment.seeds, "explicit seed list");
    cmd_experiment->add_option("--seed-count", experiment.seed_count,
                               "number of seeds from the default base");
    cmd_experiment->add_option("--max-dim", experiment.max_dim,
                               "top compared degree (default 1 square, 2 torus)");
    cmd_experiment->add_option("--cap-n", experiment.cap_n, "resource guard on points per factor");
    cmd_experiment->add_option("--workers", experiment.workers, "parallel trials (0 = auto)");
    cmd_experiment->add_option("--out", experiment.out, "CSV output path (default stdout)");
    cmd_experiment->add_option("--dump-dir", experiment.dump_dir, "write per-trial diagram JSON");

    // every scalar flag may repeat (config first, command line last wins)
    for (auto* sub : app.get_subcommands(nullptr))
        for (auto* opt : sub->get_options())
            if (opt->get_expected_max() == 1)
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation; // --help and --version stay 0
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (cmd_algebra->parsed()) return run_algebra(algebra);
        if (cmd_homology->parsed()) return run_homology(homology_path, homology_field, homology_out);
        if (cmd_vr->parsed()) return run_vr(vr);
        if (cmd_kunneth->parsed()) return run_kunneth(kunneth);
        if (cmd_uct->parsed()) return run_uct(uct_barcode, uct_alpha, uct_p, uct_out);
        if (cmd_bm->parsed()) return run_borel_moore(bm_path, bm_alpha, bm_p, bm_field, bm_out);
        if (cmd_bottleneck->parsed()) return run_bottleneck(bn_left, bn_right, bn_degree);
        if (cmd_experiment->parsed()) return run_experiment(experiment);
    } catch (const resource_guard_tripped& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return kExitResourceGuard;
    } catch (const unsupported_case& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const invalid_filtration& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
