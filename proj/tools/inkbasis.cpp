// inkbasis: command-line front end for the ink approximation pipeline.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "inkbasis/inkbasis.hpp"

namespace fs = std::filesystem;
using namespace inkbasis;

namespace {

/// Bad configuration or missing input: exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input;
    std::string format = "auto";
    std::string basis = "chebyshev-sobolev";
    std::vector<std::string> bases;
    double lambda = kDefaultLambda;
    int degree = 10;
    std::vector<int> degrees;
    std::string spline = "linear";
    std::size_t k_min = 1;
    std::size_t k_max = 10;
    std::uint64_t seed = 0;
    double split = LabeledDataset::kDefaultSplit;
    bool train_as_test = false;
    std::size_t limit = 0;
    std::string models;
    fs::path out = "out";
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path resolve_input(const std::string& path) {
    if (path.empty()) throw ConfigError("no input given (pass a path or set INKBASIS_DATA_DIR)");
    fs::path p(path);
    if (p.is_relative() && !fs::exists(p))
        if (const char* root = std::getenv("INKBASIS_DATA_DIR")) p = fs::path(root) / p;
    if (!fs::exists(p)) throw ConfigError("input not found: " + path);
    return p;
}

std::vector<InkTrace> load_traces(const std::string& path, const std::string& format, std::size_t limit) {
    const auto p = resolve_input(path);
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open input: " + p.string());
    auto fmt = format;
    if (fmt == "auto") {
        const auto ext = p.extension().string();
        fmt = ext == ".inkml" || ext == ".xml" ? "inkml" : "pendigits";
    }
    auto traces = fmt == "inkml" ? group_symbols(parse_inkml(in)) : parse_pendigits(in);
    if (limit > 0 && traces.size() > limit) traces.resize(limit);
    return traces;
}

std::vector<NormalizedTrace> normalize_all(const std::vector<InkTrace>& traces, SplineOrder order) {
    std::vector<NormalizedTrace> out;
    out.reserve(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        try {
            out.push_back(arc_length_normalize(traces[i], order));
        } catch (const DegenerateTrace& e) {
            throw DegenerateTrace("trace " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    return f;
}

std::string trace_name(std::size_t i, std::size_t n) {
    const auto width = std::max<std::size_t>(1, std::to_string(n > 0 ? n - 1 : 0).size());
    auto s = std::to_string(i);
    return "trace_" + std::string(width - std::min(width, s.size()), '0') + s;
}

void check_common(const RunConfig& c) {
    if (c.k_min < 1 || c.k_min > c.k_max) throw ConfigError("need 1 <= k-min <= k-max");
    if (!(c.split > 0.0 && c.split < 1.0)) throw ConfigError("--split must lie in (0, 1)");
}

OrthoBasis configured_basis(const RunConfig& c, int degree) {
    return build_basis(parse_basis_kind(c.basis), degree, c.lambda);
}

// s,x,y,kind rows: 200 points of the truncated series, then the input points.
void cmd_approximate(const RunConfig& c) {
    const auto traces = load_traces(c.input, c.format, c.limit);
    const auto normed = normalize_all(traces, parse_spline_order(c.spline));
    const auto basis = configured_basis(c, c.degree);
    for (std::size_t t = 0; t < traces.size(); ++t) {
        const auto& n = normed[t];
        const auto coeffs = to_coeffs(n, basis);
        const auto [sx, sy] = full_series(coeffs);
        const auto px = synthesize(sx, basis), py = synthesize(sy, basis);
        auto f = open_out(c.out / (trace_name(t, traces.size()) + ".csv"));
        f << "s,x,y,kind\n";
        constexpr int kSamples = 200;
        for (int i = 0; i < kSamples; ++i) {
            const double s = -1.0 + 2.0 * i / (kSamples - 1);
            f << num(s) << ',' << num(evaluate(px, s) * n.scale_back()) << ',' << num(evaluate(py, s) * n.scale_back())
              << ",approx\n";
        }
        for (std::size_t i = 0; i < traces[t].size(); ++i)
            f << num(n.knots[i]) << ',' << num(traces[t].points()[i].x) << ',' << num(traces[t].points()[i].y)
              << ",original\n";
    }
}

// Coefficients as JSON lines plus the reconstruction at every input point.
void cmd_reconstruct(const RunConfig& c) {
    const auto traces = load_traces(c.input, c.format, c.limit);
    const auto normed = normalize_all(traces, parse_spline_order(c.spline));
    const auto basis = configured_basis(c, c.degree);
    std::vector<SymbolCoeffs> coeffs;
    coeffs.reserve(traces.size());
    for (const auto& n : normed) coeffs.push_back(to_coeffs(n, basis));
    auto j = open_out(c.out / "coeffs.jsonl");
    write_jsonl(j, coeffs);
    auto f = open_out(c.out / "reconstructed.csv");
    f << "trace_id,point,s,x,y,x_hat,y_hat\n";
    for (std::size_t t = 0; t < traces.size(); ++t) {
        const auto rec = reconstruct_points(normed[t], coeffs[t], basis);
        for (std::size_t i = 0; i < rec.size(); ++i)
            f << t << ',' << i << ',' << num(normed[t].knots[i]) << ',' << num(traces[t].points()[i].x) << ','
              << num(traces[t].points()[i].y) << ',' << num(rec[i].x) << ',' << num(rec[i].y) << '\n';
    }
}

void cmd_error_sweep(const RunConfig& c) {
    auto degrees = c.degrees;
    if (degrees.empty())
        for (int d = 3; d <= 20; ++d) degrees.push_back(d);
    for (int d : degrees)
        if (d < 1 || d > kMaxConvertDegree) throw ConfigError("degrees must lie in [1, 64]");
    const auto traces = load_traces(c.input, c.format, c.limit);
    const auto normed = normalize_all(traces, parse_spline_order(c.spline));
    auto f = open_out(c.out / "error_sweep.csv");
    f << "trace_id,degree,error\n";
    const auto top = configured_basis(c, *std::max_element(degrees.begin(), degrees.end()));
    std::vector<OrthoBasis> bases;
    for (int d : degrees) bases.push_back(top.truncated(d));
    for (std::size_t t = 0; t < traces.size(); ++t)
        for (const auto& b : bases)
            f << t << ',' << b.degree() << ',' << num(representation_error(traces[t], normed[t], to_coeffs(normed[t], b), b))
              << '\n';
}

void cmd_knn_eval(const RunConfig& c) {
    check_common(c);
    const auto traces = load_traces(c.input, c.format, c.limit);
    for (std::size_t i = 0; i < traces.size(); ++i)
        if (!traces[i].label()) throw Error("trace " + std::to_string(i) + " has no label");
    const auto normed = normalize_all(traces, parse_spline_order(c.spline));
    SweepConfig cfg;
    if (!c.bases.empty()) {
        cfg.kinds.clear();
        for (const auto& b : c.bases) cfg.kinds.push_back(parse_basis_kind(b));
    }
    cfg.degree = c.degree;
    cfg.lambda = c.lambda;
    cfg.k_min = c.k_min;
    cfg.k_max = c.k_max;
    cfg.seed = c.seed;
    cfg.split = c.split;
    cfg.train_as_test = c.train_as_test;
    const auto rows = accuracy_sweep(normed, cfg);

    auto f = open_out(c.out / "knn.csv");
    f << "basis,k,accuracy,error_rate\n";
    for (const auto& r : rows) f << to_string(r.kind) << ',' << r.k << ',' << num(r.accuracy) << ',' << num(r.error_rate) << '\n';

    std::map<std::size_t, std::vector<const SweepRow*>> by_k;
    for (const auto& r : rows) by_k[r.k].push_back(&r);
    nlohmann::json best = nlohmann::json::array();
    bool cs_best = std::find(cfg.kinds.begin(), cfg.kinds.end(), BasisKind::ChebyshevSobolev) != cfg.kinds.end();
    for (const auto& [k, cells] : by_k) {
        const SweepRow* top = cells.front();
        for (const auto* r : cells)
            if (r->accuracy > top->accuracy) top = r;
        for (const auto* r : cells)
            if (r->kind == BasisKind::ChebyshevSobolev && r->accuracy < top->accuracy) cs_best = false;
        best.push_back({{"k", k}, {"basis", to_string(top->kind)}, {"accuracy", top->accuracy}});
    }
    nlohmann::json summary{
        {"samples", traces.size()},
        {"degree", c.degree},
        {"lambda", c.lambda},
        {"spline", c.spline},
        {"seed", c.seed},
        {"split", c.split},
        {"train_as_test", c.train_as_test},
        {"best_by_k", best},
        {"chebyshev_sobolev_best_for_all_k", cs_best},
    };
    auto s = open_out(c.out / "knn_summary.json");
    s << summary.dump(2) << '\n';
}

void cmd_build_basis(const RunConfig& c) {
    auto f = open_out(c.out / "basis.json");
    f << to_json(configured_basis(c, c.degree)).dump(2) << '\n';
}

// Nearest model (by coefficient distance) for every sample trace.
void cmd_match(const RunConfig& c) {
    if (c.models.empty()) throw ConfigError("match needs --models");
    const auto order = parse_spline_order(c.spline);
    const auto basis = configured_basis(c, c.degree);
    auto coeffs_of = [&](const std::string& path, std::size_t limit) {
        const auto traces = load_traces(path, c.format, limit);
        std::vector<SymbolCoeffs> out;
        for (const auto& n : normalize_all(traces, order)) out.push_back(to_coeffs(n, basis));
        return out;
    };
    const auto models = coeffs_of(c.models, 0);
    const auto samples = coeffs_of(c.input, c.limit);
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto m = match_symbol(samples[i], models, basis);
        nlohmann::json row{{"sample", i}, {"model_index", m.model_index}, {"distance_sq", m.distance_sq}};
        row["model_label"] = models[m.model_index].label ? nlohmann::json(*models[m.model_index].label) : nlohmann::json();
        out.push_back(row);
    }
    auto f = open_out(c.out / "matches.json");
    f << out.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal-series approximation and classification of digital ink"};
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* root = std::getenv("INKBASIS_DATA_DIR")) cfg.input = (fs::path(root) / "pendigits.txt").string();

    const std::vector<std::string> kinds{"legendre", "chebyshev", "legendre-sobolev", "chebyshev-sobolev"};
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "Pendigits text or InkML file (relative paths also tried under INKBASIS_DATA_DIR)");
        sub->add_option("--format", cfg.format, "Input format")->check(CLI::IsMember({"auto", "pendigits", "inkml"}));
        sub->add_option("--limit", cfg.limit, "Only use the first N traces (0 = all)");
        sub->add_option("--spline", cfg.spline, "Interpolating spline order")->check(CLI::IsMember({"linear", "cubic"}));
    };
    auto add_series = [&](CLI::App* sub) {
        sub->add_option("--lambda", cfg.lambda, "Sobolev derivative weight")->check(CLI::NonNegativeNumber);
        sub->add_option("--degree,-d", cfg.degree, "Truncation degree")->check(CLI::Range(1, kMaxConvertDegree));
    };
    auto add_basis = [&](CLI::App* sub) {
        sub->add_option("--basis", cfg.basis, "Basis family")->check(CLI::IsMember(kinds));
        add_series(sub);
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out,-o", cfg.out, "Output directory"); };

    auto* approx = app.add_subcommand("approximate", "Sample the truncated series of every trace (one CSV per trace)");
    add_input(approx), add_basis(approx), add_out(approx);
    approx->callback([&] { cmd_approximate(cfg); });

    auto* recon = app.add_subcommand("reconstruct", "Write coefficients (JSON lines) and the reconstruction at each input point");
    add_input(recon), add_basis(recon), add_out(recon);
    recon->callback([&] { cmd_reconstruct(cfg); });

    auto* sweep = app.add_subcommand("error-sweep", "Representation error per trace and degree");
    add_input(sweep), add_basis(sweep), add_out(sweep);
    sweep->add_option("--degrees", cfg.degrees, "Degrees to evaluate (default 3..20)");
    sweep->callback([&] { cmd_error_sweep(cfg); });

    auto* knn = app.add_subcommand("knn-eval", "kNN accuracy for each basis and k");
    add_input(knn), add_series(knn), add_out(knn);
    knn->add_option("--basis", cfg.bases, "Restrict to these basis families (default: all four)")->check(CLI::IsMember(kinds));
    knn->add_option("--k-min", cfg.k_min, "Smallest k");
    knn->add_option("--k-max", cfg.k_max, "Largest k");
    knn->add_option("--seed", cfg.seed, "Split seed");
    knn->add_option("--split", cfg.split, "Training fraction");
    knn->add_flag("--train-as-test", cfg.train_as_test, "Classify the whole set against itself");
    knn->callback([&] { cmd_knn_eval(cfg); });

    auto* bb = app.add_subcommand("build-basis", "Write the basis expansion and squared norms as JSON");
    add_basis(bb), add_out(bb);
    bb->callback([&] { cmd_build_basis(cfg); });

    auto* match = app.add_subcommand("match", "Match each input trace against a set of model traces");
    add_input(match), add_basis(match), add_out(match);
    match->add_option("--models", cfg.models, "Model traces (same formats as the input)")->required();
    match->callback([&] { cmd_match(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "inkbasis: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "inkbasis: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "inkbasis: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
