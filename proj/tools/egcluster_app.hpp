#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egnet/dataset.hpp"
#include "egnet/engine.hpp"
#include "egnet/err.hpp"
#include "egnet/eval.hpp"
#include "egnet/report_io.hpp"
#include "egnet/synthetic.hpp"

namespace egnet::cli {

class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string dataset;
    std::string format = "csv";
    bool no_header = false;
    std::optional<std::string> label_col;
    std::string missing_token = "?";
    bool standardize = false;
    std::uint64_t impute_seed = 0;
    std::string algorithm = "eg1";
    std::size_t k = 0;
    std::optional<double> eta;
    double sigma = 1.0;
    std::size_t max_iters = 200;
    std::size_t window = 5;
    std::size_t max_period = 4;
    std::string out = ".";
    bool dump_edges = false;
};

inline LabelColumn parse_label_column(const std::string& s) {
    if (s == "last") return std::ptrdiff_t{-1};
    std::ptrdiff_t idx = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), idx);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return idx;
    return s;
}

inline ErrPolicy make_policy(const std::string& algorithm, std::optional<double> eta) {
    const auto kind = parse_err_kind(algorithm);
    if (!kind) throw UsageError("unknown algorithm '" + algorithm + "' (expected eg1, eg2 or eg3)");
    if (*kind != ErrKind::eg1 && eta) throw UsageError("--eta applies only to --algorithm eg1");
    switch (*kind) {
        case ErrKind::eg1: {
            const double e = eta.value_or(0.5);
            if (!(e >= 0.0 && e <= 1.0)) throw UsageError("--eta must lie in [0, 1]");
            return ErrPolicy::eg1(e);
        }
        case ErrKind::eg2: return ErrPolicy::eg2();
        case ErrKind::eg3: return ErrPolicy::eg3();
    }
    throw UsageError("unknown algorithm");
}

inline void validate(const RunConfig& cfg, bool need_k) {
    make_policy(cfg.algorithm, cfg.eta);
    if (cfg.format != "csv") throw UsageError("unsupported --format '" + cfg.format + "' (only csv)");
    if (need_k && cfg.k == 0) throw UsageError("--k is required and must be positive");
    if (!(cfg.sigma > 0.0)) throw UsageError("--sigma must be positive");
    if (cfg.window < 2) throw UsageError("--window must be at least 2");
    if (cfg.max_period < 1) throw UsageError("--max-period must be at least 1");
}

struct PreparedData {
    Dataset data;
    std::size_t imputed_cells = 0;
};

inline PreparedData prepare(Dataset d, const RunConfig& cfg) {
    PreparedData p;
    p.imputed_cells = d.missing_count();
    d = impute_missing(std::move(d), cfg.impute_seed);
    if (cfg.standardize) d = standardize(std::move(d));
    p.data = std::move(d);
    return p;
}

inline PreparedData load_dataset(const RunConfig& cfg) {
    if (cfg.dataset.empty()) throw UsageError("--dataset is required");
    CsvOptions opts;
    opts.header = !cfg.no_header;
    opts.missing_token = cfg.missing_token;
    if (cfg.label_col) opts.label_column = parse_label_column(*cfg.label_col);
    return prepare(load_csv(cfg.dataset, opts), cfg);
}

inline EngineConfig engine_config(const RunConfig& cfg) {
    EngineConfig e;
    e.k = cfg.k;
    e.sigma = cfg.sigma;
    e.policy = make_policy(cfg.algorithm, cfg.eta);
    e.max_iters = cfg.max_iters;
    e.window = cfg.window;
    e.max_period = cfg.max_period;
    return e;
}

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
    return f;
}

struct RunOutcome {
    RunReport report;
    RunSummary summary;
};

inline RunOutcome evaluate(const PreparedData& prepared, const RunConfig& cfg, const StepObserver& observer = {}) {
    const auto& data = prepared.data;
    const auto ecfg = engine_config(cfg);
    RunOutcome o;
    o.report = run(data, ecfg, observer);
    auto& s = o.summary;
    s.dataset = data.name;
    s.n_points = data.rows;
    s.algorithm = std::string(to_string(ecfg.policy.kind()));
    s.k = cfg.k;
    s.eta = ecfg.policy.eta();
    s.sigma = cfg.sigma;
    s.standardized = cfg.standardize;
    s.imputed_cells = prepared.imputed_cells;
    if (data.has_labels()) {
        s.accuracy = accuracy(o.report.labels, *data.labels);
        s.n_classes = data.class_count();
        s.one_to_one = one_to_one_mapping(o.report.labels, *data.labels);
    }
    return o;
}

inline RunOutcome write_run(const PreparedData& prepared, const RunConfig& cfg) {
    const std::filesystem::path dir(cfg.out);
    std::optional<std::ofstream> edges;
    StepObserver observer;
    if (cfg.dump_edges) {
        edges = open_output(dir, "edges.csv");
        write_edges_header(*edges);
        observer = [&](const GameState& st, std::size_t) { write_edges(*edges, st.net); };
    }
    auto o = evaluate(prepared, cfg, observer);
    {
        auto f = open_output(dir, "labels.csv");
        write_labels_csv(f, o.report, prepared.data);
    }
    {
        auto f = open_output(dir, "iters.csv");
        write_iters_csv(f, o.report);
    }
    {
        auto f = open_output(dir, "final_state.csv");
        write_final_state_csv(f, o.report);
    }
    {
        auto f = open_output(dir, "metrics.json");
        f << metrics_json(o.summary, o.report).dump(2) << '\n';
    }
    return o;
}

/// "a:b:s" inclusive range, or empty when malformed or empty.
template <typename T>
std::vector<T> parse_range(const std::string& spec) {
    std::vector<T> out;
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("range '" + spec + "' must look like start:stop:step");
    const auto number = [&](const std::string& text) {
        const auto v = detail::parse_double(text);
        if (!v) throw UsageError("range '" + spec + "' has a non-numeric part '" + text + "'");
        return *v;
    };
    const double a = number(spec.substr(0, c1));
    const double b = number(spec.substr(c1 + 1, c2 - c1 - 1));
    const double s = number(spec.substr(c2 + 1));
    if (!(s > 0.0)) throw UsageError("range step must be positive");
    // Index-based stepping keeps 0.1:1.0:0.1 at exactly ten values.
    for (std::size_t q = 0;; ++q) {
        const double v = a + static_cast<double>(q) * s;
        if (v > b + 1e-9 * s) break;
        out.push_back(static_cast<T>(v));
    }
    return out;
}

struct SweepOptions {
    std::vector<std::size_t> k_values;
    std::string k_range;
    std::vector<double> eta_values;
    std::string eta_range;
    std::vector<std::string> algorithms;
};

inline void print_summary(std::ostream& out, const RunOutcome& o) {
    out << o.summary.dataset << ' ' << o.summary.algorithm << " k=" << o.summary.k << ": " << o.report.n_clusters
        << " clusters, " << o.report.iterations << " iterations, " << (o.report.converged ? "converged" : "not converged");
    if (o.summary.accuracy) out << ", accuracy " << format_real(*o.summary.accuracy);
    out << '\n';
}

inline void add_data_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--dataset", cfg.dataset, "CSV file with one point per row")->required();
    sub->add_option("--format", cfg.format, "Input format (csv)");
    sub->add_flag("--no-header", cfg.no_header, "First row is data, not column names");
    sub->add_option("--label-col", cfg.label_col, "Class column: header name, index (negative from end) or 'last'");
    sub->add_option("--missing-token", cfg.missing_token, "Cell text marking a missing value");
    sub->add_flag("--standardize", cfg.standardize, "Scale each feature to zero mean, unit sample std");
    sub->add_option("--impute-seed", cfg.impute_seed, "Seed for missing-value imputation");
}

inline void add_engine_options(CLI::App* sub, RunConfig& cfg, bool with_algorithm, bool with_eta, bool with_k) {
    if (with_algorithm) sub->add_option("--algorithm", cfg.algorithm, "eg1, eg2 or eg3");
    if (with_k) sub->add_option("--k", cfg.k, "Out-degree of every player");
    if (with_eta) sub->add_option("--eta", cfg.eta, "Exploration ratio for eg1 (default 0.5)");
    sub->add_option("--sigma", cfg.sigma, "Distance scale");
    sub->add_option("--max-iters", cfg.max_iters, "Iteration cap");
    sub->add_option("--window", cfg.window, "Snapshots that must agree for a constant strategy");
    sub->add_option("--max-period", cfg.max_period, "Longest strategy cycle accepted as stable");
    sub->add_option("--out", cfg.out, "Output directory");
}

inline int run_sweep(const RunConfig& base, const SweepOptions& sw, bool over_k, std::ostream& log) {
    std::vector<double> values;
    if (over_k) {
        auto ks = sw.k_values;
        if (!sw.k_range.empty()) {
            const auto r = parse_range<std::size_t>(sw.k_range);
            ks.insert(ks.end(), r.begin(), r.end());
        }
        for (auto k : ks) values.push_back(static_cast<double>(k));
    } else {
        values = sw.eta_values;
        if (!sw.eta_range.empty()) {
            const auto r = parse_range<double>(sw.eta_range);
            values.insert(values.end(), r.begin(), r.end());
        }
    }
    if (values.empty()) throw UsageError("sweep range is empty");

    std::vector<std::string> algorithms = sw.algorithms;
    if (!over_k) algorithms = {"eg1"};
    if (algorithms.empty()) algorithms = {"eg1", "eg2", "eg3"};
    for (const auto& a : algorithms) make_policy(a, over_k && a == "eg1" ? base.eta : std::nullopt);

    const auto data = load_dataset(base);

    auto out = open_output(base.out, "sweep.csv");
    write_sweep_header(out);
    for (double v : values) {
        for (const auto& a : algorithms) {
            RunConfig cfg = base;
            cfg.algorithm = a;
            if (over_k) {
                if (!(v >= 1.0)) throw UsageError("k values must be positive");
                cfg.k = static_cast<std::size_t>(v);
                if (a != "eg1") cfg.eta.reset();
            } else {
                cfg.eta = v;
            }
            validate(cfg, true);
            const auto o = evaluate(data, cfg);
            print_summary(log, o);
            SweepRow row;
            row.parameter = over_k ? "k" : "eta";
            row.value = v;
            row.algorithm = o.summary.algorithm;
            row.k = cfg.k;
            row.eta = o.summary.eta;
            row.accuracy = o.summary.accuracy;
            row.n_clusters = o.report.n_clusters;
            row.iterations = o.report.iterations;
            row.converged = o.report.converged;
            row.total_edges_rewired = o.report.total_rewired();
            write_sweep_row(out, row);
        }
    }
    return 0;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Clustering by evolutionary games on an evolving knn network", "egcluster"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    auto* run_cmd = app.add_subcommand("run", "Cluster one dataset and write labels, metrics and iteration series");
    add_data_options(run_cmd, run_cfg);
    add_engine_options(run_cmd, run_cfg, true, true, true);
    run_cmd->add_flag("--dump-edges", run_cfg.dump_edges, "Also write edges.csv (t,src,dst) for every iteration");

    RunConfig k_cfg;
    SweepOptions k_sw;
    auto* sweep_k = app.add_subcommand("sweep-k", "Run every algorithm over a range of k");
    add_data_options(sweep_k, k_cfg);
    add_engine_options(sweep_k, k_cfg, false, true, false);
    sweep_k->add_option("--algorithm", k_sw.algorithms, "Algorithms to sweep (default: eg1 eg2 eg3)");
    sweep_k->add_option("--k-values", k_sw.k_values, "Explicit k values")->delimiter(',');
    sweep_k->add_option("--k-range", k_sw.k_range, "Inclusive range start:stop:step");

    RunConfig eta_cfg;
    SweepOptions eta_sw;
    auto* sweep_eta = app.add_subcommand("sweep-eta", "Run eg1 over a range of exploration ratios");
    add_data_options(sweep_eta, eta_cfg);
    add_engine_options(sweep_eta, eta_cfg, false, false, true);
    sweep_eta->add_option("--eta-values", eta_sw.eta_values, "Explicit eta values")->delimiter(',');
    sweep_eta->add_option("--eta-range", eta_sw.eta_range, "Inclusive range start:stop:step");

    RunConfig demo_cfg;
    BlobSpec blobs;
    auto* demo = app.add_subcommand("demo2d", "Write seeded 2-D Gaussian blobs; with --k also cluster them");
    demo->add_option("--blobs", blobs.blobs, "Number of blobs");
    demo->add_option("--points", blobs.points, "Total number of points");
    demo->add_option("--radius", blobs.radius, "Radius of the circle holding the blob centers");
    demo->add_option("--spread", blobs.spread, "Standard deviation of each blob");
    demo->add_option("--seed", blobs.seed, "Generator seed");
    add_engine_options(demo, demo_cfg, true, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*run_cmd) {
            validate(run_cfg, true);
            print_summary(out, write_run(load_dataset(run_cfg), run_cfg));
        } else if (*sweep_k) {
            if (!k_sw.algorithms.empty()) {
                for (const auto& a : k_sw.algorithms) make_policy(a, std::nullopt);
            }
            if (k_cfg.eta && !k_sw.algorithms.empty() &&
                std::find(k_sw.algorithms.begin(), k_sw.algorithms.end(), "eg1") == k_sw.algorithms.end()) {
                throw UsageError("--eta applies only to eg1");
            }
            return run_sweep(k_cfg, k_sw, true, out);
        } else if (*sweep_eta) {
            eta_cfg.algorithm = "eg1";
            return run_sweep(eta_cfg, eta_sw, false, out);
        } else if (*demo) {
            validate(demo_cfg, false);
            auto data = make_blobs(blobs);
            {
                auto f = open_output(demo_cfg.out, "demo2d.csv");
                write_csv(f, data);
            }
            out << "wrote " << (std::filesystem::path(demo_cfg.out) / "demo2d.csv").string() << '\n';
            if (demo_cfg.k > 0) print_summary(out, write_run(prepare(std::move(data), demo_cfg), demo_cfg));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace egnet::cli
