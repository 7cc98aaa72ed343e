#pragma once

/**
 * @file report_io.hpp
 * @brief Plot-ready outputs of a run or sweep.
 *
 *  labels.csv       point_id,cluster_id[,true_class]
 *  iters.csv        t,edges_rewired,n_distinct_pointers   (t = 1..iterations)
 *  final_state.csv  point_id,payoff,indegree,pointer
 *  edges.csv        t,src,dst                              (optional dump)
 *  metrics.json     see metrics_json()
 *  sweep.csv        parameter,value,algorithm,k,eta,accuracy,n_clusters,
 *                   iterations,converged,total_edges_rewired
 *
 * Reals are written with 9 significant digits so identical runs produce
 * identical bytes.
 */

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "egnet/dataset.hpp"
#include "egnet/engine.hpp"
#include "egnet/eval.hpp"

namespace egnet {

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// v rounded to 9 significant digits, so JSON dumps match the CSV text.
inline double round_real(double v) { return std::stod(format_real(v)); }

struct RunSummary {
    std::string dataset;
    std::size_t n_points = 0;
    std::string algorithm;
    std::size_t k = 0;
    std::optional<double> eta;
    double sigma = 1.0;
    bool standardized = false;
    std::size_t imputed_cells = 0;
    std::optional<double> accuracy;
    std::optional<std::size_t> n_classes;
    std::optional<bool> one_to_one;
};

inline void write_labels_csv(std::ostream& out, const RunReport& rep, const Dataset& data) {
    out << "point_id,cluster_id" << (data.has_labels() ? ",true_class" : "") << '\n';
    for (std::size_t i = 0; i < rep.labels.size(); ++i) {
        out << i << ',' << rep.labels[i];
        if (data.has_labels()) out << ',' << data.class_names[static_cast<std::size_t>((*data.labels)[i])];
        out << '\n';
    }
}

inline void write_iters_csv(std::ostream& out, const RunReport& rep) {
    out << "t,edges_rewired,n_distinct_pointers\n";
    for (std::size_t t = 1; t <= rep.iterations; ++t) {
        out << t << ',' << rep.rewired_per_iter[t - 1] << ',' << rep.distinct_pointers_per_iter[t] << '\n';
    }
}

inline void write_final_state_csv(std::ostream& out, const RunReport& rep) {
    out << "point_id,payoff,indegree,pointer\n";
    const auto& ptr = rep.pointer_history.back().pointers;
    for (std::size_t i = 0; i < rep.final_payoffs.size(); ++i) {
        out << i << ',' << format_real(rep.final_payoffs[i]) << ',' << rep.final_indegrees[i] << ',' << ptr[i] << '\n';
    }
}

inline void write_edges_header(std::ostream& out) { out << "t,src,dst\n"; }

inline void write_edges(std::ostream& out, const EvolvingNetwork& net) {
    for (PlayerId i = 0; i < net.size(); ++i) {
        for (PlayerId j : net.neighbors(i)) out << net.iteration() << ',' << i << ',' << j << '\n';
    }
}

inline nlohmann::ordered_json metrics_json(const RunSummary& s, const RunReport& rep) {
    nlohmann::ordered_json j;
    j["dataset"] = s.dataset;
    j["n_points"] = s.n_points;
    j["algorithm"] = s.algorithm;
    j["k"] = s.k;
    j["eta"] = s.eta ? nlohmann::ordered_json(round_real(*s.eta)) : nlohmann::ordered_json(nullptr);
    j["sigma"] = round_real(s.sigma);
    j["standardized"] = s.standardized;
    j["imputed_cells"] = s.imputed_cells;
    j["n_clusters"] = rep.n_clusters;
    j["n_distinct_pointers"] = rep.distinct_pointers_per_iter.back();
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["period"] = rep.period;
    j["total_edges_rewired"] = rep.total_rewired();
    if (s.accuracy) {
        j["accuracy"] = round_real(*s.accuracy);
        j["n_classes"] = *s.n_classes;
        j["label_mapping"] = *s.one_to_one ? "one-to-one" : "majority";
    } else {
        j["accuracy"] = nullptr;
    }
    return j;
}

struct SweepRow {
    std::string parameter;  // "k" or "eta"
    double value = 0.0;
    std::string algorithm;
    std::size_t k = 0;
    std::optional<double> eta;
    std::optional<double> accuracy;
    int n_clusters = 0;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t total_edges_rewired = 0;
};

inline void write_sweep_header(std::ostream& out) {
    out << "parameter,value,algorithm,k,eta,accuracy,n_clusters,iterations,converged,total_edges_rewired\n";
}

inline void write_sweep_row(std::ostream& out, const SweepRow& r) {
    out << r.parameter << ',' << format_real(r.value) << ',' << r.algorithm << ',' << r.k << ','
        << (r.eta ? format_real(*r.eta) : "") << ',' << (r.accuracy ? format_real(*r.accuracy) : "") << ','
        << r.n_clusters << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ',' << r.total_edges_rewired << '\n';
}

}  // namespace egnet
