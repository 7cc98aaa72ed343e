#pragma once

/**
 * @file engine.hpp
 * @brief Synchronous iteration of the game, stability detection and
 * cluster extraction.
 *
 * One step, from state (G_t, P_t, u_t):
 *   1. every player computes its new neighbor set from u_t (ERR policy),
 *      all against the same snapshot;
 *   2. the network swaps to the new sets and degrees are recounted;
 *   3. preferences are redistributed and reflected toward the neighbor
 *      with the largest u_t;
 *   4. payoffs u_{t+1} are computed on the new state.
 *
 * The run ends when the max-preference pointer of every player has been
 * constant for `window` snapshots, or cycles with a common period of at
 * most `max_period`.
 */

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "egnet/dataset.hpp"
#include "egnet/dynamics.hpp"
#include "egnet/err.hpp"
#include "egnet/error.hpp"
#include "egnet/metric.hpp"
#include "egnet/network.hpp"

namespace egnet {

struct GameState {
    EvolvingNetwork net;
    PreferenceTable prefs;
    PayoffVector payoffs;  // payoffs of (net, prefs)

    [[nodiscard]] std::size_t iteration() const { return net.iteration(); }
};

/// pointers[i] = argmax_j p(i, j), ties to the smaller index.
struct StrategySnapshot {
    std::vector<PlayerId> pointers;

    friend bool operator==(const StrategySnapshot&, const StrategySnapshot&) = default;
};

inline StrategySnapshot snapshot(const PreferenceTable& prefs) {
    StrategySnapshot s;
    s.pointers.reserve(prefs.size());
    for (const auto& row : prefs) s.pointers.push_back(row.argmax());
    return s;
}

inline std::size_t distinct_pointers(const StrategySnapshot& s) {
    return std::set<PlayerId>(s.pointers.begin(), s.pointers.end()).size();
}

inline GameState initial_state(const DistanceMatrix& dm, std::size_t k) {
    GameState st;
    st.net = build_knn_network(dm, k);
    st.prefs = init_preferences(st.net);
    st.payoffs = compute_payoffs(st.net, st.prefs, dm);
    return st;
}

struct StepResult {
    GameState state;
    std::size_t edges_rewired = 0;
};

inline StepResult step(const GameState& state, const DistanceMatrix& dm, const ErrPolicy& policy) {
    const auto& u = state.payoffs;
    std::vector<NeighborSet> next_sets(state.net.size());
    for (PlayerId i = 0; i < state.net.size(); ++i) next_sets[i] = apply_err(i, state.net, u, policy);

    StepResult out;
    out.state.net = state.net;
    out.edges_rewired = out.state.net.rewire(std::move(next_sets));
    out.state.prefs = update_preferences(state.prefs, state.net, out.state.net, u);
    out.state.payoffs = compute_payoffs(out.state.net, out.state.prefs, dm);
    return out;
}

/// Period of the stable pattern at the end of `history`: 1 when the last
/// `window` snapshots are identical, P in [2, max_period] when the last P
/// snapshots repeat the P before them without being constant, 0 otherwise.
inline std::size_t ess_period(const std::vector<StrategySnapshot>& history, std::size_t window,
                              std::size_t max_period) {
    if (window < 2) throw ArgumentError("ESS window must be at least 2");
    const std::size_t n = history.size();
    if (n >= window && std::all_of(history.end() - static_cast<std::ptrdiff_t>(window), history.end(),
                                   [&](const StrategySnapshot& s) { return s == history.back(); })) {
        return 1;
    }
    for (std::size_t p = 2; p <= max_period && 2 * p <= n; ++p) {
        bool repeats = true;
        for (std::size_t q = n - p; q < n && repeats; ++q) repeats = history[q] == history[q - p];
        if (!repeats) continue;
        bool constant = true;
        for (std::size_t q = n - p + 1; q < n && constant; ++q) constant = history[q] == history[n - p];
        if (!constant) return p;
    }
    return 0;
}

inline bool detect_ess(const std::vector<StrategySnapshot>& history, std::size_t window, std::size_t max_period) {
    return ess_period(history, window, max_period) != 0;
}

struct Clustering {
    std::vector<int> labels;  // 1-based, numbered by smallest member
    int n_clusters = 0;
};

/// Weakly connected components of the functional graph i -> pointers[i].
inline Clustering extract_clusters(const StrategySnapshot& s) {
    const std::size_t n = s.pointers.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (s.pointers[i] >= n) throw ArgumentError("pointer out of range");
        const auto a = find(i), b = find(s.pointers[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    Clustering c;
    c.labels.assign(n, 0);
    std::vector<int> root_label(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = find(i);
        if (root_label[r] == 0) root_label[r] = ++c.n_clusters;
        c.labels[i] = root_label[r];
    }
    return c;
}

struct EngineConfig {
    std::size_t k = 0;
    double sigma = 1.0;
    ErrPolicy policy = ErrPolicy::eg1(0.5);
    std::size_t max_iters = 200;
    std::size_t window = 5;
    std::size_t max_period = 4;
};

struct RunReport {
    std::vector<int> labels;
    int n_clusters = 0;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t period = 0;  // 1 constant, >1 periodic, 0 not converged
    std::vector<std::size_t> rewired_per_iter;
    std::vector<std::size_t> distinct_pointers_per_iter;  // index 0 is t = 0
    std::vector<StrategySnapshot> pointer_history;        // index 0 is t = 0
    PayoffVector final_payoffs;
    std::vector<std::size_t> final_indegrees;

    [[nodiscard]] std::size_t total_rewired() const {
        return std::accumulate(rewired_per_iter.begin(), rewired_per_iter.end(), std::size_t{0});
    }
};

/// Called with the state after each step (and once for t = 0 with 0 edges).
using StepObserver = std::function<void(const GameState&, std::size_t edges_rewired)>;

inline RunReport run(const DistanceMatrix& dm, const EngineConfig& cfg, const StepObserver& observer = {}) {
    if (cfg.window < 2) throw ArgumentError("window must be at least 2");
    auto state = initial_state(dm, cfg.k);
    if (observer) observer(state, 0);

    RunReport rep;
    rep.pointer_history.push_back(snapshot(state.prefs));
    rep.distinct_pointers_per_iter.push_back(distinct_pointers(rep.pointer_history.back()));
    while (rep.iterations < cfg.max_iters) {
        auto next = step(state, dm, cfg.policy);
        state = std::move(next.state);
        ++rep.iterations;
        rep.rewired_per_iter.push_back(next.edges_rewired);
        rep.pointer_history.push_back(snapshot(state.prefs));
        rep.distinct_pointers_per_iter.push_back(distinct_pointers(rep.pointer_history.back()));
        if (observer) observer(state, next.edges_rewired);
        rep.period = ess_period(rep.pointer_history, cfg.window, cfg.max_period);
        if (rep.period != 0) {
            rep.converged = true;
            break;
        }
    }
    auto clusters = extract_clusters(rep.pointer_history.back());
    rep.labels = std::move(clusters.labels);
    rep.n_clusters = clusters.n_clusters;
    rep.final_payoffs = state.payoffs;
    rep.final_indegrees = state.net.indegrees();
    return rep;
}

inline RunReport run(const Dataset& data, const EngineConfig& cfg, const StepObserver& observer = {}) {
    if (!data.is_complete()) throw ArgumentError("run requires a dataset without missing cells");
    if (cfg.k < 1 || cfg.k > data.rows) {
        throw ArgumentError("k=" + std::to_string(cfg.k) + " must lie in [1, " + std::to_string(data.rows) + "]");
    }
    return run(build_distance_matrix(data, cfg.sigma), cfg, observer);
}

}  // namespace egnet
