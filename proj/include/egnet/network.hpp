#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "egnet/error.hpp"
#include "egnet/metric.hpp"

namespace egnet {

/// Out-neighbors of one player, kept sorted ascending.
using NeighborSet = std::vector<PlayerId>;

/**
 * Directed network in which every player has exactly k out-edges
 * (self-loops allowed). Edge weights are not stored; they live in the
 * DistanceMatrix. The indegree table is always a full recount of the
 * current neighbor sets.
 */
class EvolvingNetwork {
public:
    EvolvingNetwork() = default;

    /// Validates and adopts explicit neighbor sets (each of size k, distinct ids < N).
    static EvolvingNetwork from_neighbor_sets(std::size_t k, std::vector<NeighborSet> sets) {
        EvolvingNetwork net;
        net.k_ = k;
        if (k == 0) throw ArgumentError("k must be at least 1");
        for (auto& s : sets) canonicalize(s, k, sets.size());
        net.gamma_ = std::move(sets);
        net.recount();
        return net;
    }

    [[nodiscard]] std::size_t size() const { return gamma_.size(); }
    [[nodiscard]] std::size_t k() const { return k_; }
    [[nodiscard]] std::size_t iteration() const { return t_; }
    [[nodiscard]] const NeighborSet& neighbors(PlayerId i) const { return gamma_.at(i); }
    [[nodiscard]] const std::vector<NeighborSet>& neighbor_sets() const { return gamma_; }
    [[nodiscard]] const std::vector<std::size_t>& indegrees() const { return indegree_; }

    [[nodiscard]] std::size_t indegree(PlayerId j) const {
        check_id(j);
        return indegree_[j];
    }

    /// Indegree plus the constant out-degree k; a self-loop counts once in each.
    [[nodiscard]] std::size_t degree(PlayerId j) const { return indegree(j) + k_; }

    [[nodiscard]] bool contains(PlayerId i, PlayerId j) const {
        const auto& s = gamma_.at(i);
        return std::binary_search(s.begin(), s.end(), j);
    }

    /// Replaces every neighbor set at once and advances t. Returns the
    /// number of edges that were not present before.
    std::size_t rewire(std::vector<NeighborSet> next) {
        if (next.size() != gamma_.size()) {
            throw ArgumentError("rewire: expected " + std::to_string(gamma_.size()) + " neighbor sets, got " +
                                std::to_string(next.size()));
        }
        for (auto& s : next) canonicalize(s, k_, gamma_.size());
        std::size_t rewired = 0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            const auto& old = gamma_[i];
            for (PlayerId j : next[i]) {
                if (!std::binary_search(old.begin(), old.end(), j)) ++rewired;
            }
        }
        gamma_ = std::move(next);
        recount();
        ++t_;
        return rewired;
    }

private:
    static void canonicalize(NeighborSet& s, std::size_t k, std::size_t n) {
        if (s.size() != k) {
            throw ArgumentError("neighbor set has " + std::to_string(s.size()) + " entries, expected k=" +
                                std::to_string(k));
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ArgumentError("neighbor set has duplicates");
        if (!s.empty() && s.back() >= n) throw ArgumentError("neighbor id out of range");
    }

    void check_id(PlayerId j) const {
        if (j >= gamma_.size()) throw ArgumentError("player id " + std::to_string(j) + " out of range");
    }

    void recount() {
        indegree_.assign(gamma_.size(), 0);
        for (const auto& s : gamma_) {
            for (PlayerId j : s) ++indegree_[j];
        }
    }

    std::size_t k_ = 0;
    std::size_t t_ = 0;
    std::vector<NeighborSet> gamma_;
    std::vector<std::size_t> indegree_;
};

/// Each player links to its k nearest players under `dm`. A player is
/// always its own nearest (its true self-distance is zero even though the
/// matrix stores 1); remaining distance ties go to the smaller index.
inline EvolvingNetwork build_knn_network(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.size();
    if (k < 1 || k > n) {
        throw ArgumentError("k=" + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
    std::vector<NeighborSet> sets(n);
    std::vector<PlayerId> order(n);
    for (PlayerId i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), PlayerId{0});
        const auto closer = [&](PlayerId a, PlayerId b) {
            if (a == i || b == i) return a == i && b != i;
            const double da = dm(i, a), db = dm(i, b);
            return da < db || (da == db && a < b);
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);
        sets[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return EvolvingNetwork::from_neighbor_sets(k, std::move(sets));
}

}  // namespace egnet
