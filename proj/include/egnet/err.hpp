#pragma once

/**
 * @file err.hpp
 * @brief Edge-removing-and-rewiring (ERR) policies.
 *
 * A player picks an "explorer" subset of its neighbors, looks at the
 * neighbor sets of those explorers, and keeps the k highest-payoff players
 * among its current neighbors and everything it saw. The policies differ
 * only in how the explorer subset is chosen:
 *
 *  - EG1: the top floor(eta * k) neighbors by payoff, eta fixed.
 *  - EG2: the neighbors whose payoff reaches the neighborhood mean.
 *  - EG3: the top floor(gamma(i) * k) neighbors, where gamma(i) grows as
 *    the player's own payoff shrinks relative to the global range.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egnet/dynamics.hpp"
#include "egnet/error.hpp"
#include "egnet/network.hpp"

namespace egnet {

enum class ErrKind { eg1, eg2, eg3 };

inline std::string_view to_string(ErrKind kind) {
    switch (kind) {
        case ErrKind::eg1: return "eg1";
        case ErrKind::eg2: return "eg2";
        case ErrKind::eg3: return "eg3";
    }
    return "?";
}

inline std::optional<ErrKind> parse_err_kind(std::string_view s) {
    if (s == "eg1" || s == "EG1") return ErrKind::eg1;
    if (s == "eg2" || s == "EG2") return ErrKind::eg2;
    if (s == "eg3" || s == "EG3") return ErrKind::eg3;
    return std::nullopt;
}

class ErrPolicy {
public:
    static ErrPolicy eg1(double eta) {
        if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("eta must lie in [0, 1]");
        return ErrPolicy(ErrKind::eg1, eta);
    }
    static ErrPolicy eg2() { return ErrPolicy(ErrKind::eg2, std::nullopt); }
    static ErrPolicy eg3() { return ErrPolicy(ErrKind::eg3, std::nullopt); }

    [[nodiscard]] ErrKind kind() const { return kind_; }
    [[nodiscard]] std::optional<double> eta() const { return eta_; }

private:
    ErrPolicy(ErrKind kind, std::optional<double> eta) : kind_(kind), eta_(eta) {}
    ErrKind kind_;
    std::optional<double> eta_;
};

namespace detail {

/// floor(ratio * k), guarded against products like 0.29 * 100 landing a hair below an integer.
inline std::size_t explorer_count(double ratio, std::size_t k) {
    const double raw = ratio * static_cast<double>(k);
    const auto n = static_cast<std::size_t>(std::floor(raw + 1e-9));
    return std::min(n, k);
}

/// `count` members of gamma with the largest payoffs, ties to the smaller index.
inline std::vector<PlayerId> top_by_payoff(const NeighborSet& gamma, const PayoffVector& u, std::size_t count) {
    std::vector<PlayerId> order(gamma.begin(), gamma.end());
    const auto better = [&](PlayerId a, PlayerId b) { return u[a] > u[b] || (u[a] == u[b] && a < b); };
    count = std::min(count, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(), better);
    order.resize(count);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace detail

inline std::vector<PlayerId> explorer_set_eg1(PlayerId i, const EvolvingNetwork& net, const PayoffVector& u,
                                              double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("eta must lie in [0, 1]");
    const auto& gamma = net.neighbors(i);
    return detail::top_by_payoff(gamma, u, detail::explorer_count(eta, gamma.size()));
}

struct Eg2Explorers {
    std::vector<PlayerId> members;
    bool all_equal = false;  // every neighbor sits exactly on the mean: no rewiring
};

inline Eg2Explorers explorer_set_eg2(PlayerId i, const EvolvingNetwork& net, const PayoffVector& u) {
    const auto& gamma = net.neighbors(i);
    Eg2Explorers out;
    out.all_equal = std::all_of(gamma.begin(), gamma.end(), [&](PlayerId j) { return u[j] == u[gamma.front()]; });
    if (out.all_equal) return out;
    double mean = 0.0;
    for (PlayerId j : gamma) mean += u[j];
    mean /= static_cast<double>(gamma.size());
    for (PlayerId j : gamma) {
        if (u[j] >= mean) out.members.push_back(j);
    }
    return out;
}

/// (max u + min u - u(i)) / max u over all players.
inline double exploration_ratio_eg3(PlayerId i, const PayoffVector& u) {
    if (u.empty()) throw ArgumentError("exploration_ratio_eg3: empty payoff vector");
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    if (!(*hi > 0.0)) throw ArgumentError("exploration_ratio_eg3: maximal payoff must be positive");
    return (*hi + *lo - u.at(i)) / *hi;
}

/// Explorer subset for player i under `policy`; an empty result means no rewiring.
inline std::vector<PlayerId> explorer_set(PlayerId i, const EvolvingNetwork& net, const PayoffVector& u,
                                          const ErrPolicy& policy) {
    switch (policy.kind()) {
        case ErrKind::eg1: return explorer_set_eg1(i, net, u, *policy.eta());
        case ErrKind::eg2: {
            auto e = explorer_set_eg2(i, net, u);
            return e.all_equal ? std::vector<PlayerId>{} : std::move(e.members);
        }
        case ErrKind::eg3: {
            const auto& gamma = net.neighbors(i);
            return detail::top_by_payoff(gamma, u, detail::explorer_count(exploration_ratio_eg3(i, u), gamma.size()));
        }
    }
    throw ArgumentError("unknown ERR policy");
}

/// New neighbor set of player i: the k largest-payoff players among its
/// neighbors and the neighbors of its explorers. Ties prefer current
/// neighbors, then the smaller index.
inline NeighborSet apply_err(PlayerId i, const EvolvingNetwork& net, const PayoffVector& u,
                             const ErrPolicy& policy) {
    if (u.size() != net.size()) throw ArgumentError("apply_err: payoff vector size differs from N");
    const auto& gamma = net.neighbors(i);
    const auto explorers = explorer_set(i, net, u, policy);
    if (explorers.empty()) return gamma;

    std::vector<PlayerId> candidates(gamma.begin(), gamma.end());
    for (PlayerId j : explorers) {
        const auto& seen = net.neighbors(j);
        candidates.insert(candidates.end(), seen.begin(), seen.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const auto incumbent = [&](PlayerId j) { return std::binary_search(gamma.begin(), gamma.end(), j); };
    const auto better = [&](PlayerId a, PlayerId b) {
        if (u[a] != u[b]) return u[a] > u[b];
        const bool ia = incumbent(a), ib = incumbent(b);
        if (ia != ib) return ia;
        return a < b;
    };
    const auto k = static_cast<std::ptrdiff_t>(net.k());
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end(), better);
    candidates.resize(net.k());
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

}  // namespace egnet
