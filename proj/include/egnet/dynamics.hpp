#pragma once

/**
 * @file dynamics.hpp
 * @brief Payoffs and the two-phase preference update.
 *
 * Every player i holds a distribution over its current neighbor set. An
 * update first hands the mass of dropped neighbors evenly to the newly
 * gained ones, then applies an inversion about the average of the
 * square-rooted preferences with the sign of the best neighbor flipped.
 * That reflection keeps the row sum and moves mass toward that neighbor.
 */

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "egnet/error.hpp"
#include "egnet/metric.hpp"
#include "egnet/network.hpp"

namespace egnet {

/// One player's preferences; `keys` sorted ascending, `values` parallel.
struct PreferenceRow {
    std::vector<PlayerId> keys;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return keys.size(); }

    [[nodiscard]] double at(PlayerId j) const {
        const auto it = std::lower_bound(keys.begin(), keys.end(), j);
        if (it == keys.end() || *it != j) throw ArgumentError("no preference for player " + std::to_string(j));
        return values[static_cast<std::size_t>(it - keys.begin())];
    }

    [[nodiscard]] double sum() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }

    /// Key holding the largest value; ties go to the smaller key.
    [[nodiscard]] PlayerId argmax() const {
        std::size_t best = 0;
        for (std::size_t q = 1; q < values.size(); ++q) {
            if (values[q] > values[best]) best = q;
        }
        return keys.at(best);
    }

    friend bool operator==(const PreferenceRow&, const PreferenceRow&) = default;
};

using PreferenceTable = std::vector<PreferenceRow>;
using PayoffVector = std::vector<double>;

/// Uniform 1/k over each initial neighbor set.
inline PreferenceTable init_preferences(const EvolvingNetwork& net) {
    PreferenceTable prefs(net.size());
    for (PlayerId i = 0; i < net.size(); ++i) {
        const auto& gamma = net.neighbors(i);
        prefs[i].keys = gamma;
        prefs[i].values.assign(gamma.size(), 1.0 / static_cast<double>(gamma.size()));
    }
    return prefs;
}

/// u(i) = sum over j in Gamma(i) of p(i,j) * Deg(j) / d(i,j).
inline PayoffVector compute_payoffs(const EvolvingNetwork& net, const PreferenceTable& prefs,
                                    const DistanceMatrix& dm) {
    if (prefs.size() != net.size() || dm.size() != net.size()) {
        throw ArgumentError("compute_payoffs: network, preferences and distances disagree on N");
    }
    PayoffVector u(net.size(), 0.0);
    for (PlayerId i = 0; i < net.size(); ++i) {
        const auto& gamma = net.neighbors(i);
        if (prefs[i].keys != gamma) {
            throw ArgumentError("compute_payoffs: preference keys of player " + std::to_string(i) +
                                " do not match its neighbor set");
        }
        double acc = 0.0;
        for (std::size_t q = 0; q < gamma.size(); ++q) {
            const PlayerId j = gamma[q];
            acc += prefs[i].values[q] * static_cast<double>(net.degree(j)) / dm(i, j);
        }
        u[i] = acc;
    }
    return u;
}

/// Kept neighbors retain their mass; each gained neighbor receives an
/// equal share of the mass held by dropped ones.
inline PreferenceRow redistribute(const NeighborSet& old_gamma, const NeighborSet& new_gamma,
                                  const PreferenceRow& old_row) {
    if (old_gamma.size() != new_gamma.size()) throw ArgumentError("redistribute: neighbor set sizes differ");
    if (old_row.keys != old_gamma) throw ArgumentError("redistribute: preference keys do not match old neighbors");

    double released = 0.0;
    std::size_t gained = 0;
    for (std::size_t q = 0; q < old_gamma.size(); ++q) {
        if (!std::binary_search(new_gamma.begin(), new_gamma.end(), old_gamma[q])) released += old_row.values[q];
    }
    for (PlayerId j : new_gamma) {
        if (!std::binary_search(old_gamma.begin(), old_gamma.end(), j)) ++gained;
    }

    PreferenceRow row;
    row.keys = new_gamma;
    row.values.reserve(new_gamma.size());
    const double share = gained ? released / static_cast<double>(gained) : 0.0;
    for (PlayerId j : new_gamma) {
        const auto it = std::lower_bound(old_gamma.begin(), old_gamma.end(), j);
        if (it != old_gamma.end() && *it == j) {
            row.values.push_back(old_row.values[static_cast<std::size_t>(it - old_gamma.begin())]);
        } else {
            row.values.push_back(share);
        }
    }
    return row;
}

/// Neighbor with the largest payoff; ties go to the smaller index.
inline PlayerId select_target(const NeighborSet& gamma, const PayoffVector& u) {
    if (gamma.empty()) throw ArgumentError("select_target: empty neighbor set");
    PlayerId best = gamma.front();
    for (PlayerId j : gamma) {
        if (u.at(j) > u.at(best) || (u.at(j) == u.at(best) && j < best)) best = j;
    }
    return best;
}

/// Inversion about average on amplitudes sqrt(p), with the amplitude of
/// `target` negated: p'(j) = (2 * mean(r) - r_j)^2.
inline PreferenceRow grover_adjust(const PreferenceRow& row, PlayerId target) {
    const auto it = std::lower_bound(row.keys.begin(), row.keys.end(), target);
    if (it == row.keys.end() || *it != target) {
        throw ArgumentError("grover_adjust: target " + std::to_string(target) + " is not a key");
    }
    const auto target_pos = static_cast<std::size_t>(it - row.keys.begin());

    std::vector<double> amp(row.size());
    double total = 0.0;
    for (std::size_t q = 0; q < row.size(); ++q) {
        if (row.values[q] < 0.0) throw ArgumentError("grover_adjust: negative preference");
        amp[q] = std::sqrt(row.values[q]);
        if (q == target_pos) amp[q] = -amp[q];
        total += amp[q];
    }
    const double twice_mean = 2.0 * total / static_cast<double>(row.size());

    PreferenceRow out;
    out.keys = row.keys;
    out.values.resize(row.size());
    for (std::size_t q = 0; q < row.size(); ++q) {
        const double r = twice_mean - amp[q];
        out.values[q] = r * r;
    }
    return out;
}

/// Redistributes each row onto the rewired neighbor set, then reflects it
/// toward the neighbor that had the largest payoff before rewiring.
inline PreferenceTable update_preferences(const PreferenceTable& prefs, const EvolvingNetwork& before,
                                          const EvolvingNetwork& after, const PayoffVector& u_prev) {
    if (prefs.size() != before.size() || before.size() != after.size() || u_prev.size() != after.size()) {
        throw ArgumentError("update_preferences: inputs disagree on N");
    }
    PreferenceTable next(prefs.size());
    for (PlayerId i = 0; i < prefs.size(); ++i) {
        const auto& gamma = after.neighbors(i);
        const auto moved = redistribute(before.neighbors(i), gamma, prefs[i]);
        next[i] = grover_adjust(moved, select_target(gamma, u_prev));
    }
    return next;
}

}  // namespace egnet
