#pragma once

// Test-only reference model. Shares no code with include/egnet: ordered
// sets and maps instead of sorted vectors, degrees recounted from the
// edge list on every query, and rewiring done with the procedural
// "drop the weakest neighbor, adopt the strongest stranger" loop instead
// of a top-k selection.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace oracle {

enum class Policy { eg1, eg2, eg3 };

struct Model {
    std::vector<std::vector<double>> points;
    double sigma = 1.0;
    int k = 0;
    Policy policy = Policy::eg1;
    double eta = 0.5;

    std::vector<std::set<int>> gamma;
    std::vector<std::map<int, double>> pref;

    int n() const { return static_cast<int>(points.size()); }

    double dist(int i, int j) const {
        if (i == j) return 1.0;
        double s = 0.0;
        for (std::size_t c = 0; c < points[i].size(); ++c) s += std::pow(points[i][c] - points[j][c], 2.0);
        return std::exp(std::sqrt(s) / (2.0 * sigma * sigma));
    }

    int deg(int j) const {
        int d = 0;
        for (int i = 0; i < n(); ++i) {
            for (int h : gamma[i]) {
                if (h == j) ++d;  // in-edge
                if (i == j) ++d;  // out-edge
            }
        }
        return d;
    }

    void init() {
        gamma.assign(n(), {});
        pref.assign(n(), {});
        for (int i = 0; i < n(); ++i) {
            std::vector<std::pair<double, int>> order;
            for (int h = 0; h < n(); ++h) order.push_back({h == i ? -1.0 : dist(i, h), h});
            std::sort(order.begin(), order.end());
            for (int q = 0; q < k; ++q) gamma[i].insert(order[q].second);
            for (int h : gamma[i]) pref[i][h] = 1.0 / k;
        }
    }

    std::vector<double> payoffs() const {
        std::vector<double> u(n(), 0.0);
        for (int i = 0; i < n(); ++i) {
            for (const auto& [j, p] : pref[i]) u[i] += p * deg(j) / dist(i, j);
        }
        return u;
    }

    std::set<int> explorers(int i, const std::vector<double>& u) const {
        std::vector<std::pair<double, int>> ranked;
        for (int j : gamma[i]) ranked.push_back({-u[j], j});
        std::sort(ranked.begin(), ranked.end());
        std::set<int> out;
        int count = 0;
        if (policy == Policy::eg2) {
            double mean = 0.0;
            bool equal = true;
            for (int j : gamma[i]) {
                mean += u[j];
                equal = equal && u[j] == u[*gamma[i].begin()];
            }
            mean /= static_cast<double>(gamma[i].size());
            if (equal) return {};
            for (int j : gamma[i]) {
                if (u[j] >= mean) out.insert(j);
            }
            return out;
        }
        if (policy == Policy::eg1) {
            count = static_cast<int>(std::floor(eta * k + 1e-9));
        } else {
            const double hi = *std::max_element(u.begin(), u.end());
            const double lo = *std::min_element(u.begin(), u.end());
            count = static_cast<int>(std::floor((hi + lo - u[i]) / hi * k + 1e-9));
        }
        for (int q = 0; q < count && q < static_cast<int>(ranked.size()); ++q) out.insert(ranked[q].second);
        return out;
    }

    std::set<int> rewired(int i, const std::vector<double>& u) const {
        const auto ex = explorers(i, u);
        std::set<int> current = gamma[i];
        if (ex.empty()) return current;
        std::set<int> strangers;
        for (int j : ex) {
            for (int h : gamma[j]) {
                if (!current.count(h)) strangers.insert(h);
            }
        }
        while (!strangers.empty()) {
            // weakest member: lowest payoff; among equals, a newcomer before an original, then larger id
            int weakest = -1;
            for (int j : current) {
                if (weakest < 0) {
                    weakest = j;
                    continue;
                }
                const bool jo = gamma[i].count(j) > 0, wo = gamma[i].count(weakest) > 0;
                if (u[j] < u[weakest] || (u[j] == u[weakest] && ((!jo && wo) || (jo == wo && j > weakest)))) {
                    weakest = j;
                }
            }
            int strongest = -1;
            for (int h : strangers) {
                if (strongest < 0 || u[h] > u[strongest]) strongest = h;
            }
            if (!(u[strongest] > u[weakest])) break;
            current.erase(weakest);
            current.insert(strongest);
            strangers.erase(strongest);
            strangers.insert(weakest);
        }
        return current;
    }

    /// One synchronous iteration; returns the number of new edges.
    int step() {
        const auto u = payoffs();
        std::vector<std::set<int>> next(n());
        for (int i = 0; i < n(); ++i) next[i] = rewired(i, u);
        int edges = 0;
        std::vector<std::map<int, double>> next_pref(n());
        for (int i = 0; i < n(); ++i) {
            double released = 0.0;
            int gained = 0;
            for (const auto& [j, p] : pref[i]) {
                if (!next[i].count(j)) released += p;
            }
            for (int j : next[i]) {
                if (!gamma[i].count(j)) ++gained;
            }
            edges += gained;
            for (int j : next[i]) next_pref[i][j] = gamma[i].count(j) ? pref[i].at(j) : released / gained;

            int m = *next[i].begin();
            for (int j : next[i]) {
                if (u[j] > u[m]) m = j;
            }
            double ave = 0.0;
            std::map<int, double> root;
            for (const auto& [j, p] : next_pref[i]) {
                root[j] = (j == m ? -1.0 : 1.0) * std::sqrt(p);
                ave += root[j];
            }
            ave /= static_cast<double>(root.size());
            for (auto& [j, p] : next_pref[i]) p = std::pow(2.0 * ave - root[j], 2.0);
        }
        gamma = std::move(next);
        pref = std::move(next_pref);
        return edges;
    }
};

}  // namespace oracle
