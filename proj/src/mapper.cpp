#include "zne/mapper.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace zne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PathCost {
    double error = kInf;
    int hops = 0;

    bool operator<(const PathCost& other) const {
        if (error != other.error) return error < other.error;
        return hops < other.hops;
    }
    bool operator==(const PathCost& other) const {
        return error == other.error && hops == other.hops;
    }
};

// All-pairs minimum-error paths over the coupling graph, tracking hop counts
// of the chosen paths. Deterministic (Floyd-Warshall, strict improvement).
std::vector<std::vector<PathCost>> all_pairs_paths(const NoiseModel& model) {
    const int n = model.num_qubits();
    std::vector<std::vector<PathCost>> dist(n, std::vector<PathCost>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dist[i][j] = {i == j ? 0.0 : kInf, 0};
    }
    for (const auto& [a, b] : model.edges()) {
        const PathCost direct{model.error(a, b), 1};
        if (direct < dist[a][b]) dist[a][b] = dist[b][a] = direct;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (dist[i][k].error == kInf) continue;
            for (int j = 0; j < n; ++j) {
                if (dist[k][j].error == kInf) continue;
                const PathCost via{dist[i][k].error + dist[k][j].error,
                                   dist[i][k].hops + dist[k][j].hops};
                if (via < dist[i][j]) dist[i][j] = via;
            }
        }
    }
    return dist;
}

std::vector<std::vector<int>> adjacency(const NoiseModel& model) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(model.num_qubits()));
    for (const auto& [a, b] : model.edges()) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

// Minimum-error path between two device qubits; ties prefer fewer hops, then
// lower node indices. Throws when the qubits are disconnected.
std::vector<int> min_error_path(const NoiseModel& model, const std::vector<std::vector<int>>& adj,
                                int from, int to) {
    const int n = model.num_qubits();
    std::vector<PathCost> dist(static_cast<size_t>(n), PathCost{kInf, 0});
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<bool> done(static_cast<size_t>(n), false);
    dist[static_cast<size_t>(from)] = {0.0, 0};
    for (int iter = 0; iter < n; ++iter) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
            if (done[static_cast<size_t>(v)] || dist[static_cast<size_t>(v)].error == kInf) continue;
            if (u == -1 || dist[static_cast<size_t>(v)] < dist[static_cast<size_t>(u)]) u = v;
        }
        if (u == -1) break;
        done[static_cast<size_t>(u)] = true;
        if (u == to) break;
        for (int v : adj[static_cast<size_t>(u)]) {
            const PathCost cand{dist[static_cast<size_t>(u)].error + model.error(u, v),
                                dist[static_cast<size_t>(u)].hops + 1};
            if (cand < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = cand;
                parent[static_cast<size_t>(v)] = u;
            }
        }
    }
    if (dist[static_cast<size_t>(to)].error == kInf) {
        throw std::runtime_error("coupling graph has no path between physical qubits " +
                                 std::to_string(from) + " and " + std::to_string(to));
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[static_cast<size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

Layout noise_adaptive_layout(const Circuit& circuit, const NoiseModel& model) {
    const int nl = circuit.num_qubits();
    const int np = model.num_qubits();
    if (nl > np) {
        throw std::invalid_argument("circuit has " + std::to_string(nl) +
                                    " qubits but the device only has " + std::to_string(np));
    }

    std::vector<std::vector<int>> weight(static_cast<size_t>(nl), std::vector<int>(static_cast<size_t>(nl), 0));
    for (const Gate& g : circuit.gates()) {
        if (!g.is_two_qubit()) continue;
        weight[static_cast<size_t>(g.qubits[0])][static_cast<size_t>(g.qubits[1])]++;
        weight[static_cast<size_t>(g.qubits[1])][static_cast<size_t>(g.qubits[0])]++;
    }
    std::vector<int> total(static_cast<size_t>(nl), 0);
    for (int a = 0; a < nl; ++a) {
        total[static_cast<size_t>(a)] =
            std::accumulate(weight[static_cast<size_t>(a)].begin(), weight[static_cast<size_t>(a)].end(), 0);
    }

    Layout layout;
    layout.phys_of_logical.assign(static_cast<size_t>(nl), -1);
    layout.logical_of_phys.assign(static_cast<size_t>(np), -1);
    const auto place = [&](int logical, int phys) {
        layout.phys_of_logical[static_cast<size_t>(logical)] = phys;
        layout.logical_of_phys[static_cast<size_t>(phys)] = logical;
    };
    const auto is_free = [&](int phys) { return layout.logical_of_phys[static_cast<size_t>(phys)] == -1; };

    const auto edges = model.edges();
    const auto dist = all_pairs_paths(model);
    const auto adj = adjacency(model);

    // cheapest onward edge from a physical endpoint, skipping `exclude`
    const auto continuation = [&](int phys, int exclude) {
        double best = kInf;
        for (int v : adj[static_cast<size_t>(phys)]) {
            if (v == exclude || !is_free(v)) continue;
            best = std::min(best, model.error(phys, v));
        }
        return best;
    };

    // seeds a component: the heaviest unplaced pair goes on the cheapest free edge
    const auto seed_component = [&]() -> bool {
        int best_a = -1, best_b = -1, best_w = 0;
        for (int a = 0; a < nl; ++a) {
            if (layout.phys_of_logical[static_cast<size_t>(a)] != -1) continue;
            for (int b = a + 1; b < nl; ++b) {
                if (layout.phys_of_logical[static_cast<size_t>(b)] != -1) continue;
                if (weight[static_cast<size_t>(a)][static_cast<size_t>(b)] > best_w) {
                    best_w = weight[static_cast<size_t>(a)][static_cast<size_t>(b)];
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_w == 0) return false;
        int edge_p = -1, edge_q = -1;
        double edge_err = kInf;
        for (const auto& [p, q] : edges) {
            if (!is_free(p) || !is_free(q)) continue;
            const double e = model.error(p, q);
            if (e < edge_err) {
                edge_err = e;
                edge_p = p;
                edge_q = q;
            }
        }
        if (edge_p == -1) {
            throw std::runtime_error("device has no free coupled edge left for placement");
        }
        const int rem_a = total[static_cast<size_t>(best_a)] - weight[static_cast<size_t>(best_a)][static_cast<size_t>(best_b)];
        const int rem_b = total[static_cast<size_t>(best_b)] - weight[static_cast<size_t>(best_a)][static_cast<size_t>(best_b)];
        const int first_logical = rem_b > rem_a ? best_b : best_a;
        const int second_logical = first_logical == best_a ? best_b : best_a;
        const int first_phys = continuation(edge_q, edge_p) < continuation(edge_p, edge_q) ? edge_q : edge_p;
        const int second_phys = first_phys == edge_p ? edge_q : edge_p;
        place(first_logical, first_phys);
        place(second_logical, second_phys);
        return true;
    };

    if (seed_component()) {
        for (;;) {
            // next logical qubit: most interactions with already placed ones
            int pick = -1, pick_w = 0;
            for (int u = 0; u < nl; ++u) {
                if (layout.phys_of_logical[static_cast<size_t>(u)] != -1) continue;
                int w = 0;
                for (int v = 0; v < nl; ++v) {
                    if (layout.phys_of_logical[static_cast<size_t>(v)] != -1) {
                        w += weight[static_cast<size_t>(u)][static_cast<size_t>(v)];
                    }
                }
                if (w > pick_w || (w == pick_w && w > 0 && pick != -1 &&
                                   total[static_cast<size_t>(u)] > total[static_cast<size_t>(pick)])) {
                    pick = u;
                    pick_w = w;
                }
            }
            if (pick == -1) {
                if (seed_component()) continue; // disconnected interaction component
                break;
            }
            // candidate physical qubits: free neighbors of the occupied set
            std::set<int> candidates;
            for (int p = 0; p < np; ++p) {
                if (is_free(p)) continue;
                for (int v : adj[static_cast<size_t>(p)]) {
                    if (is_free(v)) candidates.insert(v);
                }
            }
            if (candidates.empty()) {
                for (int p = 0; p < np; ++p) {
                    if (is_free(p)) candidates.insert(p);
                }
            }
            if (candidates.empty()) {
                throw std::runtime_error("no free physical qubit left for placement");
            }
            int best_phys = -1;
            double best_cost = kInf;
            for (int c : candidates) {
                double cost = 0.0;
                for (int v = 0; v < nl; ++v) {
                    if (weight[static_cast<size_t>(pick)][static_cast<size_t>(v)] == 0) continue;
                    const int pv = layout.phys_of_logical[static_cast<size_t>(v)];
                    if (pv == -1) continue;
                    const PathCost& pc = dist[static_cast<size_t>(c)][static_cast<size_t>(pv)];
                    cost += pc.error * pc.hops;
                }
                if (cost < best_cost) {
                    best_cost = cost;
                    best_phys = c;
                }
            }
            if (best_phys == -1) best_phys = *candidates.begin(); // all unreachable
            place(pick, best_phys);
        }
    }

    // logical qubits without two-qubit interactions: lowest one-qubit error first
    for (int u = 0; u < nl; ++u) {
        if (layout.phys_of_logical[static_cast<size_t>(u)] != -1) continue;
        int best = -1;
        for (int p = 0; p < np; ++p) {
            if (!is_free(p)) continue;
            if (best == -1 || model.one_qubit_error(p) < model.one_qubit_error(best)) best = p;
        }
        if (best == -1) throw std::runtime_error("no free physical qubit left for placement");
        place(u, best);
    }
    return layout;
}

namespace {

RoutedCircuit compact_result(const Circuit& device_circuit, const std::vector<int>& used,
                             const std::vector<int>& initial_device,
                             const std::vector<int>& final_device, const NoiseModel& model,
                             int swap_count) {
    std::map<int, int> to_compact;
    for (size_t k = 0; k < used.size(); ++k) to_compact[used[k]] = static_cast<int>(k);

    RoutedCircuit out;
    out.device_qubit = used;
    out.model = model.restricted(used);
    out.swap_count = swap_count;
    out.circuit = Circuit(static_cast<int>(used.size()));
    for (const Gate& g : device_circuit.gates()) {
        Gate mapped = g;
        for (int i = 0; i < gate_arity(g.kind); ++i) {
            mapped.qubits[static_cast<size_t>(i)] = to_compact.at(g.qubits[static_cast<size_t>(i)]);
        }
        out.circuit.append(mapped);
    }
    out.initial_position.reserve(initial_device.size());
    out.final_position.reserve(final_device.size());
    for (int p : initial_device) out.initial_position.push_back(to_compact.at(p));
    for (int p : final_device) out.final_position.push_back(to_compact.at(p));
    return out;
}

} // namespace

RoutedCircuit route(const Circuit& circuit, const Layout& layout, const NoiseModel& model) {
    const int nl = circuit.num_qubits();
    if (static_cast<int>(layout.phys_of_logical.size()) != nl) {
        throw std::invalid_argument("layout size does not match circuit");
    }
    const auto adj = adjacency(model);

    std::vector<int> pos = layout.phys_of_logical;
    std::vector<int> occ(static_cast<size_t>(model.num_qubits()), -1);
    for (size_t l = 0; l < pos.size(); ++l) {
        if (pos[l] < 0 || pos[l] >= model.num_qubits()) {
            throw std::invalid_argument("layout maps a qubit outside the device");
        }
        if (occ[static_cast<size_t>(pos[l])] != -1) {
            throw std::invalid_argument("layout is not injective");
        }
        occ[static_cast<size_t>(pos[l])] = static_cast<int>(l);
    }
    Circuit device(model.num_qubits());
    int swap_count = 0;

    for (const Gate& g : circuit.gates()) {
        if (g.is_measurement()) {
            device.measure_all();
            continue;
        }
        if (!g.is_two_qubit()) {
            Gate mapped = g;
            mapped.qubits[0] = pos[static_cast<size_t>(g.qubits[0])];
            device.append(mapped);
            continue;
        }
        const int a = g.qubits[0];
        const int b = g.qubits[1];
        if (!model.coupled(pos[static_cast<size_t>(a)], pos[static_cast<size_t>(b)])) {
            const auto path = min_error_path(model, adj, pos[static_cast<size_t>(a)],
                                             pos[static_cast<size_t>(b)]);
            // walk a's qubit down the path until adjacent to b's
            for (size_t i = 0; i + 2 < path.size(); ++i) {
                const int u = path[i];
                const int v = path[i + 1];
                device.swap(u, v);
                ++swap_count;
                const int lu = occ[static_cast<size_t>(u)];
                const int lv = occ[static_cast<size_t>(v)];
                occ[static_cast<size_t>(u)] = lv;
                occ[static_cast<size_t>(v)] = lu;
                if (lu != -1) pos[static_cast<size_t>(lu)] = v;
                if (lv != -1) pos[static_cast<size_t>(lv)] = u;
            }
        }
        Gate mapped = g;
        mapped.qubits[0] = pos[static_cast<size_t>(a)];
        mapped.qubits[1] = pos[static_cast<size_t>(b)];
        device.append(mapped);
    }

    std::set<int> used_set(layout.phys_of_logical.begin(), layout.phys_of_logical.end());
    for (const Gate& g : device.gates()) {
        for (int i = 0; i < gate_arity(g.kind); ++i) used_set.insert(g.qubits[static_cast<size_t>(i)]);
    }
    const std::vector<int> used(used_set.begin(), used_set.end());
    return compact_result(device, used, layout.phys_of_logical, pos, model, swap_count);
}

RoutedCircuit route_premapped(const Circuit& circuit, const NoiseModel& model) {
    if (circuit.num_qubits() > model.num_qubits()) {
        throw std::invalid_argument("pre-mapped circuit is wider than the device");
    }
    std::vector<int> identity(static_cast<size_t>(circuit.num_qubits()));
    std::iota(identity.begin(), identity.end(), 0);

    RoutedCircuit out;
    out.circuit = circuit;
    out.device_qubit = identity;
    out.initial_position = identity;
    out.final_position = identity;
    out.model = model.restricted(identity);
    return out;
}

} // namespace zne
