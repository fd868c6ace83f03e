#include "zne/folding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "zne/rng.hpp"

namespace zne {

namespace {

// Relative slack for threshold comparisons; decimal calibration data makes
// exact boundary hits common and they must count as "reached, not exceeded".
constexpr double kThresholdSlack = 1e-9;

void check_lambda(double lambda) {
    if (!(lambda >= 1.0)) {
        throw std::invalid_argument("scale factor must be >= 1, got " + std::to_string(lambda));
    }
}

std::vector<Gate> unitary_body(const Circuit& circuit) {
    std::vector<Gate> body;
    body.reserve(circuit.gates().size());
    for (const Gate& g : circuit.gates()) {
        if (!g.is_measurement()) body.push_back(g);
    }
    return body;
}

Gate tagged(Gate g) {
    g.fold_inserted = true;
    return g;
}

Circuit rebuild(const Circuit& original, const std::vector<Gate>& gates) {
    Circuit out(original.num_qubits());
    for (const Gate& g : gates) out.append(g);
    if (original.has_measurement()) out.measure_all();
    return out;
}

Circuit fold_local(const Circuit& circuit, const FoldPlan& plan) {
    const auto body = unitary_body(circuit);
    std::vector<bool> extra(body.size(), false);
    for (int idx : plan.subset) extra[static_cast<size_t>(idx)] = true;

    std::vector<Gate> out;
    out.reserve(body.size() * static_cast<size_t>(2 * plan.whole_folds + 1) + 2 * plan.subset.size());
    for (size_t j = 0; j < body.size(); ++j) {
        out.push_back(body[j]);
        const long folds = plan.whole_folds + (extra[j] ? 1 : 0);
        for (long f = 0; f < folds; ++f) {
            out.push_back(tagged(inverse_gate(body[j])));
            out.push_back(tagged(body[j]));
        }
    }
    return rebuild(circuit, out);
}

} // namespace

FoldPlan fold_plan(int depth, double lambda) {
    check_lambda(lambda);
    FoldPlan plan;
    plan.lambda = lambda;
    if (depth <= 0) return plan;
    plan.k = std::llround(static_cast<double>(depth) * (lambda - 1.0) / 2.0);
    plan.whole_folds = plan.k / depth;
    plan.partial_size = plan.k % depth;
    return plan;
}

Circuit fold_global(const Circuit& circuit, double lambda) {
    const FoldPlan plan = fold_plan(circuit.depth(), lambda);
    const auto body = unitary_body(circuit);
    if (body.empty() || plan.k == 0) return circuit;

    std::vector<Gate> out = body;
    for (long f = 0; f < plan.whole_folds; ++f) {
        for (const Gate& g : inverse(body)) out.push_back(tagged(g));
        for (const Gate& g : body) out.push_back(tagged(g));
    }
    if (plan.partial_size > 0) {
        const std::span<const Gate> tail{body.data() + (body.size() - static_cast<size_t>(plan.partial_size)),
                                         static_cast<size_t>(plan.partial_size)};
        for (const Gate& g : inverse(tail)) out.push_back(tagged(g));
        for (const Gate& g : tail) out.push_back(tagged(g));
    }
    return rebuild(circuit, out);
}

Circuit fold_from_left(const Circuit& circuit, double lambda) {
    FoldPlan plan = fold_plan(circuit.depth(), lambda);
    if (plan.k == 0) return circuit;
    plan.subset.resize(static_cast<size_t>(plan.partial_size));
    std::iota(plan.subset.begin(), plan.subset.end(), 0);
    return fold_local(circuit, plan);
}

Circuit fold_random(const Circuit& circuit, double lambda, uint64_t seed) {
    FoldPlan plan = fold_plan(circuit.depth(), lambda);
    if (plan.k == 0) return circuit;
    const int d = circuit.depth();
    std::vector<int> indices(static_cast<size_t>(d));
    std::iota(indices.begin(), indices.end(), 0);
    Rng rng(seed);
    for (long i = 0; i < plan.partial_size; ++i) {
        const auto j = i + static_cast<long>(rng.next_below(static_cast<uint64_t>(d - i)));
        std::swap(indices[static_cast<size_t>(i)], indices[static_cast<size_t>(j)]);
    }
    plan.subset.assign(indices.begin(), indices.begin() + plan.partial_size);
    std::sort(plan.subset.begin(), plan.subset.end());
    return fold_local(circuit, plan);
}

ScaledThreshold scaled_threshold(double epsilon_circuit, double lambda, double gamma) {
    check_lambda(lambda);
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be positive, got " + std::to_string(gamma));
    }
    ScaledThreshold thr;
    thr.epsilon_circuit = epsilon_circuit;
    thr.epsilon_lambda = epsilon_circuit * lambda;
    thr.gamma = gamma;
    thr.epsilon_max = (thr.epsilon_circuit + thr.epsilon_lambda) / gamma;
    return thr;
}

NoiseAwareFold fold_noise_aware(const Circuit& mapped_circuit, double lambda, double gamma,
                                const NoiseModel& model, bool append_folds) {
    const ErrorRateMatrix matrix = accumulate(mapped_circuit, model);
    const double epsilon_circuit = max_rate(matrix);
    NoiseAwareFold result;
    result.threshold = scaled_threshold(epsilon_circuit, lambda, gamma);
    const double budget = result.threshold.epsilon_max * (1.0 + kThresholdSlack);

    const int n = mapped_circuit.num_qubits();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double base = matrix.cell(i, j);
            if (base <= 0.0) continue;
            PairFolds pair;
            pair.i = i;
            pair.j = j;
            pair.gate_error = model.error(i, j);
            pair.base_rate = base;
            pair.final_rate = base;
            // At or below the lambda = 1 ceiling the scaling is a no-op: the
            // original circuit already is the scale-factor-1 member.
            if (result.threshold.epsilon_max > epsilon_circuit * (1.0 + kThresholdSlack) &&
                pair.gate_error > 0.0) {
                while (pair.final_rate + 2.0 * pair.gate_error <= budget) {
                    pair.final_rate += 2.0 * pair.gate_error;
                    ++pair.folds;
                }
            }
            result.pairs.push_back(pair);
        }
    }

    // anchor: index of the last original two-qubit gate on each pair
    const auto& gates = mapped_circuit.gates();
    std::map<std::pair<int, int>, size_t> anchor;
    std::map<std::pair<int, int>, Gate> anchor_gate;
    for (size_t idx = 0; idx < gates.size(); ++idx) {
        const Gate& g = gates[idx];
        if (!g.is_two_qubit()) continue;
        const std::pair<int, int> key{std::min(g.qubits[0], g.qubits[1]),
                                      std::max(g.qubits[0], g.qubits[1])};
        anchor[key] = idx;
        anchor_gate[key] = g;
    }

    // fold gates to insert after each anchor index
    std::map<size_t, std::vector<Gate>> insertions;
    std::vector<Gate> appended;
    for (const PairFolds& pair : result.pairs) {
        if (pair.folds == 0) continue;
        const std::pair<int, int> key{pair.i, pair.j};
        const Gate& at = anchor_gate.at(key);
        const Gate fold_cx = at.kind == GateKind::CX ? Gate::cx(at.qubits[0], at.qubits[1])
                                                     : Gate::cx(pair.i, pair.j);
        auto& slot = append_folds ? appended : insertions[anchor.at(key)];
        for (int f = 0; f < 2 * pair.folds; ++f) {
            slot.push_back(tagged(fold_cx));
            ++result.inserted_gates;
        }
    }

    Circuit out(n);
    for (size_t idx = 0; idx < gates.size(); ++idx) {
        if (gates[idx].is_measurement()) break;
        out.append(gates[idx]);
        if (auto it = insertions.find(idx); it != insertions.end()) {
            for (const Gate& g : it->second) out.append(g);
        }
    }
    for (const Gate& g : appended) out.append(g);
    if (mapped_circuit.has_measurement()) out.measure_all();
    result.circuit = std::move(out);
    return result;
}

} // namespace zne
