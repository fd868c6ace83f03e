#pragma once

#include <cstdint>
#include <vector>

#include "zne/accumulation.hpp"
#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"

namespace zne {

// Decomposition of a scale factor into whole and partial folds over a
// circuit of depth d: k = round(d * (lambda - 1) / 2), n = k / d whole folds
// of the full circuit (or of each gate), s = k % d gates in the partial
// fold. The folded gate count is d * (2n + 1) + 2s.
struct FoldPlan {
    double lambda = 1.0;
    long k = 0;
    long whole_folds = 0;      // n
    long partial_size = 0;     // s
    std::vector<int> subset;   // gate indices receiving the extra fold (local methods)
};

FoldPlan fold_plan(int depth, double lambda);

// Whole-circuit folding: U -> U (U^dag U)^n followed by a partial fold of
// the last s gates. Inserted gates carry the fold_inserted tag; the
// measurement stays last.
Circuit fold_global(const Circuit& circuit, double lambda);

// Per-gate folding, the extra partial fold applied to the first s gates.
Circuit fold_from_left(const Circuit& circuit, double lambda);

// Per-gate folding with a uniformly random s-subset drawn from the seed.
Circuit fold_random(const Circuit& circuit, double lambda, uint64_t seed);

// Threshold for noise-aware folding:
//   epsilon_lambda = epsilon_circuit * lambda
//   epsilon_max    = (epsilon_circuit + epsilon_lambda) / gamma
// With gamma = 2 and lambda = 1 the threshold equals epsilon_circuit.
struct ScaledThreshold {
    double epsilon_circuit = 0.0;
    double epsilon_lambda = 0.0;
    double gamma = 2.0;
    double epsilon_max = 0.0;
};

ScaledThreshold scaled_threshold(double epsilon_circuit, double lambda, double gamma);

struct PairFolds {
    int i = 0;
    int j = 0;
    double gate_error = 0.0; // per-cx pair error
    double base_rate = 0.0;  // accumulated at lambda = 1
    double final_rate = 0.0; // after folding
    int folds = 0;           // cx pairs inserted
};

struct NoiseAwareFold {
    Circuit circuit{1};
    ScaledThreshold threshold;
    std::vector<PairFolds> pairs; // active pairs, ascending (i, j)
    int inserted_gates = 0;
};

// Calibration-driven folding: for every pair with accumulated error, cx
// pairs (each adding twice the pair error) are inserted while the running
// total plus the next increment stays within epsilon_max -- the threshold is
// never exceeded. When epsilon_max does not exceed the lambda = 1 ceiling
// (lambda = 1 at gamma = 2) no gates are added and the circuit is returned
// unchanged. Fold pairs land right after the last original two-qubit gate
// on their pair, or at the end of the circuit with `append_folds`.
NoiseAwareFold fold_noise_aware(const Circuit& mapped_circuit, double lambda, double gamma,
                                const NoiseModel& model, bool append_folds = false);

} // namespace zne
