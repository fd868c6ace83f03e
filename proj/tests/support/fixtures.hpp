#pragma once

#include <string>

#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"

namespace zne::testing {

std::string data_path(const std::string& name);

// Random circuit over the full gate set. `phase_gates` controls whether
// s/t/rz appear (segments for structural double-inverse checks exclude them).
Circuit random_circuit(int num_qubits, int num_gates, uint64_t seed, bool with_measure = false,
                       bool phase_gates = true);

// Random connected coupling graph (spanning tree plus extra edges) with
// randomized error rates.
NoiseModel random_connected_model(int num_qubits, uint64_t seed);

// Random circuit whose two-qubit gates act only on coupled pairs.
Circuit random_conformant_circuit(const NoiseModel& model, int num_gates, uint64_t seed,
                                  bool with_measure = false);

// Four-qubit device with edges (0,1)=0.0063, (0,2)=0.0114, (0,3)=0.02,
// (1,3)=0.03 and a three-qubit circuit with four cx on its first pair and
// one on its second. Mapping places logical 0,1,2 on physical 1,0,2; the
// accumulated pair rates are 0.0252 and 0.0114, and noise-aware folding at
// scale factor 4 (gamma 2) drives them to exactly 0.063 and 0.057 under the
// threshold 0.063.
struct WorkedExample {
    NoiseModel device;
    Circuit logical{1};
    Circuit mapped{1}; // on device indices 0..2 (compact form after routing)
};
WorkedExample worked_example();

// Fully-coupled device with every error rate at zero.
NoiseModel zero_noise_model(int num_qubits);

// Hub-and-spoke device (hub = qubit 0) with one uniform cx error everywhere.
NoiseModel uniform_star_model(int num_qubits, double cx_error);

// Star device with per-spoke heterogeneous cx errors.
NoiseModel heterogeneous_star_model(int num_qubits);

} // namespace zne::testing
