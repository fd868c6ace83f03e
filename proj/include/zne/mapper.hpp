#pragma once

#include <vector>

#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"

namespace zne {

// Injective assignment of logical qubits to device (physical) qubits.
struct Layout {
    std::vector<int> phys_of_logical;          // one entry per logical qubit
    std::vector<int> logical_of_phys;          // device-sized inverse, -1 where free
};

// Deterministic greedy noise-adaptive layout:
//  1. weight the logical interaction graph by two-qubit gate counts;
//  2. seed the lowest-error coupled edge with the most-interacting logical
//     pair (the partner with more remaining interactions takes the endpoint
//     with the cheaper onward edge);
//  3. repeatedly place the unplaced logical qubit with the most interactions
//     to already-placed ones on the free physical qubit minimizing
//     sum over placed partners of (min-error-path error x path length).
// All ties break toward the lowest index. Logical qubits with no two-qubit
// gates go to the free qubits with the smallest one-qubit error.
Layout noise_adaptive_layout(const Circuit& circuit, const NoiseModel& model);

// A routed circuit, re-indexed to the compact set of device qubits it
// actually uses (ascending device order). `model` is the device model
// restricted to those qubits, so downstream error lookups use compact
// indices directly.
struct RoutedCircuit {
    Circuit circuit{1};
    std::vector<int> device_qubit;     // compact index -> device qubit
    std::vector<int> initial_position; // logical qubit -> compact index, before any gate
    std::vector<int> final_position;   // logical qubit -> compact index, at measurement
    NoiseModel model;
    int swap_count = 0;
};

// Inserts swaps along minimum-error paths (edge weight = pair error) so that
// every two-qubit gate acts on a coupled pair. The output is noiselessly
// equivalent to the input up to the final permutation recorded in
// `final_position`.
RoutedCircuit route(const Circuit& circuit, const Layout& layout, const NoiseModel& model);

// Bypass for circuits that are already expressed in device indices: identity
// layout, no compaction, no swap insertion.
RoutedCircuit route_premapped(const Circuit& circuit, const NoiseModel& model);

} // namespace zne
