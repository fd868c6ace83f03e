#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"

namespace zne {

using cplx = std::complex<double>;

// Histogram of measured bitstrings. Character i of a key is the outcome of
// qubit i ('0' or '1').
using Counts = std::map<std::string, uint64_t>;

struct ExpectationEstimate {
    double mean = 0.0;     // success fraction, in [0, 1]
    double std_err = 0.0;  // sqrt(mean * (1 - mean) / shots)
    uint64_t shots = 0;
    double lambda = 1.0;   // scale factor of the circuit that produced it
    bool degenerate = false; // zero successes observed
};

// What counts as "success" for a histogram.
struct Observable {
    enum class Kind { SuccessBitstring, ZParity };
    Kind kind = Kind::SuccessBitstring;
    std::string target;      // SuccessBitstring: expected bits, one per position
    std::vector<int> qubits; // measured positions examined, in target order

    static Observable success(std::string target_bits, std::vector<int> positions);
    // Success = even parity over the given positions.
    static Observable z_parity(std::vector<int> positions);
};

// Row-major 2x2 unitary for a one-qubit gate kind (rz(a) = diag(1, e^{ia})).
std::array<cplx, 4> unitary_1q(GateKind kind, double angle);

// Noiseless statevector of the circuit (measurement ignored). n <= 20.
std::vector<cplx> simulate_exact(const Circuit& circuit, bool parallel = true);

std::vector<double> probabilities(const std::vector<cplx>& statevector);

// Exact noisy outcome distribution via a density matrix: each gate's unitary
// is followed by a depolarizing channel whose parameter is the calibration
// error of its qubit(s) (a swap applies the pair channel three times,
// matching its three-cx cost); per-qubit readout confusion is applied at the
// end when `apply_readout` is set. Gates on uncalibrated pairs are noiseless.
// n <= 10. The trace is checked to stay within 1e-9 of 1.
std::vector<double> simulate_density_matrix(const Circuit& circuit, const NoiseModel& model,
                                            bool apply_readout = true, bool parallel = true);

// Monte Carlo Pauli-injection trajectories: per shot, after each gate, with
// probability equal to its calibration error a uniformly random non-identity
// Pauli is applied to its qubit(s) (three chances for a swap); one bitstring
// is sampled and readout flips are applied. Deterministic for a fixed seed
// regardless of worker count. n <= 20.
Counts simulate_trajectories(const Circuit& circuit, const NoiseModel& model, uint64_t shots,
                             uint64_t seed, bool apply_readout = true, bool parallel = true);

// Draws `shots` samples from an outcome distribution (deterministic in seed).
Counts sample_counts(const std::vector<double>& probs, int num_qubits, uint64_t shots,
                     uint64_t seed);

ExpectationEstimate expectation(const Counts& counts, const Observable& obs);

// Exact success probability of an observable under an outcome distribution.
double exact_probability(const std::vector<double>& probs, int num_qubits, const Observable& obs);

std::string counts_to_json(const Counts& counts);

} // namespace zne
