#pragma once

#include <string>
#include <vector>

#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"

namespace zne {

// Upper-triangular accumulation of calibration error rates over a mapped
// circuit: cell(i, j) with i < j sums the pair error of every two-qubit gate
// on {i, j} (a swap counts as three cx), cell(i, i) sums the one-qubit error
// of every gate on i. Entries are plain sums of probabilities -- a noise
// score that can exceed 1 on deep circuits, not a probability.
class ErrorRateMatrix {
public:
    explicit ErrorRateMatrix(int num_qubits);

    int size() const { return n_; }

    // Accepts either operand order; reads of never-touched cells return 0.
    double cell(int i, int j) const;
    void add(int i, int j, double value);

    ErrorRateMatrix scaled(double factor) const; // elementwise

    std::string to_json() const;

private:
    size_t index(int i, int j) const;

    int n_ = 0;
    std::vector<double> cells_;
};

// Folds the calibration error rates of a topology-conformant circuit into
// the matrix (the scale-factor-1 accumulation). Throws NoCouplingError when
// a two-qubit gate acts on an uncoupled pair.
ErrorRateMatrix accumulate(const Circuit& circuit, const NoiseModel& model);

// Largest accumulated rate; scans off-diagonal cells only unless
// `include_diagonal` is set. An all-zero matrix yields 0.
double max_rate(const ErrorRateMatrix& matrix, bool include_diagonal = false);

} // namespace zne
