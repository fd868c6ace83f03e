#include "zne/accumulation.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace zne {

ErrorRateMatrix::ErrorRateMatrix(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("matrix needs at least one qubit");
    cells_.assign(static_cast<size_t>(n_) * (n_ + 1) / 2, 0.0);
}

size_t ErrorRateMatrix::index(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_) throw std::out_of_range("matrix cell out of range");
    // row-major upper triangle
    const size_t row_offset = static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i - 1) / 2;
    return row_offset + static_cast<size_t>(j - i);
}

double ErrorRateMatrix::cell(int i, int j) const {
    return cells_[index(i, j)];
}

void ErrorRateMatrix::add(int i, int j, double value) {
    cells_[index(i, j)] += value;
}

ErrorRateMatrix ErrorRateMatrix::scaled(double factor) const {
    ErrorRateMatrix out(n_);
    for (size_t k = 0; k < cells_.size(); ++k) out.cells_[k] = cells_[k] * factor;
    return out;
}

std::string ErrorRateMatrix::to_json() const {
    std::string out = "{\"num_qubits\": " + std::to_string(n_) + ", \"cells\": {";
    char buf[64];
    bool first = true;
    for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
            const double v = cell(i, j);
            if (v == 0.0) continue;
            if (!first) out += ", ";
            first = false;
            std::snprintf(buf, sizeof buf, "\"%d_%d\": %.12g", i, j, v);
            out += buf;
        }
    }
    out += "}}";
    return out;
}

ErrorRateMatrix accumulate(const Circuit& circuit, const NoiseModel& model) {
    if (circuit.num_qubits() > model.num_qubits()) {
        throw std::invalid_argument("circuit is wider than the noise model");
    }
    ErrorRateMatrix matrix(circuit.num_qubits());
    for (const Gate& g : circuit.gates()) {
        if (g.is_measurement()) continue;
        if (g.is_two_qubit()) {
            const double e = model.error(g.qubits[0], g.qubits[1]); // throws when uncoupled
            const double charge = g.kind == GateKind::SWAP ? 3.0 * e : e;
            matrix.add(g.qubits[0], g.qubits[1], charge);
        } else {
            matrix.add(g.qubits[0], g.qubits[0], model.one_qubit_error(g.qubits[0]));
        }
    }
    return matrix;
}

double max_rate(const ErrorRateMatrix& matrix, bool include_diagonal) {
    double best = 0.0;
    for (int i = 0; i < matrix.size(); ++i) {
        for (int j = include_diagonal ? i : i + 1; j < matrix.size(); ++j) {
            best = std::max(best, matrix.cell(i, j));
        }
    }
    return best;
}

} // namespace zne
