#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

namespace zne::kernels {

using cplx = std::complex<double>;

// Low-level state kernels. Every kernel takes a `parallel` switch: the
// OpenMP path and the serial path execute the same per-amplitude arithmetic,
// so their outputs are bitwise identical. Qubit q addresses bit q of the
// amplitude index (little-endian).

// amps[i'] = u * amps[i] on the (bit q = 0, bit q = 1) pairs;
// u is row-major {u00, u01, u10, u11}.
void apply_1q(std::span<cplx> amps, int qubit, const std::array<cplx, 4>& u, bool parallel);

void apply_cx(std::span<cplx> amps, int control, int target, bool parallel);
void apply_swap(std::span<cplx> amps, int a, int b, bool parallel);

// Depolarizing maps on a vectorized density matrix over n qubits
// (rho[r | (c << n)], 4^n entries). With probability p the state of the
// touched qubit(s) is replaced by a uniformly random non-identity Pauli
// image; in block form that is
//   B -> (1 - 4p/3)  B + (2p/3)  tr(B) I   (one qubit)
//   B -> (1 - 16p/15) B + (4p/15) tr(B) I  (two qubits)
void depolarize_1q(std::span<cplx> rho, int num_qubits, int qubit, double p, bool parallel);
void depolarize_2q(std::span<cplx> rho, int num_qubits, int q0, int q1, double p, bool parallel);

// Per-qubit readout confusion on an outcome probability vector:
// true 0 reads 1 with probability p10, true 1 reads 0 with probability p01.
void readout_confuse(std::span<double> probs, int qubit, double p01, double p10, bool parallel);

// Deterministic (serial, fixed-order) reductions.
double norm_sqr(std::span<const cplx> amps);
double trace_real(std::span<const cplx> rho, int num_qubits);

} // namespace zne::kernels
