#include "zne/kernels.hpp"

#include <cstddef>

namespace zne::kernels {

void apply_1q(std::span<cplx> amps, int qubit, const std::array<cplx, 4>& u, bool parallel) {
    const int64_t size = static_cast<int64_t>(amps.size());
    const int64_t bit = int64_t{1} << qubit;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & bit) != 0) continue;
        const cplx a0 = amps[static_cast<size_t>(i)];
        const cplx a1 = amps[static_cast<size_t>(i | bit)];
        amps[static_cast<size_t>(i)] = u[0] * a0 + u[1] * a1;
        amps[static_cast<size_t>(i | bit)] = u[2] * a0 + u[3] * a1;
    }
}

void apply_cx(std::span<cplx> amps, int control, int target, bool parallel) {
    const int64_t size = static_cast<int64_t>(amps.size());
    const int64_t cbit = int64_t{1} << control;
    const int64_t tbit = int64_t{1} << target;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & cbit) == 0 || (i & tbit) != 0) continue;
        std::swap(amps[static_cast<size_t>(i)], amps[static_cast<size_t>(i | tbit)]);
    }
}

void apply_swap(std::span<cplx> amps, int a, int b, bool parallel) {
    const int64_t size = static_cast<int64_t>(amps.size());
    const int64_t abit = int64_t{1} << a;
    const int64_t bbit = int64_t{1} << b;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & abit) == 0 || (i & bbit) != 0) continue;
        // i has a=1, b=0; its partner swaps those bits
        std::swap(amps[static_cast<size_t>(i)], amps[static_cast<size_t>((i ^ abit) | bbit)]);
    }
}

void depolarize_1q(std::span<cplx> rho, int num_qubits, int qubit, double p, bool parallel) {
    if (p <= 0.0) return;
    const int64_t size = static_cast<int64_t>(rho.size());
    const int64_t rbit = int64_t{1} << qubit;
    const int64_t cbit = int64_t{1} << (num_qubits + qubit);
    const double keep = 1.0 - 4.0 * p / 3.0;
    const double fill = 2.0 * p / 3.0;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & rbit) != 0 || (i & cbit) != 0) continue;
        const size_t i00 = static_cast<size_t>(i);
        const size_t i01 = static_cast<size_t>(i | cbit);
        const size_t i10 = static_cast<size_t>(i | rbit);
        const size_t i11 = static_cast<size_t>(i | rbit | cbit);
        const cplx tr = rho[i00] + rho[i11];
        rho[i00] = keep * rho[i00] + fill * tr;
        rho[i11] = keep * rho[i11] + fill * tr;
        rho[i01] = keep * rho[i01];
        rho[i10] = keep * rho[i10];
    }
}

void depolarize_2q(std::span<cplx> rho, int num_qubits, int q0, int q1, double p, bool parallel) {
    if (p <= 0.0) return;
    const int64_t size = static_cast<int64_t>(rho.size());
    const int64_t r0 = int64_t{1} << q0;
    const int64_t r1 = int64_t{1} << q1;
    const int64_t c0 = int64_t{1} << (num_qubits + q0);
    const int64_t c1 = int64_t{1} << (num_qubits + q1);
    const int64_t mask = r0 | r1 | c0 | c1;
    const double keep = 1.0 - 16.0 * p / 15.0;
    const double fill = 4.0 * p / 15.0;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & mask) != 0) continue;
        // 4x4 block over (row bits, col bits) of the two qubits
        const int64_t rows[4] = {0, r0, r1, r0 | r1};
        const int64_t cols[4] = {0, c0, c1, c0 | c1};
        cplx tr = 0.0;
        for (int d = 0; d < 4; ++d) tr += rho[static_cast<size_t>(i | rows[d] | cols[d])];
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const size_t idx = static_cast<size_t>(i | rows[a] | cols[b]);
                rho[idx] = keep * rho[idx];
                if (a == b) rho[idx] += fill * tr;
            }
        }
    }
}

void readout_confuse(std::span<double> probs, int qubit, double p01, double p10, bool parallel) {
    if (p01 <= 0.0 && p10 <= 0.0) return;
    const int64_t size = static_cast<int64_t>(probs.size());
    const int64_t bit = int64_t{1} << qubit;
#pragma omp parallel for if (parallel) schedule(static)
    for (int64_t i = 0; i < size; ++i) {
        if ((i & bit) != 0) continue;
        const double p0 = probs[static_cast<size_t>(i)];
        const double p1 = probs[static_cast<size_t>(i | bit)];
        probs[static_cast<size_t>(i)] = (1.0 - p10) * p0 + p01 * p1;
        probs[static_cast<size_t>(i | bit)] = p10 * p0 + (1.0 - p01) * p1;
    }
}

double norm_sqr(std::span<const cplx> amps) {
    double total = 0.0;
    for (const cplx& a : amps) total += std::norm(a);
    return total;
}

double trace_real(std::span<const cplx> rho, int num_qubits) {
    const int64_t dim = int64_t{1} << num_qubits;
    double total = 0.0;
    for (int64_t r = 0; r < dim; ++r) {
        total += rho[static_cast<size_t>(r | (r << num_qubits))].real();
    }
    return total;
}

} // namespace zne::kernels
