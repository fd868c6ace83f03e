// Timing comparison of the serial reference kernels against the OpenMP
// paths, plus end-to-end engine timings. Run manually:
//   ./build/benchmarks/zne_bench [statevector_qubits]

#include <chrono>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zne/circuit.hpp"
#include "zne/kernels.hpp"
#include "zne/noise_model.hpp"
#include "zne/rng.hpp"
#include "zne/simulator.hpp"

using zne::kernels::cplx;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<cplx> random_state(int num_qubits, uint64_t seed) {
    zne::Rng rng(seed);
    std::vector<cplx> amps(size_t{1} << num_qubits);
    double norm = 0.0;
    for (auto& a : amps) {
        a = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return amps;
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void bench_statevector(int n) {
    auto amps = random_state(n, 7);
    const std::array<cplx, 4> h = zne::unitary_1q(zne::GateKind::H, 0.0);

    const auto sweep_1q = [&](bool parallel) {
        for (int q = 0; q < n; ++q) zne::kernels::apply_1q(amps, q, h, parallel);
    };
    const auto sweep_cx = [&](bool parallel) {
        for (int q = 0; q + 1 < n; ++q) zne::kernels::apply_cx(amps, q, q + 1, parallel);
    };

    const double t1s = time_best_of(3, [&] { sweep_1q(false); });
    const double t1p = time_best_of(3, [&] { sweep_1q(true); });
    const double t2s = time_best_of(3, [&] { sweep_cx(false); });
    const double t2p = time_best_of(3, [&] { sweep_cx(true); });
    std::printf("statevector n=%-2d  1q layer   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                n, t1s * 1e3, t1p * 1e3, t1s / t1p);
    std::printf("statevector n=%-2d  cx ladder  serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                n, t2s * 1e3, t2p * 1e3, t2s / t2p);
}

void bench_density(int n) {
    zne::NoiseModel model(n);
    for (int q = 0; q + 1 < n; ++q) model.set_two_qubit_error(q, q + 1, 1e-2);
    for (int q = 0; q < n; ++q) model.set_one_qubit_error(q, 1e-4);
    zne::Circuit circuit(n);
    circuit.x(0);
    for (int q = 0; q + 1 < n; ++q) circuit.cx(q, q + 1);
    circuit.measure_all();

    const double ts = time_best_of(3, [&] { zne::simulate_density_matrix(circuit, model, true, false); });
    const double tp = time_best_of(3, [&] { zne::simulate_density_matrix(circuit, model, true, true); });
    std::printf("density     n=%-2d  cx chain   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                n, ts * 1e3, tp * 1e3, ts / tp);
}

void bench_trajectories(int n, uint64_t shots) {
    zne::NoiseModel model(n);
    for (int q = 0; q + 1 < n; ++q) model.set_two_qubit_error(q, q + 1, 1e-2);
    zne::Circuit circuit = zne::cnot_chain(n);

    const double ts = time_best_of(3, [&] {
        zne::simulate_trajectories(circuit, model, shots, 11, true, false);
    });
    const double tp = time_best_of(3, [&] {
        zne::simulate_trajectories(circuit, model, shots, 11, true, true);
    });
    std::printf("traject.    n=%-2d  %5llu shots serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                n, static_cast<unsigned long long>(shots), ts * 1e3, tp * 1e3, ts / tp);
}

} // namespace

int main(int argc, char** argv) {
    const int sv_qubits = argc > 1 ? std::stoi(argv[1]) : 18;
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif
    bench_statevector(sv_qubits);
    bench_density(9);
    bench_trajectories(12, 2000);
    return 0;
}
