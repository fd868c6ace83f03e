#include "support/fixtures.hpp"

#include <algorithm>
#include <numbers>

#include "zne/rng.hpp"

namespace zne::testing {

std::string data_path(const std::string& name) {
    return std::string(ZNE_DATA_DIR) + "/" + name;
}

Circuit random_circuit(int num_qubits, int num_gates, uint64_t seed, bool with_measure,
                       bool phase_gates) {
    Rng rng(seed);
    Circuit c(num_qubits);
    for (int g = 0; g < num_gates; ++g) {
        const uint64_t kind = rng.next_below(phase_gates ? 8 : 5);
        const int a = static_cast<int>(rng.next_below(static_cast<uint64_t>(num_qubits)));
        int b = a;
        if (num_qubits > 1) {
            while (b == a) b = static_cast<int>(rng.next_below(static_cast<uint64_t>(num_qubits)));
        }
        switch (kind) {
            case 0: c.x(a); break;
            case 1: c.h(a); break;
            case 2: c.z(a); break;
            case 3: num_qubits > 1 ? (void)c.cx(a, b) : (void)c.x(a); break;
            case 4: num_qubits > 1 ? (void)c.swap(a, b) : (void)c.h(a); break;
            case 5: c.s(a); break;
            case 6: c.t(a); break;
            default: c.rz(a, (rng.next_double() * 2.0 - 1.0) * std::numbers::pi); break;
        }
    }
    if (with_measure) c.measure_all();
    return c;
}

NoiseModel random_connected_model(int num_qubits, uint64_t seed) {
    Rng rng(seed);
    NoiseModel model(num_qubits);
    const auto rand_error = [&] { return 0.002 + rng.next_double() * 0.028; };
    for (int q = 1; q < num_qubits; ++q) {
        const int parent = static_cast<int>(rng.next_below(static_cast<uint64_t>(q)));
        model.set_two_qubit_error(parent, q, rand_error());
    }
    const int extras = num_qubits / 3;
    for (int e = 0; e < extras; ++e) {
        const int a = static_cast<int>(rng.next_below(static_cast<uint64_t>(num_qubits)));
        const int b = static_cast<int>(rng.next_below(static_cast<uint64_t>(num_qubits)));
        if (a != b && !model.coupled(a, b)) model.set_two_qubit_error(a, b, rand_error());
    }
    for (int q = 0; q < num_qubits; ++q) {
        model.set_one_qubit_error(q, 1e-4 + rng.next_double() * 4e-4);
        model.set_readout(q, {0.005 + rng.next_double() * 0.03, 0.005 + rng.next_double() * 0.02});
    }
    return model;
}

Circuit random_conformant_circuit(const NoiseModel& model, int num_gates, uint64_t seed,
                                  bool with_measure) {
    Rng rng(seed);
    const auto edges = model.edges();
    Circuit c(model.num_qubits());
    for (int g = 0; g < num_gates; ++g) {
        const uint64_t kind = rng.next_below(6);
        if (kind < 3 && !edges.empty()) {
            const auto& [a, b] = edges[rng.next_below(edges.size())];
            if (kind == 2) {
                c.swap(a, b);
            } else {
                rng.next_below(2) ? (void)c.cx(a, b) : (void)c.cx(b, a);
            }
        } else {
            const int q = static_cast<int>(rng.next_below(static_cast<uint64_t>(model.num_qubits())));
            switch (kind) {
                case 3: c.x(q); break;
                case 4: c.h(q); break;
                default: c.rz(q, (rng.next_double() * 2.0 - 1.0) * std::numbers::pi); break;
            }
        }
    }
    if (with_measure) c.measure_all();
    return c;
}

WorkedExample worked_example() {
    WorkedExample ex;
    ex.device = NoiseModel(4);
    ex.device.set_two_qubit_error(0, 1, 0.0063);
    ex.device.set_two_qubit_error(1, 0, 0.0063);
    ex.device.set_two_qubit_error(0, 2, 0.0114);
    ex.device.set_two_qubit_error(2, 0, 0.0114);
    ex.device.set_two_qubit_error(0, 3, 0.02);
    ex.device.set_two_qubit_error(1, 3, 0.03);

    ex.logical = Circuit(3);
    for (int rep = 0; rep < 4; ++rep) ex.logical.cx(0, 1);
    ex.logical.cx(1, 2);
    ex.logical.measure_all();

    // logical 0 -> physical 1, logical 1 -> physical 0, logical 2 -> physical 2
    ex.mapped = Circuit(3);
    for (int rep = 0; rep < 4; ++rep) ex.mapped.cx(1, 0);
    ex.mapped.cx(0, 2);
    ex.mapped.measure_all();
    return ex;
}

NoiseModel zero_noise_model(int num_qubits) {
    NoiseModel model(num_qubits);
    for (int a = 0; a < num_qubits; ++a) {
        for (int b = a + 1; b < num_qubits; ++b) model.set_two_qubit_error(a, b, 0.0);
    }
    return model;
}

NoiseModel uniform_star_model(int num_qubits, double cx_error) {
    NoiseModel model(num_qubits);
    for (int q = 1; q < num_qubits; ++q) model.set_two_qubit_error(0, q, cx_error);
    return model;
}

NoiseModel heterogeneous_star_model(int num_qubits) {
    NoiseModel model(num_qubits);
    double e = 0.003;
    for (int q = 1; q < num_qubits; ++q) {
        model.set_two_qubit_error(0, q, std::min(e, 0.035));
        e *= 2.0;
    }
    return model;
}

} // namespace zne::testing
