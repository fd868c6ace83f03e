#include "zne/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zne/kernels.hpp"
#include "zne/rng.hpp"

namespace zne {

namespace {

constexpr int kMaxStatevectorQubits = 20;
constexpr int kMaxDensityQubits = 10;
constexpr double kTraceTolerance = 1e-9;

void check_width(const Circuit& circuit, int limit, const char* engine) {
    if (circuit.num_qubits() > limit) {
        throw std::invalid_argument(std::string(engine) + " supports at most " +
                                    std::to_string(limit) + " qubits, circuit has " +
                                    std::to_string(circuit.num_qubits()));
    }
}

// Pair error rate used by the noise channels; uncalibrated pairs are clean.
double pair_error(const NoiseModel& model, int i, int j) {
    return model.coupled(i, j) ? model.error(i, j) : 0.0;
}

std::string bitstring_of(uint64_t index, int num_qubits) {
    std::string s(static_cast<size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if ((index >> q) & 1u) s[static_cast<size_t>(q)] = '1';
    }
    return s;
}

} // namespace

Observable Observable::success(std::string target_bits, std::vector<int> positions) {
    Observable obs;
    obs.kind = Kind::SuccessBitstring;
    obs.target = std::move(target_bits);
    obs.qubits = std::move(positions);
    if (obs.target.size() != obs.qubits.size()) {
        throw std::invalid_argument("observable target length must match its qubit count");
    }
    return obs;
}

Observable Observable::z_parity(std::vector<int> positions) {
    Observable obs;
    obs.kind = Kind::ZParity;
    obs.qubits = std::move(positions);
    return obs;
}

std::array<cplx, 4> unitary_1q(GateKind kind, double angle) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case GateKind::X: return {cplx(0), cplx(1), cplx(1), cplx(0)};
        case GateKind::H: return {cplx(inv_sqrt2), cplx(inv_sqrt2), cplx(inv_sqrt2), cplx(-inv_sqrt2)};
        case GateKind::Z: return {cplx(1), cplx(0), cplx(0), cplx(-1)};
        case GateKind::S: return {cplx(1), cplx(0), cplx(0), cplx(0, 1)};
        case GateKind::T: return {cplx(1), cplx(0), cplx(0), std::polar(1.0, std::numbers::pi / 4.0)};
        case GateKind::RZ: return {cplx(1), cplx(0), cplx(0), std::polar(1.0, angle)};
        default:
            throw std::invalid_argument("not a one-qubit gate");
    }
}

namespace {

void apply_gate_statevector(std::span<cplx> amps, const Gate& g, bool parallel) {
    switch (g.kind) {
        case GateKind::CX:
            kernels::apply_cx(amps, g.qubits[0], g.qubits[1], parallel);
            break;
        case GateKind::SWAP:
            kernels::apply_swap(amps, g.qubits[0], g.qubits[1], parallel);
            break;
        case GateKind::MeasureAll:
            break;
        default:
            kernels::apply_1q(amps, g.qubits[0], unitary_1q(g.kind, g.angle), parallel);
            break;
    }
}

// Pauli index: 1 = X, 2 = Y, 3 = Z.
void apply_pauli(std::span<cplx> amps, int qubit, int pauli, bool parallel) {
    static const std::array<cplx, 4> kX = {cplx(0), cplx(1), cplx(1), cplx(0)};
    static const std::array<cplx, 4> kY = {cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)};
    static const std::array<cplx, 4> kZ = {cplx(1), cplx(0), cplx(0), cplx(-1)};
    switch (pauli) {
        case 1: kernels::apply_1q(amps, qubit, kX, parallel); break;
        case 2: kernels::apply_1q(amps, qubit, kY, parallel); break;
        case 3: kernels::apply_1q(amps, qubit, kZ, parallel); break;
        default: break;
    }
}

} // namespace

std::vector<cplx> simulate_exact(const Circuit& circuit, bool parallel) {
    check_width(circuit, kMaxStatevectorQubits, "statevector simulation");
    std::vector<cplx> amps(size_t{1} << circuit.num_qubits(), cplx(0));
    amps[0] = 1.0;
    const bool par = parallel && amps.size() >= (size_t{1} << 14);
    for (const Gate& g : circuit.gates()) {
        apply_gate_statevector(amps, g, par);
    }
    return amps;
}

std::vector<double> probabilities(const std::vector<cplx>& statevector) {
    std::vector<double> probs(statevector.size());
    for (size_t i = 0; i < statevector.size(); ++i) probs[i] = std::norm(statevector[i]);
    return probs;
}

std::vector<double> simulate_density_matrix(const Circuit& circuit, const NoiseModel& model,
                                            bool apply_readout, bool parallel) {
    check_width(circuit, kMaxDensityQubits, "density-matrix simulation");
    const int n = circuit.num_qubits();
    std::vector<cplx> rho(size_t{1} << (2 * n), cplx(0));
    rho[0] = 1.0;
    const bool par = parallel && rho.size() >= (size_t{1} << 14);

    for (const Gate& g : circuit.gates()) {
        if (g.is_measurement()) break;
        if (g.is_two_qubit()) {
            const int a = g.qubits[0];
            const int b = g.qubits[1];
            if (g.kind == GateKind::CX) {
                kernels::apply_cx(rho, a, b, par);
                kernels::apply_cx(rho, n + a, n + b, par);
                kernels::depolarize_2q(rho, n, a, b, pair_error(model, a, b), par);
            } else {
                kernels::apply_swap(rho, a, b, par);
                kernels::apply_swap(rho, n + a, n + b, par);
                const double p = pair_error(model, a, b);
                for (int rep = 0; rep < 3; ++rep) {
                    kernels::depolarize_2q(rho, n, a, b, p, par);
                }
            }
        } else {
            const int q = g.qubits[0];
            const auto u = unitary_1q(g.kind, g.angle);
            const std::array<cplx, 4> uc = {std::conj(u[0]), std::conj(u[1]),
                                            std::conj(u[2]), std::conj(u[3])};
            kernels::apply_1q(rho, q, u, par);
            kernels::apply_1q(rho, n + q, uc, par);
            kernels::depolarize_1q(rho, n, q, model.one_qubit_error(q), par);
        }
        const double trace = kernels::trace_real(rho, n);
        if (std::abs(trace - 1.0) > kTraceTolerance) {
            throw std::runtime_error("density matrix trace drifted to " + std::to_string(trace));
        }
    }

    std::vector<double> probs(size_t{1} << n);
    for (size_t r = 0; r < probs.size(); ++r) {
        probs[r] = std::max(0.0, rho[r | (r << n)].real());
    }
    if (apply_readout) {
        for (int q = 0; q < n; ++q) {
            const ReadoutError r = model.readout(q);
            kernels::readout_confuse(probs, q, r.p_meas0_prep1, r.p_meas1_prep0, par);
        }
    }
    return probs;
}

Counts simulate_trajectories(const Circuit& circuit, const NoiseModel& model, uint64_t shots,
                             uint64_t seed, bool apply_readout, bool parallel) {
    check_width(circuit, kMaxStatevectorQubits, "trajectory simulation");
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    const int n = circuit.num_qubits();
    const size_t dim = size_t{1} << n;
    const bool kernels_parallel = false; // shots are the parallel axis

    Counts total;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        std::vector<cplx> amps(dim);
        Counts local;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int64_t shot = 0; shot < static_cast<int64_t>(shots); ++shot) {
            Rng rng(derive_seed(seed, {static_cast<uint64_t>(shot)}));
            std::fill(amps.begin(), amps.end(), cplx(0));
            amps[0] = 1.0;
            for (const Gate& g : circuit.gates()) {
                if (g.is_measurement()) break;
                apply_gate_statevector(amps, g, kernels_parallel);
                if (g.is_two_qubit()) {
                    const double p = pair_error(model, g.qubits[0], g.qubits[1]);
                    const int draws = g.kind == GateKind::SWAP ? 3 : 1;
                    for (int d = 0; d < draws; ++d) {
                        if (p > 0.0 && rng.next_double() < p) {
                            // 15 non-identity two-qubit Paulis
                            const int combined = 1 + static_cast<int>(rng.next_below(15));
                            apply_pauli(amps, g.qubits[0], combined & 3, kernels_parallel);
                            apply_pauli(amps, g.qubits[1], (combined >> 2) & 3, kernels_parallel);
                        }
                    }
                } else {
                    const double p = model.one_qubit_error(g.qubits[0]);
                    if (p > 0.0 && rng.next_double() < p) {
                        apply_pauli(amps, g.qubits[0], 1 + static_cast<int>(rng.next_below(3)),
                                    kernels_parallel);
                    }
                }
            }
            // sample one outcome
            uint64_t outcome = dim - 1;
            double u = rng.next_double();
            for (size_t i = 0; i < dim; ++i) {
                u -= std::norm(amps[i]);
                if (u < 0.0) {
                    outcome = i;
                    break;
                }
            }
            if (apply_readout) {
                for (int q = 0; q < n; ++q) {
                    const ReadoutError r = model.readout(q);
                    const bool bit = (outcome >> q) & 1u;
                    const double flip = bit ? r.p_meas0_prep1 : r.p_meas1_prep0;
                    if (flip > 0.0 && rng.next_double() < flip) outcome ^= uint64_t{1} << q;
                }
            }
            ++local[bitstring_of(outcome, n)];
        }
#ifdef _OPENMP
#pragma omp critical(zne_traj_merge)
#endif
        {
            for (const auto& [key, count] : local) total[key] += count;
        }
    }
    return total;
}

Counts sample_counts(const std::vector<double>& probs, int num_qubits, uint64_t shots,
                     uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    if (acc <= 0.0) throw std::invalid_argument("distribution has zero total mass");
    Rng rng(seed);
    Counts counts;
    for (uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const size_t idx = std::min(static_cast<size_t>(it - cdf.begin()), probs.size() - 1);
        ++counts[bitstring_of(idx, num_qubits)];
    }
    return counts;
}

namespace {

bool matches(const std::string& bits, const Observable& obs) {
    if (obs.kind == Observable::Kind::SuccessBitstring) {
        for (size_t k = 0; k < obs.qubits.size(); ++k) {
            const size_t pos = static_cast<size_t>(obs.qubits[k]);
            if (pos >= bits.size()) {
                throw std::invalid_argument("observable position exceeds bitstring width");
            }
            if (bits[pos] != obs.target[k]) return false;
        }
        return true;
    }
    int parity = 0;
    for (int q : obs.qubits) {
        const size_t pos = static_cast<size_t>(q);
        if (pos >= bits.size()) {
            throw std::invalid_argument("observable position exceeds bitstring width");
        }
        parity ^= bits[pos] == '1';
    }
    return parity == 0;
}

} // namespace

ExpectationEstimate expectation(const Counts& counts, const Observable& obs) {
    if (counts.empty()) throw std::invalid_argument("counts are empty");
    const size_t width = counts.begin()->first.size();
    for (int q : obs.qubits) {
        if (q < 0 || static_cast<size_t>(q) >= width) {
            throw std::invalid_argument("observable position exceeds bitstring width");
        }
    }
    uint64_t shots = 0;
    uint64_t hits = 0;
    for (const auto& [bits, count] : counts) {
        shots += count;
        if (matches(bits, obs)) hits += count;
    }
    ExpectationEstimate est;
    est.shots = shots;
    est.mean = static_cast<double>(hits) / static_cast<double>(shots);
    est.std_err = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(shots));
    est.degenerate = hits == 0;
    return est;
}

double exact_probability(const std::vector<double>& probs, int num_qubits, const Observable& obs) {
    double total = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0 && matches(bitstring_of(i, num_qubits), obs)) total += probs[i];
    }
    return total;
}

std::string counts_to_json(const Counts& counts) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [bits, count] : counts) {
        if (!first) out << ", ";
        first = false;
        out << '"' << bits << "\": " << count;
    }
    out << "}";
    return out.str();
}

} // namespace zne
