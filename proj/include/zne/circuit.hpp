#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zne {

// Gate set: one-qubit Cliffords plus rz, the two-qubit cx/swap, and a single
// terminal measurement of the full register.
//
// Phase convention: rz(theta) = diag(1, e^{i*theta}). Under this convention
// s == rz(pi/2) and t == rz(pi/4) hold exactly (no global phase), so the
// dagger of s is represented as rz(-pi/2) and the dagger of t as rz(-pi/4).
enum class GateKind : uint8_t { X, H, Z, S, T, RZ, CX, SWAP, MeasureAll };

// Number of explicit qubit operands (MeasureAll acts on the full register
// and reports 0).
int gate_arity(GateKind kind);

std::string_view gate_name(GateKind kind);

struct Gate {
    GateKind kind = GateKind::X;
    std::array<int, 2> qubits{-1, -1};
    double angle = 0.0;        // rz only
    bool fold_inserted = false; // metadata tag; not part of gate identity

    static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0, false}; }
    static Gate h(int q) { return {GateKind::H, {q, -1}, 0.0, false}; }
    static Gate z(int q) { return {GateKind::Z, {q, -1}, 0.0, false}; }
    static Gate s(int q) { return {GateKind::S, {q, -1}, 0.0, false}; }
    static Gate t(int q) { return {GateKind::T, {q, -1}, 0.0, false}; }
    static Gate rz(int q, double angle) { return {GateKind::RZ, {q, -1}, angle, false}; }
    static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0, false}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0, false}; }
    static Gate measure_all() { return {GateKind::MeasureAll, {-1, -1}, 0.0, false}; }

    bool is_measurement() const { return kind == GateKind::MeasureAll; }
    bool is_two_qubit() const { return kind == GateKind::CX || kind == GateKind::SWAP; }

    // Identity ignores the fold_inserted tag.
    bool operator==(const Gate& other) const {
        return kind == other.kind && qubits == other.qubits && angle == other.angle;
    }
};

// Ordered gate list over a fixed-width register. Invariants enforced on
// append: operand indices in range and distinct, at most one measurement and
// only as the final element. Immutable-by-convention after construction;
// safe to share read-only across threads.
class Circuit {
public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }

    void append(Gate g);

    Circuit& x(int q) { append(Gate::x(q)); return *this; }
    Circuit& h(int q) { append(Gate::h(q)); return *this; }
    Circuit& z(int q) { append(Gate::z(q)); return *this; }
    Circuit& s(int q) { append(Gate::s(q)); return *this; }
    Circuit& t(int q) { append(Gate::t(q)); return *this; }
    Circuit& rz(int q, double angle) { append(Gate::rz(q, angle)); return *this; }
    Circuit& cx(int control, int target) { append(Gate::cx(control, target)); return *this; }
    Circuit& swap(int a, int b) { append(Gate::swap(a, b)); return *this; }
    Circuit& measure_all() { append(Gate::measure_all()); return *this; }

    // Count of non-measurement gates (one gate per layer).
    int depth() const;
    bool has_measurement() const;

    bool operator==(const Circuit& other) const {
        return num_qubits_ == other.num_qubits_ && gates_ == other.gates_;
    }

private:
    int num_qubits_ = 0;
    std::vector<Gate> gates_;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line-based text format (UTF-8, case-insensitive mnemonics, '#' comments):
//
//   qubits <n>
//   x <q> | h <q> | z <q> | s <q> | t <q> | rz <q> <theta>
//   cx <control> <target> | swap <a> <b>
//   measure
//
// Errors carry the offending line number.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& circuit);

// Dagger of a single gate. Self-inverse kinds (x, h, z, cx, swap) map to
// themselves; s -> rz(-pi/2), t -> rz(-pi/4), rz(a) -> rz(-a), exact under
// the rz phase convention above. Throws on measurement.
Gate inverse_gate(const Gate& g);

// Dagger of a measurement-free segment: reversed order, each gate inverted.
std::vector<Gate> inverse(std::span<const Gate> segment);

// X on qubit 0 followed by a ladder of cx gates between adjacent qubits and
// a final measurement; the noiseless outcome is the all-ones bitstring.
Circuit cnot_chain(int num_qubits);

// Standard Bernstein-Vazirani construction over n data qubits plus one
// ancilla (qubit n). The noiseless data-qubit readout equals `secret`
// (secret[i] is the bit read on qubit i).
Circuit bernstein_vazirani(std::string_view secret);

} // namespace zne
