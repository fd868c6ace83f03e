#include "zne/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace zne {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::SWAP:
            return 2;
        case GateKind::MeasureAll:
            return 0;
        default:
            return 1;
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::Z: return "z";
        case GateKind::S: return "s";
        case GateKind::T: return "t";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::SWAP: return "swap";
        case GateKind::MeasureAll: return "measure";
    }
    return "?";
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("circuit must have at least 1 qubit");
    }
}

void Circuit::append(Gate g) {
    if (has_measurement()) {
        throw std::invalid_argument("measure must be the final instruction");
    }
    const int arity = gate_arity(g.kind);
    for (int i = 0; i < arity; ++i) {
        if (g.qubits[i] < 0 || g.qubits[i] >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(g.qubits[i]) +
                                    " out of range for " + std::to_string(num_qubits_) + " qubits");
        }
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) {
        throw std::invalid_argument(std::string(gate_name(g.kind)) + " requires two distinct qubits");
    }
    if (g.kind == GateKind::RZ && !std::isfinite(g.angle)) {
        throw std::invalid_argument("rz angle must be finite");
    }
    gates_.push_back(g);
}

int Circuit::depth() const {
    int d = 0;
    for (const Gate& g : gates_) {
        if (!g.is_measurement()) ++d;
    }
    return d;
}

bool Circuit::has_measurement() const {
    return !gates_.empty() && gates_.back().is_measurement();
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) { out.push_back(cur); cur.clear(); }
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

int parse_int(const std::string& tok, int line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        fail(line_no, "expected integer, got '" + tok + "'");
    }
    return value;
}

double parse_double(const std::string& tok, int line_no) {
    try {
        size_t pos = 0;
        double value = std::stod(tok, &pos);
        if (pos != tok.size()) fail(line_no, "expected number, got '" + tok + "'");
        return value;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line_no, "expected number, got '" + tok + "'");
    }
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }

    Circuit* circuit = nullptr;
    Circuit result(1);
    bool have_header = false;
    for (size_t idx = 0; idx < lines.size(); ++idx) {
        const int line_no = static_cast<int>(idx) + 1;
        std::string_view raw = lines[idx];
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        auto toks = split_tokens(raw);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks[0] != "qubits") fail(line_no, "expected 'qubits <n>' header");
            if (toks.size() != 2) fail(line_no, "expected 'qubits <n>' header");
            const int n = parse_int(toks[1], line_no);
            if (n < 1) fail(line_no, "qubit count must be positive");
            result = Circuit(n);
            circuit = &result;
            have_header = true;
            continue;
        }

        const std::string& op = toks[0];
        const auto expect_args = [&](size_t n) {
            if (toks.size() != n + 1) {
                fail(line_no, "'" + op + "' expects " + std::to_string(n) + " argument(s)");
            }
        };
        try {
            if (op == "x" || op == "h" || op == "z" || op == "s" || op == "t") {
                expect_args(1);
                const int q = parse_int(toks[1], line_no);
                GateKind kind = op == "x"   ? GateKind::X
                                : op == "h" ? GateKind::H
                                : op == "z" ? GateKind::Z
                                : op == "s" ? GateKind::S
                                            : GateKind::T;
                circuit->append(Gate{kind, {q, -1}, 0.0, false});
            } else if (op == "rz") {
                expect_args(2);
                circuit->append(Gate::rz(parse_int(toks[1], line_no), parse_double(toks[2], line_no)));
            } else if (op == "cx") {
                expect_args(2);
                circuit->append(Gate::cx(parse_int(toks[1], line_no), parse_int(toks[2], line_no)));
            } else if (op == "swap") {
                expect_args(2);
                circuit->append(Gate::swap(parse_int(toks[1], line_no), parse_int(toks[2], line_no)));
            } else if (op == "measure") {
                expect_args(0);
                circuit->append(Gate::measure_all());
            } else {
                fail(line_no, "unknown instruction '" + op + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(line_no, e.what());
        }
    }
    if (!have_header) throw ParseError("missing 'qubits <n>' header");
    return result;
}

std::string serialize_circuit(const Circuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    char buf[64];
    for (const Gate& g : circuit.gates()) {
        out += gate_name(g.kind);
        const int arity = gate_arity(g.kind);
        for (int i = 0; i < arity; ++i) {
            out += ' ';
            out += std::to_string(g.qubits[i]);
        }
        if (g.kind == GateKind::RZ) {
            std::snprintf(buf, sizeof buf, " %.17g", g.angle);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Gate inverse_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::Z:
        case GateKind::CX:
        case GateKind::SWAP:
            return g;
        case GateKind::S:
            return Gate::rz(g.qubits[0], -std::numbers::pi / 2.0);
        case GateKind::T:
            return Gate::rz(g.qubits[0], -std::numbers::pi / 4.0);
        case GateKind::RZ:
            return Gate::rz(g.qubits[0], -g.angle);
        case GateKind::MeasureAll:
            break;
    }
    throw std::invalid_argument("measurement has no inverse");
}

std::vector<Gate> inverse(std::span<const Gate> segment) {
    std::vector<Gate> out;
    out.reserve(segment.size());
    for (auto it = segment.rbegin(); it != segment.rend(); ++it) {
        out.push_back(inverse_gate(*it));
    }
    return out;
}

Circuit cnot_chain(int num_qubits) {
    if (num_qubits < 2) {
        throw std::invalid_argument("cnot chain requires at least 2 qubits");
    }
    Circuit c(num_qubits);
    c.x(0);
    for (int q = 0; q + 1 < num_qubits; ++q) {
        c.cx(q, q + 1);
    }
    c.measure_all();
    return c;
}

Circuit bernstein_vazirani(std::string_view secret) {
    if (secret.empty()) {
        throw std::invalid_argument("secret must be nonempty");
    }
    for (char c : secret) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("secret must be a bitstring of 0s and 1s");
        }
    }
    const int n = static_cast<int>(secret.size());
    Circuit c(n + 1);
    for (int q = 0; q < n; ++q) c.h(q);
    c.x(n);
    c.h(n);
    for (int q = 0; q < n; ++q) {
        if (secret[q] == '1') c.cx(q, n);
    }
    for (int q = 0; q < n; ++q) c.h(q);
    c.measure_all();
    return c;
}

} // namespace zne
