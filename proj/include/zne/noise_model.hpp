#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zne {

struct ReadoutError {
    double p_meas0_prep1 = 0.0; // P(read 0 | prepared 1)
    double p_meas1_prep0 = 0.0; // P(read 1 | prepared 0)

    bool operator==(const ReadoutError&) const = default;
};

// Lookup of a qubit pair that is not in the coupling topology. Callers use
// this to decide when swap routing is required.
struct NoCouplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Calibration-derived error rates plus the coupling topology implied by the
// two-qubit entries. Entries are stored directed (as published), lookups are
// symmetric. Immutable after load; freely shared read-only.
class NoiseModel {
public:
    NoiseModel() = default;
    explicit NoiseModel(int num_qubits);

    int num_qubits() const { return num_qubits_; }

    void set_two_qubit_error(int i, int j, double p);
    void set_one_qubit_error(int q, double p);
    void set_readout(int q, ReadoutError r);

    bool coupled(int i, int j) const;

    // Error rate for the pair {i, j}. Prefers the stored (i, j) direction and
    // falls back to (j, i). Throws NoCouplingError when neither is stored.
    double error(int i, int j) const;

    // 0 when no calibration entry exists for the qubit.
    double one_qubit_error(int q) const;
    ReadoutError readout(int q) const;

    // Unordered coupled pairs (i < j), ascending.
    std::vector<std::pair<int, int>> edges() const;

    // Model over the sub-register `device_qubits`; index k of that list
    // becomes qubit k of the result.
    NoiseModel restricted(const std::vector<int>& device_qubits) const;

    const std::map<std::pair<int, int>, double>& two_qubit_errors() const { return two_qubit_; }
    const std::map<int, double>& one_qubit_errors() const { return one_qubit_; }
    const std::map<int, ReadoutError>& readout_errors() const { return readout_; }

    bool operator==(const NoiseModel& other) const;

    std::string backend;
    std::string date;
    // Columns ingested but not used by the noise channels (relaxation times,
    // frequencies, readout length, ...), keyed by column name.
    std::map<std::string, std::map<int, double>> extra_columns;

private:
    int num_qubits_ = 0;
    std::map<std::pair<int, int>, double> two_qubit_;
    std::map<int, double> one_qubit_;
    std::map<int, ReadoutError> readout_;
};

// Loads from a .json or .csv document (decided by file extension).
NoiseModel load_noise_model(const std::string& path);

// JSON schema:
//   { "backend": str, "date": str, "num_qubits": int,
//     "one_qubit_error": {"q": p}, "readout": {"q": [p01, p10]},
//     "two_qubit_error": {"i_j": p} }
NoiseModel parse_noise_model_json(const std::string& text);
std::string noise_model_to_json(const NoiseModel& model);

// Calibration-table CSV with a header row. Recognized columns: "Qubit",
// "Prob meas0 prep1", "Prob meas1 prep0", "Pauli-X error" (one-qubit error),
// and "CNOT error" with semicolon-separated "i_j:value" entries. Other
// numeric columns are stored in extra_columns. Leading "# key: value" lines
// may set backend/date metadata.
NoiseModel parse_noise_model_csv(const std::string& text);

} // namespace zne
