#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zne/circuit.hpp"
#include "zne/extrapolation.hpp"
#include "zne/folding.hpp"
#include "zne/mapper.hpp"
#include "zne/noise_model.hpp"
#include "zne/simulator.hpp"

namespace zne {

enum class FoldMethod { Unmitigated, Global, Left, Random, NoiseAware };

FoldMethod parse_fold_method(std::string_view name);
std::string_view fold_method_name(FoldMethod method);

enum class Engine { Auto, Density, Trajectory };

Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

struct RunConfig {
    // "cnot-chain:N", "bv:SECRET", or a path to a circuit file
    std::string circuit_spec;
    std::string noise_model_path;
    std::optional<NoiseModel> model; // overrides noise_model_path when set

    FoldMethod method = FoldMethod::NoiseAware;
    std::vector<double> scales{1.0, 1.5, 2.0, 2.5};
    double gamma = 2.0;
    uint64_t shots = 10000;
    int repetitions = 5;
    uint64_t seed = 1;
    Engine engine = Engine::Auto;
    bool no_map = false;        // accept a pre-mapped circuit verbatim
    bool append_folds = false;  // noise-aware folds at the end instead of inline
    bool readout_error = true;
    bool per_rep_fits = false;  // also extrapolate each repetition separately

    void validate() const;
};

struct LambdaResult {
    double lambda = 1.0;
    std::vector<ExpectationEstimate> reps;
    ExpectationEstimate averaged;
    int gate_count = 0;
    int inserted_gates = 0;
    std::vector<PairFolds> pair_folds; // noise-aware runs only
};

struct RunResult {
    std::string method;
    std::string circuit_label;
    int logical_qubits = 0;
    int compact_qubits = 0;
    int swap_count = 0;
    std::string engine_used;
    std::vector<std::pair<int, int>> layout; // logical qubit -> device qubit
    std::vector<LambdaResult> per_lambda;
    std::optional<double> unmitigated;       // averaged mean of the lambda = 1 entry
    std::optional<ExtrapolationFit> linear;
    std::optional<ExtrapolationFit> rich;
    std::vector<double> per_rep_linear;      // per-repetition intercepts, when requested
    uint64_t seed = 0;
    std::string config_digest;
    std::string model_backend;
    std::string model_date;
    std::vector<std::string> warnings;
};

// Full pipeline: build/parse -> layout -> route -> fold at each scale ->
// simulate (density matrix up to 10 used qubits, trajectories up to 20) ->
// aggregate repetitions -> extrapolate the averaged series.
RunResult run(const RunConfig& config);

struct SweepCell {
    int qubits = 0;
    FoldMethod method = FoldMethod::Left;
    bool ok = false;
    std::string error;
    RunResult result;
};

// One run per (qubit count, method); cells execute on a worker pool and each
// owns a seed derived from (config seed, qubit count, method), so the output
// does not depend on the worker count. Per-cell failures are recorded and
// the sweep continues.
std::vector<SweepCell> sweep(const RunConfig& base, int qubits_lo, int qubits_hi,
                             const std::vector<FoldMethod>& methods);

// CSV with per-repetition and averaged rows
// (method,qubits,lambda,rep,mean,std_err,shots,seed) followed by a summary
// section (method,qubits,intercept_linear,intercept_richardson,unmitigated).
// Output is byte-stable for a fixed config and seed.
std::string results_to_csv(const RunConfig& base, const std::vector<SweepCell>& cells);

// Whitespace-separated summary table for plotting.
std::string results_to_gnuplot(const std::vector<SweepCell>& cells);

Circuit build_circuit(const std::string& spec);

} // namespace zne
