#include "zne/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zne/accumulation.hpp"
#include "zne/rng.hpp"

namespace zne {

namespace {

constexpr uint64_t kShotStream = 0x73686f74; // stream tags for seed derivation
constexpr uint64_t kFoldStream = 0x666f6c64;
constexpr int kDensityLimit = 10;
constexpr int kTrajectoryLimit = 20;

template <class F>
auto with_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("[") + stage + "] " + e.what());
    }
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

FoldMethod parse_fold_method(std::string_view name) {
    if (name == "unmitigated") return FoldMethod::Unmitigated;
    if (name == "global") return FoldMethod::Global;
    if (name == "left") return FoldMethod::Left;
    if (name == "random") return FoldMethod::Random;
    if (name == "noise-aware") return FoldMethod::NoiseAware;
    throw std::invalid_argument("unknown folding method '" + std::string(name) +
                                "' (expected global|left|random|noise-aware|unmitigated)");
}

std::string_view fold_method_name(FoldMethod method) {
    switch (method) {
        case FoldMethod::Unmitigated: return "unmitigated";
        case FoldMethod::Global: return "global";
        case FoldMethod::Left: return "left";
        case FoldMethod::Random: return "random";
        case FoldMethod::NoiseAware: return "noise-aware";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "auto") return Engine::Auto;
    if (name == "density") return Engine::Density;
    if (name == "traj" || name == "trajectory") return Engine::Trajectory;
    throw std::invalid_argument("unknown engine '" + std::string(name) +
                                "' (expected auto|density|traj)");
}

std::string_view engine_name(Engine engine) {
    switch (engine) {
        case Engine::Auto: return "auto";
        case Engine::Density: return "density";
        case Engine::Trajectory: return "traj";
    }
    return "?";
}

void RunConfig::validate() const {
    if (circuit_spec.empty()) throw std::invalid_argument("no circuit given");
    if (!model && noise_model_path.empty()) throw std::invalid_argument("no noise model given");
    if (scales.empty()) throw std::invalid_argument("scale factor list is empty");
    for (size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] >= 1.0)) throw std::invalid_argument("scale factors must be >= 1");
        if (i > 0 && !(scales[i] > scales[i - 1])) {
            throw std::invalid_argument("scale factors must be strictly ascending");
        }
    }
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
}

Circuit build_circuit(const std::string& spec) {
    if (spec.rfind("cnot-chain:", 0) == 0) {
        return cnot_chain(std::stoi(spec.substr(11)));
    }
    if (spec.rfind("bv:", 0) == 0) {
        return bernstein_vazirani(spec.substr(3));
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open circuit file '" + spec + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

namespace {

struct LogicalObservable {
    std::string target;
    std::vector<int> qubits; // logical indices
};

LogicalObservable logical_observable(const std::string& spec, const Circuit& circuit) {
    LogicalObservable obs;
    if (spec.rfind("cnot-chain:", 0) == 0) {
        obs.target.assign(static_cast<size_t>(circuit.num_qubits()), '1');
        obs.qubits.resize(static_cast<size_t>(circuit.num_qubits()));
    } else if (spec.rfind("bv:", 0) == 0) {
        obs.target = spec.substr(3); // data qubits only; the ancilla is free
        obs.qubits.resize(obs.target.size());
    } else {
        // files: success of the most likely noiseless outcome
        const auto probs = probabilities(simulate_exact(circuit));
        size_t best = 0;
        for (size_t i = 1; i < probs.size(); ++i) {
            if (probs[i] > probs[best]) best = i;
        }
        obs.target.assign(static_cast<size_t>(circuit.num_qubits()), '0');
        for (int q = 0; q < circuit.num_qubits(); ++q) {
            if ((best >> q) & 1u) obs.target[static_cast<size_t>(q)] = '1';
        }
        obs.qubits.resize(static_cast<size_t>(circuit.num_qubits()));
    }
    for (size_t k = 0; k < obs.qubits.size(); ++k) obs.qubits[k] = static_cast<int>(k);
    return obs;
}

struct FoldOutcome {
    Circuit circuit{1};
    int inserted_gates = 0;
    std::vector<PairFolds> pair_folds;
};

FoldOutcome apply_fold(const RoutedCircuit& routed, const RunConfig& config, double lambda,
                       uint64_t fold_seed) {
    FoldOutcome out;
    switch (config.method) {
        case FoldMethod::Unmitigated:
            out.circuit = routed.circuit;
            break;
        case FoldMethod::Global:
            out.circuit = fold_global(routed.circuit, lambda);
            break;
        case FoldMethod::Left:
            out.circuit = fold_from_left(routed.circuit, lambda);
            break;
        case FoldMethod::Random:
            out.circuit = fold_random(routed.circuit, lambda, fold_seed);
            break;
        case FoldMethod::NoiseAware: {
            NoiseAwareFold fold = fold_noise_aware(routed.circuit, lambda, config.gamma,
                                                   routed.model, config.append_folds);
            out.circuit = std::move(fold.circuit);
            out.pair_folds = std::move(fold.pairs);
            break;
        }
    }
    out.inserted_gates = static_cast<int>(out.circuit.gates().size() - routed.circuit.gates().size());
    return out;
}

std::string config_digest(const RunConfig& config) {
    std::string canon = config.circuit_spec + "|" + std::string(fold_method_name(config.method));
    for (double s : config.scales) canon += "|" + fmt_g(s);
    canon += "|g" + fmt_g(config.gamma) + "|n" + std::to_string(config.shots) + "|r" +
             std::to_string(config.repetitions) + "|s" + std::to_string(config.seed) +
             (config.no_map ? "|nomap" : "") + (config.append_folds ? "|append" : "") +
             (config.readout_error ? "" : "|noread");
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

RunResult run(const RunConfig& config) {
    config.validate();

    const NoiseModel device = with_stage("noise-model", [&] {
        return config.model ? *config.model : load_noise_model(config.noise_model_path);
    });
    const Circuit logical = with_stage("circuit", [&] { return build_circuit(config.circuit_spec); });
    const LogicalObservable lobs =
        with_stage("observable", [&] { return logical_observable(config.circuit_spec, logical); });

    const RoutedCircuit routed = with_stage("map", [&] {
        if (config.no_map) return route_premapped(logical, device);
        return route(logical, noise_adaptive_layout(logical, device), device);
    });

    std::vector<int> positions;
    positions.reserve(lobs.qubits.size());
    for (int q : lobs.qubits) {
        positions.push_back(routed.final_position[static_cast<size_t>(q)]);
    }
    const Observable obs = Observable::success(lobs.target, std::move(positions));

    const int m = routed.circuit.num_qubits();
    Engine engine = config.engine;
    with_stage("engine", [&] {
        if (engine == Engine::Auto) {
            engine = m <= kDensityLimit ? Engine::Density : Engine::Trajectory;
        }
        if (engine == Engine::Density && m > kDensityLimit) {
            throw std::invalid_argument("density engine supports at most " +
                                        std::to_string(kDensityLimit) + " used qubits, circuit uses " +
                                        std::to_string(m));
        }
        if (engine == Engine::Trajectory && m > kTrajectoryLimit) {
            throw std::invalid_argument("trajectory engine supports at most " +
                                        std::to_string(kTrajectoryLimit) + " used qubits, circuit uses " +
                                        std::to_string(m));
        }
    });

    RunResult result;
    result.method = fold_method_name(config.method);
    result.circuit_label = config.circuit_spec;
    result.logical_qubits = logical.num_qubits();
    result.compact_qubits = m;
    result.swap_count = routed.swap_count;
    result.engine_used = engine == Engine::Density ? "density" : "traj";
    result.seed = config.seed;
    result.config_digest = config_digest(config);
    result.model_backend = device.backend;
    result.model_date = device.date;
    for (size_t l = 0; l < routed.initial_position.size(); ++l) {
        result.layout.emplace_back(static_cast<int>(l),
                                   routed.device_qubit[static_cast<size_t>(routed.initial_position[l])]);
    }

    const std::vector<double> scales =
        config.method == FoldMethod::Unmitigated ? std::vector<double>{1.0} : config.scales;

    for (size_t li = 0; li < scales.size(); ++li) {
        const double lambda = scales[li];
        LambdaResult lr;
        lr.lambda = lambda;

        FoldOutcome fixed;
        std::vector<double> fixed_probs;
        const bool refold_per_rep = config.method == FoldMethod::Random;
        if (!refold_per_rep) {
            fixed = with_stage("fold", [&] { return apply_fold(routed, config, lambda, 0); });
            if (engine == Engine::Density) {
                fixed_probs = with_stage("simulate", [&] {
                    return simulate_density_matrix(fixed.circuit, routed.model, config.readout_error);
                });
            }
        }

        for (int rep = 0; rep < config.repetitions; ++rep) {
            const uint64_t shot_seed =
                derive_seed(config.seed, {kShotStream, li, static_cast<uint64_t>(rep)});
            FoldOutcome local;
            const FoldOutcome* fold = &fixed;
            if (refold_per_rep) {
                const uint64_t fold_seed =
                    derive_seed(config.seed, {kFoldStream, li, static_cast<uint64_t>(rep)});
                local = with_stage("fold", [&] { return apply_fold(routed, config, lambda, fold_seed); });
                fold = &local;
            }
            Counts counts = with_stage("simulate", [&] {
                if (engine == Engine::Density) {
                    if (refold_per_rep) {
                        const auto probs =
                            simulate_density_matrix(fold->circuit, routed.model, config.readout_error);
                        return sample_counts(probs, m, config.shots, shot_seed);
                    }
                    return sample_counts(fixed_probs, m, config.shots, shot_seed);
                }
                return simulate_trajectories(fold->circuit, routed.model, config.shots, shot_seed,
                                             config.readout_error);
            });
            ExpectationEstimate est = with_stage("expectation", [&] { return expectation(counts, obs); });
            est.lambda = lambda;
            lr.reps.push_back(est);
            lr.gate_count = static_cast<int>(fold->circuit.gates().size());
            lr.inserted_gates = fold->inserted_gates;
            if (config.method == FoldMethod::NoiseAware) lr.pair_folds = fold->pair_folds;
        }

        ExpectationEstimate avg;
        avg.lambda = lambda;
        double var_sum = 0.0;
        for (const auto& est : lr.reps) {
            avg.mean += est.mean;
            var_sum += est.std_err * est.std_err;
            avg.shots += est.shots;
        }
        avg.mean /= static_cast<double>(lr.reps.size());
        avg.std_err = std::sqrt(var_sum) / static_cast<double>(lr.reps.size());
        avg.degenerate = avg.mean == 0.0;
        lr.averaged = avg;
        if (avg.degenerate) {
            result.warnings.push_back("zero expectation for " + result.method + " at lambda=" +
                                      fmt_g(lambda) + "; extrapolation may be unreliable");
        }
        result.per_lambda.push_back(std::move(lr));
    }

    for (const auto& lr : result.per_lambda) {
        if (lr.lambda == 1.0) result.unmitigated = lr.averaged.mean;
    }

    if (result.per_lambda.size() >= 2) {
        ExtrapolationInput input;
        for (const auto& lr : result.per_lambda) {
            input.points.push_back({lr.lambda, lr.averaged.mean, lr.averaged.std_err});
        }
        with_stage("extrapolate", [&] {
            result.linear = linear_fit(input);
            result.rich = richardson(input);
            return 0;
        });
        if (config.per_rep_fits) {
            for (int rep = 0; rep < config.repetitions; ++rep) {
                ExtrapolationInput rep_input;
                for (const auto& lr : result.per_lambda) {
                    rep_input.points.push_back({lr.lambda, lr.reps[static_cast<size_t>(rep)].mean,
                                                lr.reps[static_cast<size_t>(rep)].std_err});
                }
                result.per_rep_linear.push_back(linear_fit(rep_input).intercept);
            }
        }
    }
    return result;
}

namespace {

std::string spec_for_qubits(const std::string& base_spec, int qubits) {
    if (base_spec.rfind("cnot-chain", 0) == 0) {
        return "cnot-chain:" + std::to_string(qubits);
    }
    if (base_spec.rfind("bv", 0) == 0) {
        std::string secret(static_cast<size_t>(qubits), '0');
        for (int i = 0; i < qubits; i += 2) secret[static_cast<size_t>(i)] = '1';
        return "bv:" + secret;
    }
    throw std::invalid_argument("sweep requires a generator circuit (cnot-chain or bv)");
}

} // namespace

std::vector<SweepCell> sweep(const RunConfig& base, int qubits_lo, int qubits_hi,
                             const std::vector<FoldMethod>& methods) {
    if (qubits_lo < 2 || qubits_hi < qubits_lo) {
        throw std::invalid_argument("bad qubit range for sweep");
    }
    if (methods.empty()) throw std::invalid_argument("no folding methods for sweep");

    // preload once so every cell shares the parsed model
    RunConfig proto = base;
    if (!proto.model) {
        proto.model = load_noise_model(proto.noise_model_path);
    }

    std::vector<SweepCell> cells;
    for (int q = qubits_lo; q <= qubits_hi; ++q) {
        for (size_t mi = 0; mi < methods.size(); ++mi) {
            SweepCell cell;
            cell.qubits = q;
            cell.method = methods[mi];
            cells.push_back(cell);
        }
    }

    const int64_t total = static_cast<int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (int64_t idx = 0; idx < total; ++idx) {
        SweepCell& cell = cells[static_cast<size_t>(idx)];
        RunConfig cfg = proto;
        cfg.method = cell.method;
        cfg.seed = derive_seed(base.seed, {static_cast<uint64_t>(cell.qubits),
                                           static_cast<uint64_t>(cell.method)});
        try {
            cfg.circuit_spec = spec_for_qubits(base.circuit_spec, cell.qubits);
            cell.result = run(cfg);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    }
    return cells;
}

std::string results_to_csv(const RunConfig& base, const std::vector<SweepCell>& cells) {
    std::string out;
    out += "# zne results\n";
    out += "# circuit=" + base.circuit_spec + " fold=" + std::string(fold_method_name(base.method)) + "\n";
    std::string scales_str;
    for (size_t i = 0; i < base.scales.size(); ++i) {
        if (i) scales_str += ",";
        scales_str += fmt_g(base.scales[i]);
    }
    out += "# scales=" + scales_str + " gamma=" + fmt_g(base.gamma) + " shots=" +
           std::to_string(base.shots) + " reps=" + std::to_string(base.repetitions) + " seed=" +
           std::to_string(base.seed) + "\n";
    for (const SweepCell& cell : cells) {
        if (!cell.ok) {
            out += "# failed qubits=" + std::to_string(cell.qubits) + " method=" +
                   std::string(fold_method_name(cell.method)) + " error=" + cell.error + "\n";
            continue;
        }
        const RunResult& r = cell.result;
        out += "# cell method=" + r.method + " qubits=" + std::to_string(r.logical_qubits) +
               " device_qubits=" + std::to_string(r.compact_qubits) + " swaps=" +
               std::to_string(r.swap_count) + " engine=" + r.engine_used + " model=" +
               (r.model_backend.empty() ? "-" : r.model_backend) + " date=" +
               (r.model_date.empty() ? "-" : r.model_date) + " config=" + r.config_digest +
               " layout=";
        for (size_t i = 0; i < r.layout.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(r.layout[i].first) + ":" + std::to_string(r.layout[i].second);
        }
        out += "\n";
        for (const std::string& w : r.warnings) out += "# warning " + w + "\n";
        const auto fit_line = [&](const ExtrapolationFit& fit) {
            std::string line = "# fit method=" + r.method + " qubits=" + std::to_string(r.logical_qubits) +
                               " kind=" + std::string(fit_method_name(fit.method)) +
                               " intercept=" + fmt_g(fit.intercept) + " coefficients=";
            for (size_t c = 0; c < fit.coefficients.size(); ++c) {
                if (c) line += ",";
                line += fmt_g(fit.coefficients[c]);
            }
            line += " rss=" + fmt_g(fit.diagnostics.rss) +
                    " lambda_mean=" + fmt_g(fit.diagnostics.lambda_mean) +
                    " y_mean=" + fmt_g(fit.diagnostics.y_mean) +
                    " s_lambda_y=" + fmt_g(fit.diagnostics.s_lambda_y) +
                    " s_lambda_lambda=" + fmt_g(fit.diagnostics.s_lambda_lambda) + "\n";
            out += line;
        };
        if (r.linear) fit_line(*r.linear);
        if (r.rich) fit_line(*r.rich);
        for (size_t rep = 0; rep < r.per_rep_linear.size(); ++rep) {
            out += "# per-rep-intercept method=" + r.method + " rep=" + std::to_string(rep) +
                   " linear=" + fmt_g(r.per_rep_linear[rep]) + "\n";
        }
    }

    out += "method,qubits,lambda,rep,mean,std_err,shots,seed\n";
    for (const SweepCell& cell : cells) {
        if (!cell.ok) continue;
        const RunResult& r = cell.result;
        for (const LambdaResult& lr : r.per_lambda) {
            for (size_t rep = 0; rep < lr.reps.size(); ++rep) {
                const auto& est = lr.reps[rep];
                out += r.method + "," + std::to_string(r.logical_qubits) + "," + fmt_g(lr.lambda) +
                       "," + std::to_string(rep) + "," + fmt_g(est.mean) + "," + fmt_g(est.std_err) +
                       "," + std::to_string(est.shots) + "," + std::to_string(r.seed) + "\n";
            }
            out += r.method + "," + std::to_string(r.logical_qubits) + "," + fmt_g(lr.lambda) +
                   ",avg," + fmt_g(lr.averaged.mean) + "," + fmt_g(lr.averaged.std_err) + "," +
                   std::to_string(lr.averaged.shots) + "," + std::to_string(r.seed) + "\n";
        }
    }

    out += "method,qubits,intercept_linear,intercept_richardson,unmitigated\n";
    for (const SweepCell& cell : cells) {
        if (!cell.ok) continue;
        const RunResult& r = cell.result;
        out += r.method + "," + std::to_string(r.logical_qubits) + ",";
        out += (r.linear ? fmt_g(r.linear->intercept) : "") + std::string(",");
        out += (r.rich ? fmt_g(r.rich->intercept) : "") + std::string(",");
        out += (r.unmitigated ? fmt_g(*r.unmitigated) : "") + std::string("\n");
    }
    return out;
}

std::string results_to_gnuplot(const std::vector<SweepCell>& cells) {
    std::string out = "# qubits method intercept_linear intercept_richardson unmitigated\n";
    for (const SweepCell& cell : cells) {
        if (!cell.ok) continue;
        const RunResult& r = cell.result;
        out += std::to_string(r.logical_qubits) + " " + r.method + " " +
               (r.linear ? fmt_g(r.linear->intercept) : "-") + " " +
               (r.rich ? fmt_g(r.rich->intercept) : "-") + " " +
               (r.unmitigated ? fmt_g(*r.unmitigated) : "-") + "\n";
    }
    return out;
}

} // namespace zne
