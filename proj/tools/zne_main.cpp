#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zne/accumulation.hpp"
#include "zne/mapper.hpp"
#include "zne/runner.hpp"

namespace {

std::vector<double> parse_scales(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return out;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        throw std::invalid_argument("qubit range must look like 'lo..hi'");
    }
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string dat_path(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const std::string base = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return base + ".dat";
}

void dump_matrix(const zne::RunConfig& cfg) {
    const zne::NoiseModel model =
        cfg.model ? *cfg.model : zne::load_noise_model(cfg.noise_model_path);
    const zne::Circuit logical = zne::build_circuit(cfg.circuit_spec);
    const zne::RoutedCircuit routed =
        cfg.no_map ? zne::route_premapped(logical, model)
                   : zne::route(logical, zne::noise_adaptive_layout(logical, model), model);
    std::cout << zne::accumulate(routed.circuit, routed.model).to_json() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-noise extrapolation toolkit"};
    app.require_subcommand(1);

    zne::RunConfig cfg;
    std::string scales_text = "1,1.5,2,2.5";
    std::string fold_text = "noise-aware";
    std::string engine_text = "auto";
    std::string out_path = "results.csv";
    std::string qubits_text;
    bool no_readout = false;
    bool want_matrix = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--circuit", cfg.circuit_spec,
                        "circuit file, or cnot-chain:N, or bv:SECRET")->required();
        cmd->add_option("--noise-model", cfg.noise_model_path, "noise model (.json or .csv)")->required();
        cmd->add_option("--fold", fold_text, "folding method(s): global|left|random|noise-aware|unmitigated");
        cmd->add_option("--scales", scales_text, "comma-separated scale factors (default 1,1.5,2,2.5)");
        cmd->add_option("--gamma", cfg.gamma, "noise-aware threshold coefficient (default 2)");
        cmd->add_option("--shots", cfg.shots, "shots per repetition (default 10000)");
        cmd->add_option("--reps", cfg.repetitions, "repetitions to average (default 5)");
        cmd->add_option("--seed", cfg.seed, "master seed");
        cmd->add_option("--engine", engine_text, "auto|density|traj");
        cmd->add_flag("--no-map", cfg.no_map, "treat the circuit as already mapped to the device");
        cmd->add_flag("--append-folds", cfg.append_folds, "place noise-aware folds at the circuit end");
        cmd->add_flag("--no-readout-error", no_readout, "disable readout confusion");
        cmd->add_flag("--per-rep-fits", cfg.per_rep_fits, "also extrapolate each repetition");
        cmd->add_flag("--dump-matrix", want_matrix, "print the accumulated error-rate matrix as JSON");
        cmd->add_option("--out", out_path, "output CSV path (a .dat twin is written next to it)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "single ZNE experiment");
    add_common(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "qubit-count sweep");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--qubits", qubits_text, "qubit range, e.g. 2..8")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.scales = parse_scales(scales_text);
        cfg.engine = zne::parse_engine(engine_text);
        cfg.readout_error = !no_readout;

        if (app.got_subcommand(run_cmd)) {
            cfg.method = zne::parse_fold_method(fold_text);
            if (want_matrix) dump_matrix(cfg);
            zne::RunResult result = zne::run(cfg);
            std::vector<zne::SweepCell> cells(1);
            cells[0].qubits = result.logical_qubits;
            cells[0].method = cfg.method;
            cells[0].ok = true;
            cells[0].result = std::move(result);
            write_file(out_path, zne::results_to_csv(cfg, cells));
            write_file(dat_path(out_path), zne::results_to_gnuplot(cells));
            std::cerr << "wrote " << out_path << "\n";
        } else {
            std::vector<zne::FoldMethod> methods;
            std::string cur;
            for (char c : fold_text + ",") {
                if (c == ',') {
                    if (!cur.empty()) methods.push_back(zne::parse_fold_method(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            const auto [lo, hi] = parse_range(qubits_text);
            cfg.method = methods.front();
            if (want_matrix) dump_matrix(cfg);
            const auto cells = zne::sweep(cfg, lo, hi, methods);
            write_file(out_path, zne::results_to_csv(cfg, cells));
            write_file(dat_path(out_path), zne::results_to_gnuplot(cells));
            int failed = 0;
            for (const auto& cell : cells) {
                if (!cell.ok) {
                    ++failed;
                    std::cerr << "cell failed (qubits=" << cell.qubits << ", method="
                              << zne::fold_method_name(cell.method) << "): " << cell.error << "\n";
                }
            }
            std::cerr << "wrote " << out_path << " (" << cells.size() - failed << "/" << cells.size()
                      << " cells)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error " << e.what() << "\n";
        return 1;
    }
    return 0;
}
