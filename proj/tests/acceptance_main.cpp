// Acceptance suite: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "zne/accumulation.hpp"
#include "zne/circuit.hpp"
#include "zne/extrapolation.hpp"
#include "zne/folding.hpp"
#include "zne/mapper.hpp"
#include "zne/noise_model.hpp"
#include "zne/rng.hpp"
#include "zne/runner.hpp"
#include "zne/simulator.hpp"

using namespace zne;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

struct Fixture {
    NoiseModel model;
    Circuit circuit{1};
};

Fixture random_fixture(uint64_t seed, int max_qubits, int max_gates) {
    Rng rng(derive_seed(seed, {77}));
    const int n = 2 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_qubits - 1)));
    const int g = 4 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_gates - 3)));
    Fixture fx{testing::random_connected_model(n, seed * 3 + 1), Circuit(1)};
    fx.circuit = testing::random_conformant_circuit(fx.model, g, seed * 5 + 2, true);
    return fx;
}

// 1. every folding method preserves the noiseless state
Outcome unitary_preservation() {
    Outcome out;
    double min_fidelity = 1.0;
    for (uint64_t i = 0; i < 50; ++i) {
        const Fixture fx = random_fixture(i, 6, 12);
        const auto reference = simulate_exact(fx.circuit);
        for (double lambda : {1.0, 1.5, 2.0, 2.5, 3.0}) {
            const Circuit folded[] = {
                fold_global(fx.circuit, lambda),
                fold_from_left(fx.circuit, lambda),
                fold_random(fx.circuit, lambda, i),
                fold_noise_aware(fx.circuit, lambda, 2.0, fx.model).circuit,
            };
            for (const Circuit& c : folded) {
                const double f = testing::fidelity(reference, simulate_exact(c));
                min_fidelity = std::min(min_fidelity, f);
                if (f < 1.0 - 1e-9) {
                    out.fail("fidelity " + std::to_string(f) + " at lambda " + std::to_string(lambda));
                }
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "min fidelity 1-%.2e", 1.0 - min_fidelity);
    out.detail = out.pass ? buf : out.detail;
    return out;
}

// 2. lambda = 1 returns a gate-identical circuit for all four methods
Outcome lambda_one_identity() {
    Outcome out;
    for (uint64_t i = 0; i < 50; ++i) {
        const Fixture fx = random_fixture(i + 1000, 6, 12);
        if (!(fold_global(fx.circuit, 1.0) == fx.circuit)) out.fail("global changed a circuit");
        if (!(fold_from_left(fx.circuit, 1.0) == fx.circuit)) out.fail("left changed a circuit");
        if (!(fold_random(fx.circuit, 1.0, i) == fx.circuit)) out.fail("random changed a circuit");
        if (!(fold_noise_aware(fx.circuit, 1.0, 2.0, fx.model).circuit == fx.circuit)) {
            out.fail("noise-aware changed a circuit");
        }
    }
    if (out.pass) out.detail = "200 identity checks";
    return out;
}

// 3. d(2n+1)+2s gate count across the lambda grid
Outcome gate_count_law() {
    Outcome out;
    int checks = 0;
    for (int d = 1; d <= 20; ++d) {
        const Circuit c = testing::random_circuit(3, d, static_cast<uint64_t>(d), true, false);
        for (int step = 0; step <= 30; ++step) {
            const double lambda = 1.0 + 0.1 * step;
            const FoldPlan plan = fold_plan(d, lambda);
            const long expect = d * (2 * plan.whole_folds + 1) + 2 * plan.partial_size;
            if (fold_global(c, lambda).depth() != expect ||
                fold_from_left(c, lambda).depth() != expect ||
                fold_random(c, lambda, static_cast<uint64_t>(step)).depth() != expect) {
                out.fail("count mismatch at d=" + std::to_string(d) + " lambda=" + std::to_string(lambda));
            }
            checks += 3;
        }
    }
    if (out.pass) out.detail = std::to_string(checks) + " counts";
    return out;
}

// 4. never-exceed maximality, plus the worked example's exact thresholds
Outcome noise_aware_maximality() {
    Outcome out;
    const double lambdas[] = {1.5, 2.0, 2.5, 3.0, 4.0};
    for (uint64_t i = 0; i < 100; ++i) {
        const Fixture fx = random_fixture(i + 4000, 6, 14);
        const double lambda = lambdas[i % 5];
        const NoiseAwareFold f = fold_noise_aware(fx.circuit, lambda, 2.0, fx.model);
        const double eps = f.threshold.epsilon_max;
        for (const auto& p : f.pairs) {
            if (p.final_rate > eps * (1.0 + 1e-9)) out.fail("threshold exceeded");
            if (p.gate_error > 0.0 && p.final_rate + 2.0 * p.gate_error <= eps * (1.0 - 1e-9)) {
                out.fail("fold budget left unused");
            }
        }
    }
    const auto ex = testing::worked_example();
    const NoiseAwareFold f = fold_noise_aware(ex.mapped, 4.0, 2.0, ex.device);
    const auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    if (!close(f.threshold.epsilon_max, 0.063)) out.fail("threshold is not 0.063");
    if (f.pairs.size() != 2 || !close(f.pairs[0].final_rate, 0.063) ||
        !close(f.pairs[1].final_rate, 0.057)) {
        out.fail("worked-example totals are not 0.063/0.057");
    }
    if (out.pass) out.detail = "100 fixtures + worked example at 0.063/0.057";
    return out;
}

// 5. closed-form OLS, oracle agreement, Richardson exactness
Outcome ols_exactness() {
    Outcome out;
    {
        ExtrapolationInput line;
        for (double l : {1.0, 2.0, 3.0}) line.points.push_back({l, 1.0 - 0.1 * l, 0.0});
        if (std::abs(linear_fit(line).intercept - 1.0) > 1e-10) out.fail("exact line missed");
    }
    Rng rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const size_t m = 2 + rng.next_below(7);
        ExtrapolationInput input;
        std::vector<double> ls, ys;
        for (size_t j = 0; j < m; ++j) {
            const double l = 1.0 + 0.5 * static_cast<double>(j) + rng.next_double() * 0.3;
            const double y = rng.next_double();
            input.points.push_back({l, y, 0.0});
            ls.push_back(l);
            ys.push_back(y);
        }
        const auto fit = linear_fit(input);
        const auto oracle = testing::normal_equations_fit(ls, ys, 1);
        worst = std::max(worst, std::abs(fit.intercept - oracle[0]));
        if (std::abs(fit.intercept - oracle[0]) > 1e-8) out.fail("oracle disagreement");
    }
    for (int trial = 0; trial < 50; ++trial) {
        const size_t m = 2 + rng.next_below(5);
        std::vector<double> coeff(m);
        for (auto& c : coeff) c = rng.next_double() * 2.0 - 1.0;
        ExtrapolationInput input;
        for (size_t j = 0; j < m; ++j) {
            const double l = 1.0 + 0.6 * static_cast<double>(j);
            double y = 0.0;
            for (size_t k = m; k-- > 0;) y = y * l + coeff[k];
            input.points.push_back({l, y, 0.0});
        }
        if (std::abs(richardson(input).intercept - coeff[0]) > 1e-8) {
            out.fail("richardson inexact at m=" + std::to_string(m));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst oracle gap %.1e", worst);
    if (out.pass) out.detail = buf;
    return out;
}

// 6. trajectory estimates track density-matrix probabilities
Outcome engine_agreement() {
    Outcome out;
    const uint64_t shots = 10000;
    double worst_sigma = 0.0;
    for (uint64_t i = 0; i < 20; ++i) {
        Rng rng(derive_seed(i, {6}));
        const int n = 3 + static_cast<int>(rng.next_below(6)); // up to 8 qubits
        const NoiseModel model = testing::random_connected_model(n, i + 600);
        const Circuit circuit = testing::random_conformant_circuit(model, 10, i + 60, true);
        std::vector<int> all(n);
        for (int q = 0; q < n; ++q) all[q] = q;
        const Observable obs = Observable::success(std::string(n, '0'), all);
        const double p = exact_probability(simulate_density_matrix(circuit, model), n, obs);
        const auto est = expectation(simulate_trajectories(circuit, model, shots, i + 6000), obs);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
        const double sigmas = se > 0.0 ? std::abs(est.mean - p) / se : 0.0;
        worst_sigma = std::max(worst_sigma, sigmas);
        if (std::abs(est.mean - p) > 3.0 * se + 1e-12) {
            out.fail("circuit " + std::to_string(i) + " off by " + std::to_string(sigmas) + " sigma");
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst deviation %.2f sigma", worst_sigma);
    if (out.pass) out.detail = buf;
    return out;
}

// 7. desk-scale ZNE efficacy on the chain benchmark
Outcome zne_efficacy() {
    Outcome out;
    const std::vector<uint64_t> seeds{1, 2, 3, 4, 5};
    const NoiseModel uniform = testing::uniform_star_model(9, 1e-2);
    const NoiseModel heterogeneous = testing::heterogeneous_star_model(9);

    int cells = 0;
    int mitigated = 0;
    int monotone_violations = 0;
    int ordering_wins = 0;
    int ordering_cells = 0;

    const auto check_monotone = [&](const RunResult& r) {
        for (size_t i = 1; i < r.per_lambda.size(); ++i) {
            const auto& prev = r.per_lambda[i - 1].averaged;
            const auto& cur = r.per_lambda[i].averaged;
            if (cur.mean > prev.mean + 2.0 * (prev.std_err + cur.std_err)) ++monotone_violations;
        }
    };

    for (int q = 2; q <= 8; ++q) {
        for (uint64_t seed : seeds) {
            RunConfig cfg;
            cfg.circuit_spec = "cnot-chain:" + std::to_string(q);
            cfg.model = uniform;
            cfg.method = FoldMethod::NoiseAware;
            cfg.scales = {1.0, 1.5, 2.0, 2.5};
            cfg.shots = 10000;
            cfg.repetitions = 5;
            cfg.seed = seed;
            const RunResult r = run(cfg);
            ++cells;
            if (std::abs(r.linear->intercept - 1.0) < std::abs(*r.unmitigated - 1.0)) ++mitigated;
            check_monotone(r);

            RunConfig het = cfg;
            het.model = heterogeneous;
            const RunResult na = run(het);
            het.method = FoldMethod::Left;
            const RunResult left = run(het);
            check_monotone(na);
            check_monotone(left);
            ++ordering_cells;
            if (na.linear->intercept >= left.linear->intercept) ++ordering_wins;
        }
    }

    char buf[160];
    std::snprintf(buf, sizeof buf, "(a) %d/%d mitigated, (b) %d monotonicity violations, (c) %d/%d ordering wins",
                  mitigated, cells, monotone_violations, ordering_wins, ordering_cells);
    out.detail = buf;
    if (mitigated * 5 < cells * 4) out.fail("(a) below 80%");
    if (monotone_violations > 0) out.fail("(b) non-monotone series");
    if (ordering_wins * 2 <= ordering_cells) out.fail("(c) no majority");
    return out;
}

// 8. calibration ingestion values and JSON round-trip
Outcome calibration_ingestion() {
    Outcome out;
    const NoiseModel model = load_noise_model(testing::data_path("ibmq_mumbai.csv"));
    const auto close = [](double a, double b) { return std::abs(a - b) < 1e-15; };
    if (!close(model.error(0, 1), 5.62e-3)) out.fail("error(0,1)");
    if (!close(model.error(8, 5), 2.25e-2)) out.fail("error(8,5)");
    if (!close(model.readout(0).p_meas0_prep1, 3.54e-2)) out.fail("readout(0) p01");
    if (!close(model.readout(0).p_meas1_prep0, 9.80e-3)) out.fail("readout(0) p10");
    if (model.edges().size() != 28) out.fail("edge count");
    if (!(parse_noise_model_json(noise_model_to_json(model)) == model)) out.fail("JSON round-trip");
    if (out.pass) out.detail = "all table values and round-trip equality";
    return out;
}

// 9. byte-identical CSV for identical config and seed, any worker count
Outcome reproducibility() {
    Outcome out;
    RunConfig cfg;
    cfg.circuit_spec = "cnot-chain";
    cfg.model = testing::uniform_star_model(9, 1e-2);
    cfg.shots = 2000;
    cfg.repetitions = 3;
    cfg.seed = 314159;
    const std::vector<FoldMethod> methods{FoldMethod::Left, FoldMethod::NoiseAware};

    const std::string first = results_to_csv(cfg, sweep(cfg, 2, 6, methods));
    const std::string second = results_to_csv(cfg, sweep(cfg, 2, 6, methods));
    if (first != second) out.fail("back-to-back runs differ");
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string serial = results_to_csv(cfg, sweep(cfg, 2, 6, methods));
    omp_set_num_threads(4);
    const std::string parallel = results_to_csv(cfg, sweep(cfg, 2, 6, methods));
    omp_set_num_threads(saved);
    if (serial != first) out.fail("single-thread run differs");
    if (parallel != first) out.fail("four-thread run differs");
#endif
    if (out.pass) out.detail = std::to_string(first.size()) + " bytes, stable";
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "unitary preservation", unitary_preservation},
        {2, "lambda=1 identity", lambda_one_identity},
        {3, "gate-count law", gate_count_law},
        {4, "noise-aware maximality", noise_aware_maximality},
        {5, "OLS and Richardson exactness", ols_exactness},
        {6, "engine agreement", engine_agreement},
        {7, "desk-scale ZNE efficacy", zne_efficacy},
        {8, "calibration ingestion", calibration_ingestion},
        {9, "reproducibility", reproducibility},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d %s %s (%.2fs): %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name,
                    secs, out.detail.c_str());
        std::fflush(stdout);
        failures += !out.pass;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
