#include "doctest.h"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "zne/circuit.hpp"
#include "zne/noise_model.hpp"
#include "zne/simulator.hpp"

using namespace zne;

TEST_CASE("exact simulation of fixed circuits") {
    SUBCASE("x gate") {
        Circuit c(1);
        c.x(0);
        const auto amps = simulate_exact(c);
        CHECK(std::abs(amps[1] - cplx(1.0)) < 1e-15);
    }
    SUBCASE("cnot chain lands on all ones") {
        const auto amps = simulate_exact(cnot_chain(3));
        CHECK(std::abs(amps[7] - cplx(1.0)) < 1e-15);
    }
}

TEST_CASE("exact simulation matches the dense matrix-product oracle") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        const Circuit c = testing::random_circuit(4, 10, seed + 40);
        const auto fast = simulate_exact(c);
        const auto slow = testing::dense_statevector(c);
        for (size_t i = 0; i < fast.size(); ++i) {
            CHECK(std::abs(fast[i] - slow[i]) < 1e-12);
        }
    }
}

TEST_CASE("density engine with a zero-error model reproduces the exact distribution") {
    for (uint64_t seed = 100; seed < 110; ++seed) {
        const Circuit c = testing::random_circuit(4, 12, seed, true);
        const NoiseModel clean(4);
        const auto noisy = simulate_density_matrix(c, clean);
        const auto exact = probabilities(simulate_exact(c));
        for (size_t i = 0; i < exact.size(); ++i) {
            CHECK(noisy[i] == doctest::Approx(exact[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("single depolarized cx matches the 15-Pauli enumeration oracle") {
    for (double p : {0.0, 0.01, 0.1, 0.5}) {
        NoiseModel model(2);
        model.set_two_qubit_error(0, 1, p);
        Circuit c(2);
        c.cx(0, 1);
        c.measure_all();
        const auto probs = simulate_density_matrix(c, model);
        CHECK(probs[0] == doctest::Approx(testing::depolarized_cx_00_success(p)).epsilon(1e-12));
        CHECK(probs[0] == doctest::Approx(1.0 - 12.0 * p / 15.0).epsilon(1e-12));
    }
}

TEST_CASE("readout-only noise flips the lone excited qubit") {
    NoiseModel model(1);
    model.set_readout(0, {0.0354, 0.0098});
    Circuit c(1);
    c.x(0);
    c.measure_all();
    const auto probs = simulate_density_matrix(c, model);
    CHECK(probs[1] == doctest::Approx(0.9646).epsilon(1e-12));
    const auto no_readout = simulate_density_matrix(c, model, false);
    CHECK(no_readout[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swap noise costs three cx channels") {
    NoiseModel model(2);
    model.set_two_qubit_error(0, 1, 0.02);
    Circuit one_swap(2);
    one_swap.x(0).swap(0, 1);
    Circuit three_cx_noise(2);
    // same unitary content realized with cx gates: swap = cx cx cx
    three_cx_noise.x(0).cx(0, 1).cx(1, 0).cx(0, 1);
    const auto a = simulate_density_matrix(one_swap, model);
    const auto b = simulate_density_matrix(three_cx_noise, model);
    // distributions agree because each path applies the pair channel 3 times
    // around the same permutation (channel and permutation commute here)
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
}

TEST_CASE("trajectories: zero-error chain is exact and seeds are reproducible") {
    const NoiseModel clean(4);
    const Circuit c = cnot_chain(4);
    const Counts counts = simulate_trajectories(c, clean, 500, 9);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at("1111") == 500);

    const NoiseModel noisy = [&] {
        NoiseModel m(4);
        for (int q = 0; q + 1 < 4; ++q) m.set_two_qubit_error(q, q + 1, 0.05);
        m.set_one_qubit_error(0, 0.01);
        m.set_readout(1, {0.02, 0.01});
        return m;
    }();
    const Counts c1 = simulate_trajectories(c, noisy, 2000, 1234);
    const Counts c2 = simulate_trajectories(c, noisy, 2000, 1234);
    CHECK(c1 == c2);
    const Counts c3 = simulate_trajectories(c, noisy, 2000, 1235);
    CHECK(c1 != c3);
}

#ifdef _OPENMP
TEST_CASE("trajectory counts do not depend on the worker count") {
    NoiseModel noisy(3);
    noisy.set_two_qubit_error(0, 1, 0.05);
    noisy.set_two_qubit_error(1, 2, 0.02);
    const Circuit c = cnot_chain(3);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const Counts one = simulate_trajectories(c, noisy, 3000, 77);
    omp_set_num_threads(4);
    const Counts four = simulate_trajectories(c, noisy, 3000, 77);
    omp_set_num_threads(saved);
    CHECK(one == four);
}
#endif

TEST_CASE("trajectories converge to the density distribution") {
    // 6-qubit noisy circuit, 1e5 shots, total variation below 0.01
    NoiseModel model(6);
    for (int q = 0; q + 1 < 6; ++q) model.set_two_qubit_error(q, q + 1, 0.02);
    for (int q = 0; q < 6; ++q) model.set_one_qubit_error(q, 5e-4);
    const Circuit c = cnot_chain(6);
    const auto probs = simulate_density_matrix(c, model);
    const Counts counts = simulate_trajectories(c, model, 100000, 4242);
    CHECK(testing::tvd(probs, counts, 6) < 0.01);
}

TEST_CASE("expectation arithmetic") {
    SUBCASE("fraction and standard error") {
        Counts counts{{"111", 900}, {"011", 100}};
        const auto est = expectation(counts, Observable::success("111", {0, 1, 2}));
        CHECK(est.mean == doctest::Approx(0.9));
        CHECK(est.std_err == doctest::Approx(0.009486832980505138));
        CHECK(est.shots == 1000);
        CHECK_FALSE(est.degenerate);
    }
    SUBCASE("bv noiseless counts give certainty") {
        const Circuit c = bernstein_vazirani("101");
        const Counts counts = simulate_trajectories(c, NoiseModel(4), 256, 5);
        const auto est = expectation(counts, Observable::success("101", {0, 1, 2}));
        CHECK(est.mean == 1.0);
    }
    SUBCASE("zero successes are degenerate") {
        Counts counts{{"00", 50}};
        const auto est = expectation(counts, Observable::success("11", {0, 1}));
        CHECK(est.mean == 0.0);
        CHECK(est.std_err == 0.0);
        CHECK(est.degenerate);
    }
    SUBCASE("width mismatch throws") {
        Counts counts{{"00", 50}};
        CHECK_THROWS_AS(expectation(counts, Observable::success("111", {0, 1, 2})),
                        std::invalid_argument);
        CHECK_THROWS_AS(expectation(Counts{}, Observable::success("0", {0})), std::invalid_argument);
    }
    SUBCASE("z parity") {
        Counts counts{{"00", 40}, {"11", 40}, {"01", 20}};
        const auto est = expectation(counts, Observable::z_parity({0, 1}));
        CHECK(est.mean == doctest::Approx(0.8));
    }
}

TEST_CASE("engine agreement at three standard errors") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const NoiseModel model = testing::random_connected_model(6, seed + 900);
        const Circuit c = testing::random_conformant_circuit(model, 10, seed + 300, true);
        const auto probs = simulate_density_matrix(c, model);
        const Observable obs = Observable::success("000000", {0, 1, 2, 3, 4, 5});
        const double p = exact_probability(probs, 6, obs);
        const uint64_t shots = 10000;
        const auto est = expectation(simulate_trajectories(c, model, shots, seed + 7), obs);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
        CHECK(std::abs(est.mean - p) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("counts serialize to a JSON histogram") {
    Counts counts{{"01", 3}, {"11", 9}};
    CHECK(counts_to_json(counts) == R"({"01": 3, "11": 9})");
}

TEST_CASE("width limits are enforced") {
    CHECK_THROWS_AS(simulate_density_matrix(Circuit(11), NoiseModel(11)), std::invalid_argument);
    CHECK_THROWS_AS(simulate_trajectories(Circuit(21), NoiseModel(21), 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_trajectories(Circuit(2), NoiseModel(2), 0, 1), std::invalid_argument);
}
