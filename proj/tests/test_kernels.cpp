#include "doctest.h"

#include <vector>

#include "support/fixtures.hpp"
#include "zne/kernels.hpp"
#include "zne/rng.hpp"
#include "zne/simulator.hpp"

using namespace zne;
using kernels::cplx;

namespace {

std::vector<cplx> random_amps(size_t size, uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(size);
    for (auto& a : amps) a = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return amps;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("serial and parallel statevector kernels agree bitwise") {
    const int n = 14;
    for (uint64_t seed = 0; seed < 4; ++seed) {
        auto serial = random_amps(size_t{1} << n, seed);
        auto parallel = serial;

        const auto u = unitary_1q(GateKind::H, 0.0);
        kernels::apply_1q(serial, static_cast<int>(seed % n), u, false);
        kernels::apply_1q(parallel, static_cast<int>(seed % n), u, true);
        CHECK(bitwise_equal(serial, parallel));

        kernels::apply_cx(serial, 3, 9, false);
        kernels::apply_cx(parallel, 3, 9, true);
        CHECK(bitwise_equal(serial, parallel));

        kernels::apply_swap(serial, 1, 12, false);
        kernels::apply_swap(parallel, 1, 12, true);
        CHECK(bitwise_equal(serial, parallel));
    }
}

TEST_CASE("serial and parallel density kernels agree bitwise") {
    const int n = 6;
    auto serial = random_amps(size_t{1} << (2 * n), 17);
    auto parallel = serial;

    kernels::depolarize_1q(serial, n, 2, 0.01, false);
    kernels::depolarize_1q(parallel, n, 2, 0.01, true);
    CHECK(bitwise_equal(serial, parallel));

    kernels::depolarize_2q(serial, n, 1, 4, 0.02, false);
    kernels::depolarize_2q(parallel, n, 1, 4, 0.02, true);
    CHECK(bitwise_equal(serial, parallel));
}

TEST_CASE("readout confusion is stochastic (columns sum to 1)") {
    std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
    kernels::readout_confuse(probs, 0, 0.03, 0.01, false);
    kernels::readout_confuse(probs, 1, 0.1, 0.2, true);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // true |1> read as 0 with probability p01
    std::vector<double> one{0.0, 1.0};
    kernels::readout_confuse(one, 0, 0.0354, 0.0098, false);
    CHECK(one[0] == doctest::Approx(0.0354));
    CHECK(one[1] == doctest::Approx(0.9646));
}

TEST_CASE("unitary kernels preserve the norm") {
    auto amps = random_amps(1 << 10, 3);
    const double before = kernels::norm_sqr(amps);
    kernels::apply_1q(amps, 4, unitary_1q(GateKind::H, 0.0), true);
    kernels::apply_1q(amps, 7, unitary_1q(GateKind::T, 0.0), true);
    kernels::apply_cx(amps, 0, 9, true);
    kernels::apply_swap(amps, 2, 5, true);
    CHECK(kernels::norm_sqr(amps) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("depolarizing keeps the trace and contracts toward the maximally mixed state") {
    const int n = 3;
    std::vector<cplx> rho(size_t{1} << (2 * n), cplx(0));
    rho[0] = 1.0; // |000><000|
    CHECK(kernels::trace_real(rho, n) == doctest::Approx(1.0));
    kernels::depolarize_1q(rho, n, 0, 0.3, false);
    CHECK(kernels::trace_real(rho, n) == doctest::Approx(1.0).epsilon(1e-12));
    // P(0) on qubit 0 drops from 1 to 1 - 2p/3
    CHECK(rho[0].real() == doctest::Approx(1.0 - 2.0 * 0.3 / 3.0));

    kernels::depolarize_2q(rho, n, 1, 2, 0.5, false);
    CHECK(kernels::trace_real(rho, n) == doctest::Approx(1.0).epsilon(1e-12));
}
