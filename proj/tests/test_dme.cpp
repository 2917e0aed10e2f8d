#include "aqrm/dme.hpp"
#include "aqrm/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aqrm;

namespace {

ModelParams resonant(double g, double r) { return ModelParams{1.0, 1.0, g, r}; }

BathParams bath_at(double tq, double tc) {
    BathParams b;
    b.temp_q = tq;
    b.temp_c = tc;
    return b;
}

PopulationVector solve(const EigenSystem& eig, const BathParams& bath) {
    return steady_state(build_generator(transition_rates(eig, bath), bath));
}

} // namespace

TEST_SUITE("dme") {

TEST_CASE("like-parity channels carry no rate") {
    const EigenSystem eig = converge_truncation(resonant(1.3, 0.4), 20, 1e-10);
    const RateSet rates = transition_rates(eig, BathParams{});
    CHECK(rates.transitions.size() == 190);
    int checked = 0;
    for (const Transition& t : rates.transitions) {
        if (eig.parities[t.lower] != eig.parities[t.upper]) continue;
        CHECK(t.gamma_q == 0.0);
        CHECK(t.gamma_c == 0.0);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("decoupled rates out of the ground state") {
    const EigenSystem eig = diagonalize(resonant(0.0, 0.0), Truncation(20), 4);
    BathParams bath;
    const RateSet rates = transition_rates(eig, bath);
    const double expected = 1e-4 * std::exp(-0.1); // 0.904837418e-4
    CHECK(expected == doctest::Approx(0.904837418e-4).epsilon(1e-9));
    // The two unit-gap levels are degenerate; sums over them are basis independent.
    const double gq = rates.at(0, 1).gamma_q + rates.at(0, 2).gamma_q;
    const double gc = rates.at(0, 1).gamma_c + rates.at(0, 2).gamma_c;
    CHECK(std::abs(gq - expected) < 1e-16);
    CHECK(std::abs(gc - expected) < 1e-16);
    CHECK(rates.at(0, 3).gamma_q == 0.0);
    CHECK(rates.at(0, 3).gamma_c == 0.0);
    CHECK_THROWS_AS(rates.at(2, 1), InvalidArgument);
    CHECK_THROWS_AS(rates.at(0, 4), InvalidArgument);
}

TEST_CASE("zero temperature has no upward rates") {
    const EigenSystem eig = converge_truncation(resonant(0.9, 0.5), 20, 1e-10);
    const BathParams bath = bath_at(0.0, 0.0);
    const Generator w = build_generator(transition_rates(eig, bath), bath);
    for (int j = 0; j < w.levels(); ++j)
        for (int k = 0; k < j; ++k) CHECK(w.rates(j, k) == 0.0);
    CHECK(thermal_gap_product(0.3, 0.0) == 0.0);
    CHECK(thermal_gap_product(0.0, 0.0) == 0.0);
    CHECK(bose_occupation(0.3, 0.0) == 0.0);
}

TEST_CASE("each bath alone satisfies detailed balance") {
    const EigenSystem eig = converge_truncation(resonant(0.8, 0.3), 12, 1e-10);
    for (const bool qubit : {true, false}) {
        BathParams bath = bath_at(0.09, 0.09);
        (qubit ? bath.alpha_c : bath.alpha_q) = 0.0;
        const RateSet rates = transition_rates(eig, bath);
        const Generator w = build_generator(rates, bath);
        for (const Transition& t : rates.transitions) {
            const double down = w.rates(t.lower, t.upper), up = w.rates(t.upper, t.lower);
            if (up == 0.0) continue;
            CHECK(std::abs(std::log(down / up) - t.gap / 0.09) < 1e-9);
        }
    }
}

TEST_CASE("thermal factor is smooth through the small-gap switch") {
    const double t = 0.07;
    CHECK(std::abs(thermal_gap_product(0.0, t) - t) < 1e-17);
    CHECK(std::abs(thermal_gap_product(1e-14, t) - (t - 0.5e-14)) < 1e-17);
    const double below = thermal_gap_product(t * 0.999999e-6, t);
    const double above = thermal_gap_product(t * 1.000001e-6, t);
    CHECK(std::abs(below - above) < 1e-12 * t);
    const double direct = 0.2 / std::expm1(0.2 / t);
    CHECK(thermal_gap_product(0.2, t) == direct);
    CHECK(bose_occupation(0.2, t) == doctest::Approx(1.0 / (std::exp(0.2 / t) - 1.0)).epsilon(1e-14));
}

TEST_CASE("up-rate across an exactly degenerate pair stays finite") {
    Transition t;
    t.lower = 0;
    t.upper = 1;
    t.gap = 0.0;
    t.slope_q = 2e-4;
    RateSet rates{2, {t}};
    const BathParams bath = bath_at(0.07, 0.07);
    const Generator w = build_generator(rates, bath);
    CHECK(w.rates(1, 0) == doctest::Approx(2e-4 * 0.07).epsilon(1e-14));
    CHECK(w.rates(0, 1) == w.rates(1, 0));
}

TEST_CASE("generator columns sum to zero with non-negative off-diagonals") {
    const EigenSystem eig = converge_truncation(resonant(1.5, 0.6), 20, 1e-10);
    const BathParams bath = bath_at(0.12, 0.05);
    const Generator w = build_generator(transition_rates(eig, bath), bath);
    for (int k = 0; k < w.levels(); ++k) {
        double scale = 0.0, sum = 0.0;
        for (int j = 0; j < w.levels(); ++j) {
            if (j != k) CHECK(w.rates(j, k) >= 0.0);
            sum += w.rates(j, k);
            scale = std::max(scale, std::abs(w.rates(j, k)));
        }
        CHECK(std::abs(sum) <= 1e-14 * std::max(scale, 1e-300));
    }
}

TEST_CASE("zero temperature relaxes to the ground state") {
    const EigenSystem eig = converge_truncation(resonant(0.6, 0.3), 20, 1e-10);
    const PopulationVector pop = solve(eig, bath_at(0.0, 0.0));
    CHECK(pop[0] == 1.0);
    for (int k = 1; k < pop.levels(); ++k) CHECK(pop[k] == 0.0);
}

TEST_CASE("equal temperatures give the Gibbs state") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ug(0.0, 2.0), ur(0.0, 1.0), ut(0.02, 0.2);
    for (int trial = 0; trial < 8; ++trial) {
        const ModelParams p = resonant(ug(rng), ur(rng));
        const double t = ut(rng);
        const EigenSystem eig = converge_truncation(p, 20, 1e-10);
        const PopulationVector pop = solve(eig, bath_at(t, t));
        const auto gibbs = oracle::gibbs(eig.energies, t);
        for (int k = 0; k < 20; ++k) CHECK(std::abs(pop[k] - gibbs[k]) < 1e-10);
        CHECK(std::abs(pop.p.sum() - 1.0) < 1e-14);
    }
}

TEST_CASE("cavity bath alone still thermalizes") {
    const EigenSystem eig = converge_truncation(resonant(1.1, 0.5), 20, 1e-10);
    BathParams bath = bath_at(0.1, 0.1);
    bath.alpha_q = 0.0;
    const PopulationVector pop = solve(eig, bath);
    const auto gibbs = oracle::gibbs(eig.energies, 0.1);
    for (int k = 0; k < 20; ++k) CHECK(std::abs(pop[k] - gibbs[k]) < 1e-10);
}

TEST_CASE("disconnected baths are reported as reducible") {
    const EigenSystem eig = converge_truncation(resonant(0.5, 0.5), 8, 1e-10);
    BathParams bath;
    bath.alpha_q = bath.alpha_c = 0.0;
    try {
        solve(eig, bath);
        FAIL("expected ReducibleGeneratorError");
    } catch (const ReducibleGeneratorError& e) {
        CHECK(e.components().size() == 8);
    }
}

TEST_CASE("transient levels receive exactly zero weight") {
    // 0 <-> 1 closed, 2 drains into 1 and is never refilled
    Generator w{Eigen::MatrixXd::Zero(3, 3)};
    w.rates(1, 0) = 0.5;
    w.rates(0, 1) = 2.0;
    w.rates(1, 2) = 1.0;
    for (int k = 0; k < 3; ++k) w.rates(k, k) = -w.rates.col(k).sum();
    const auto classes = closed_classes(w);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0] == std::vector<int>{0, 1});
    const PopulationVector pop = steady_state(w);
    CHECK(pop[2] == 0.0);
    CHECK(pop[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(pop[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("rate-equation steady state equals the Lindblad fixed point") {
    const EigenSystem eig = converge_truncation(resonant(1.2, 0.4), 8, 1e-10);
    const BathParams bath = bath_at(0.15, 0.04);
    const Generator w = build_generator(transition_rates(eig, bath), bath);
    const PopulationVector pop = steady_state(w);

    Eigen::MatrixXd flow = w.rates;
    flow.diagonal().setZero();
    const Eigen::MatrixXcd rho = oracle::lindblad_steady_state(eig.energies, flow);
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(rho(j, j).real() - pop[j]) < 1e-10);
        for (int k = 0; k < 8; ++k)
            if (j != k) CHECK(std::abs(rho(j, k)) < 1e-12);
    }
}

TEST_CASE("unequal temperatures solve the balance equations") {
    const EigenSystem eig = converge_truncation(resonant(1.7, 0.2), 20, 1e-10);
    const BathParams bath = bath_at(0.2, 0.02);
    const Generator w = build_generator(transition_rates(eig, bath), bath);
    const PopulationVector pop = steady_state(w);
    const double scale = w.rates.cwiseAbs().maxCoeff();
    CHECK((w.rates * pop.p).cwiseAbs().maxCoeff() < 1e-12 * scale);
    CHECK(pop.p.minCoeff() >= 0.0);
    // between the two Gibbs states in ground weight
    const double hot = oracle::gibbs(eig.energies, 0.2)[0];
    const double cold = oracle::gibbs(eig.energies, 0.02)[0];
    CHECK(pop[0] >= std::min(hot, cold) - 1e-12);
    CHECK(pop[0] <= std::max(hot, cold) + 1e-12);
}

TEST_CASE("bath validation") {
    CHECK_THROWS_AS(bath_at(-0.1, 0.1).validate(), InvalidArgument);
    BathParams b;
    b.omega_cutoff = 0.0;
    CHECK_THROWS_AS(b.validate(), InvalidArgument);
    b = BathParams{};
    b.alpha_q = -1.0;
    CHECK_THROWS_AS(b.validate(), InvalidArgument);
}

} // TEST_SUITE
