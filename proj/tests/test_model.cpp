#include "aqrm/error.hpp"
#include "aqrm/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace aqrm;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_SUITE("model") {

TEST_CASE("ladder operator at n_max = 1 has a single photon-sector element") {
    const OperatorSet ops = build_operators(Truncation(1));
    CHECK(ops.dim() == 4);
    CHECK(ops.a.nonZeros() == 2); // one per qubit state
    for (int s = 0; s <= 1; ++s) CHECK(ops.a.coeff(basis_index(0, s), basis_index(1, s)) == 1.0);
}

TEST_CASE("ladder rule <n-1|a|n> = sqrt(n)") {
    const OperatorSet ops = build_operators(Truncation(3));
    CHECK(ops.a.coeff(basis_index(2, 0), basis_index(3, 0)) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
    for (int n = 1; n <= 3; ++n)
        for (int s = 0; s <= 1; ++s)
            CHECK(ops.a.coeff(basis_index(n - 1, s), basis_index(n, s)) == std::sqrt(static_cast<double>(n)));
    CHECK(ops.a.nonZeros() == 6);
}

TEST_CASE("number operator holds photon counts twice each") {
    const OperatorSet ops = build_operators(Truncation(5));
    CHECK(ops.dim() == 12);
    const Eigen::MatrixXd number = dense(ops.a_dag * ops.a);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(number(i, i) - i / 2) < 1e-14);
    CHECK(max_abs(number - Eigen::MatrixXd(number.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("operator set identities") {
    const OperatorSet ops = build_operators(Truncation(7));
    CHECK(max_abs(dense(ops.a_dag) - dense(ops.a).transpose()) == 0.0);
    CHECK(max_abs(dense(ops.sigma_x) - dense(ops.sigma_plus) - dense(ops.sigma_minus)) == 0.0);
    CHECK(ops.sigma_z.coeff(basis_index(0, 1), basis_index(0, 1)) == 1.0);
    CHECK(ops.sigma_z.coeff(basis_index(0, 0), basis_index(0, 0)) == -1.0);
    CHECK(ops.sigma_plus.coeff(basis_index(4, 1), basis_index(4, 0)) == 1.0);
    CHECK(max_abs(dense(ops.identity) - Eigen::MatrixXd::Identity(16, 16)) == 0.0);
}

TEST_CASE("truncation rejects n_max < 1") {
    CHECK_THROWS_AS(Truncation(0), InvalidArgument);
    CHECK_THROWS_AS(Truncation(-3), InvalidArgument);
    CHECK(Truncation(1).dim() == 4);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(ModelParams{1.0, 1.0, 0.0, 0.0}.validate());
    CHECK_THROWS_AS((ModelParams{1.0, 0.0, 0.5, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ModelParams{0.0, 1.0, 0.5, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ModelParams{1.0, 1.0, -0.1, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ModelParams{1.0, 1.0, 0.1, -0.5}.validate()), InvalidArgument);
    CHECK((ModelParams{1.0, 1.0, 0.1, 1.5}.beyond_isotropic()));
    CHECK_NOTHROW(ModelParams{1.0, 1.0, 0.1, 1.5}.validate());
}

TEST_CASE("decoupled Hamiltonian is diagonal with n +- 1/2") {
    const OperatorSet ops = build_operators(Truncation(6));
    const Eigen::MatrixXd h = dense(build_hamiltonian({1.0, 1.0, 0.0, 0.4}, ops));
    for (int n = 0; n <= 6; ++n) {
        CHECK(std::abs(h(basis_index(n, 0), basis_index(n, 0)) - (n - 0.5)) < 1e-14);
        CHECK(std::abs(h(basis_index(n, 1), basis_index(n, 1)) - (n + 0.5)) < 1e-14);
    }
    CHECK(max_abs(h - Eigen::MatrixXd(h.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("r = 1 reduces to the isotropic Rabi form") {
    const OperatorSet ops = build_operators(Truncation(10));
    const double g = 0.73;
    const Eigen::MatrixXd h = dense(build_hamiltonian({1.0, 1.0, g, 1.0}, ops));
    const Eigen::MatrixXd qrm = dense(ops.a_dag * ops.a) + 0.5 * dense(ops.sigma_z) +
                                g * dense(ops.sigma_x) * dense(ops.a + ops.a_dag);
    CHECK(max_abs(h - qrm) < 1e-15);
}

TEST_CASE("rotating and counter-rotating matrix elements") {
    const OperatorSet ops = build_operators(Truncation(4));
    const double g = 0.37, r = 0.61;
    const SparseMatrix h = build_hamiltonian({1.0, 1.0, g, r}, ops);
    CHECK(h.coeff(basis_index(0, 1), basis_index(1, 0)) == g);
    CHECK(h.coeff(basis_index(1, 1), basis_index(0, 0)) == g * r);
}

TEST_CASE("Hamiltonian agrees with an independent Kronecker-product construction") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double delta = 0.2 + u(rng), g = u(rng), r = 0.5 * u(rng);
        const OperatorSet ops = build_operators(Truncation(12));
        const Eigen::MatrixXd h = dense(build_hamiltonian({1.0, delta, g, r}, ops));
        CHECK(max_abs(h - oracle::kron_hamiltonian(1.0, delta, g, r, 12)) < 1e-14);
    }
}

TEST_CASE("Hamiltonian is exactly symmetric and commutes exactly with parity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const OperatorSet ops = build_operators(Truncation(20));
    const ParityOperator parity = parity_operator(ops);
    for (int trial = 0; trial < 10; ++trial) {
        const ModelParams p{1.0, 0.1 + u(rng), u(rng), u(rng) / 2.0};
        const SparseMatrix h = build_hamiltonian(p, ops);
        const Eigen::MatrixXd hd = dense(h);
        CHECK((hd - hd.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const SparseMatrix comm = h * parity.matrix - parity.matrix * h;
        CHECK(max_abs(dense(comm)) == 0.0);
    }
}

TEST_CASE("parity labels of basis states") {
    const OperatorSet ops = build_operators(Truncation(20));
    const ParityOperator parity = parity_operator(ops);
    CHECK(parity.basis_parities[basis_index(0, 0)] == Parity::even);
    CHECK(parity.basis_parities[basis_index(0, 1)] == Parity::odd);
    CHECK(parity.basis_parities[basis_index(1, 0)] == Parity::odd);
    CHECK(parity.basis_parities[basis_index(1, 1)] == Parity::even);
    CHECK(max_abs(dense(parity.matrix * parity.matrix) - Eigen::MatrixXd::Identity(ops.dim(), ops.dim())) == 0.0);
    for (int i = 0; i < ops.dim(); ++i)
        CHECK(parity.matrix.coeff(i, i) == static_cast<double>(parity_value(parity.basis_parities[i])));
}

TEST_CASE("parity sectors split the basis evenly") {
    const Truncation t(9);
    const auto even = parity_block_indices(t, Parity::even);
    const auto odd = parity_block_indices(t, Parity::odd);
    CHECK(even.size() == 10);
    CHECK(odd.size() == 10);
    for (int i : even) CHECK(basis_parity(i) == Parity::even);
    for (int i : odd) CHECK(basis_parity(i) == Parity::odd);
}

TEST_CASE("r = 0 conserves the excitation number") {
    const OperatorSet ops = build_operators(Truncation(25));
    const SparseMatrix n = excitation_number(ops);
    for (double g : {0.2, 1.0, 2.5}) {
        const SparseMatrix h = build_hamiltonian({1.0, 0.8, g, 0.0}, ops);
        const SparseMatrix comm = h * n - n * h;
        CHECK(max_abs(dense(comm)) < 1e-12);
    }
    const SparseMatrix h = build_hamiltonian({1.0, 0.8, 0.5, 0.3}, ops);
    CHECK(max_abs(dense(SparseMatrix(h * n - n * h))) > 0.1);
}

} // TEST_SUITE
