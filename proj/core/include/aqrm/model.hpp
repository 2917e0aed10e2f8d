// model.hpp: truncated Fock x qubit operator algebra and the anisotropic Rabi Hamiltonian

#pragma once

#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

namespace aqrm {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Hamiltonian parameters, all in units of the cavity frequency.
struct ModelParams {
    double omega0{1.0}; // cavity frequency (energy unit)
    double delta{1.0};  // qubit splitting
    double g{0.0};      // qubit-photon coupling
    double r{0.0};      // anisotropy: counter-rotating / rotating coupling ratio

    void validate() const;
    // r > 1 is accepted but lies beyond the interpolation between JCM (r=0) and QRM (r=1).
    bool beyond_isotropic() const noexcept { return r > 1.0; }
};

class Truncation {
public:
    explicit Truncation(int n_max);

    int n_max() const noexcept { return n_max_; }
    int dim() const noexcept { return 2 * (n_max_ + 1); }

private:
    int n_max_;
};

// Composite basis index i = 2n + s, s = 0 for the qubit ground state and s = 1 for excited.
constexpr int basis_index(int photons, int qubit) noexcept { return 2 * photons + qubit; }
constexpr int photons_of(int index) noexcept { return index / 2; }
constexpr int qubit_of(int index) noexcept { return index % 2; }

struct OperatorSet {
    Truncation truncation;
    SparseMatrix a;
    SparseMatrix a_dag;
    SparseMatrix sigma_plus;
    SparseMatrix sigma_minus;
    SparseMatrix sigma_x;
    SparseMatrix sigma_z; // sigma_z |1> = +|1>, sigma_z |0> = -|0>
    SparseMatrix identity;

    int dim() const noexcept { return truncation.dim(); }
};

OperatorSet build_operators(Truncation truncation);

// H = w0 a^dag a + (D/2) sz + g[(a s+ + a^dag s-) + r (a s- + a^dag s+)]
SparseMatrix build_hamiltonian(const ModelParams& p, const OperatorSet& ops);

enum class Parity : int { even = 1, odd = -1 };

constexpr int parity_value(Parity p) noexcept { return static_cast<int>(p); }
constexpr Parity flipped(Parity p) noexcept { return p == Parity::even ? Parity::odd : Parity::even; }

// Eigenvalue of -sz exp(i pi a^dag a) on the basis state |qubit, photons>.
constexpr Parity basis_parity(int index) noexcept {
    const bool even_photons = photons_of(index) % 2 == 0;
    const bool ground = qubit_of(index) == 0;
    return (even_photons == ground) ? Parity::even : Parity::odd;
}

struct ParityOperator {
    SparseMatrix matrix;              // diagonal, entries +-1
    std::vector<Parity> basis_parities; // one label per composite basis state
};

ParityOperator parity_operator(const OperatorSet& ops);

// Composite indices belonging to one parity sector, ascending. Each sector holds n_max + 1 states.
std::vector<int> parity_block_indices(const Truncation& truncation, Parity parity);

// Number operator a^dag a + (sz + 1)/2, conserved when r = 0.
SparseMatrix excitation_number(const OperatorSet& ops);

} // namespace aqrm
