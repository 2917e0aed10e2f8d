// spectrum.hpp: parity-resolved diagonalization and level-crossing search

#pragma once

#include "aqrm/model.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace aqrm {

// Lowest dressed levels of H on a fixed truncation, merged across both parity sectors.
struct EigenSystem {
    std::vector<double> energies;  // ascending
    Eigen::MatrixXd states;        // columns are eigenvectors in the composite basis
    std::vector<Parity> parities;  // one per level
    int n_max_used{0};

    int levels() const noexcept { return static_cast<int>(energies.size()); }
    int dim() const noexcept { return static_cast<int>(states.rows()); }
    double gap(int upper, int lower) const { return energies[upper] - energies[lower]; }
};

struct SolverSettings {
    int levels{20};           // K, dressed levels retained downstream
    double tol_e{1e-10};      // convergence tolerance on each of the K energies
    int n_max_cap{400};
    int growth_step{25};
    double degeneracy_floor{1e-9};
};

// Energies closer than this are treated as tied when merging the two sectors; even parity wins.
inline constexpr double kMergeTieTolerance = 1e-12;

// Start of the truncation growth schedule: max(4K, 50).
int initial_n_max(int levels) noexcept;

EigenSystem diagonalize(const ModelParams& p, Truncation truncation, int levels);

// Grows n_max from initial_n_max(K) by settings.growth_step until each of the K lowest
// energies moves by less than tol_e; returns the system at the smaller of the last two n_max.
// Throws ConvergenceError once n_max + growth_step would exceed the cap.
EigenSystem converge_truncation(const ModelParams& p, int levels, double tol_e,
                                int n_max_cap = 400, int growth_step = 25);
EigenSystem converge_truncation(const ModelParams& p, const SolverSettings& settings);

struct GroundState {
    Parity parity{Parity::even};
    bool degenerate{false}; // |E1 - E0| below the degeneracy floor
    double gap10{std::numeric_limits<double>::quiet_NaN()};
};

GroundState ground_parity(const EigenSystem& eig, double degeneracy_floor = 1e-9);
GroundState ground_parity(const ModelParams& p, const SolverSettings& settings);

struct Crossing {
    int index{0};   // n in g_c^(n), counted from 1
    double g{0.0};
    Parity before{Parity::even};
    Parity after{Parity::odd};
};

using CrossingList = std::vector<Crossing>;

struct CrossingSearch {
    double g_lo{0.0};
    double g_hi{2.0};
    double scan_step{0.01};
    double bisect_tol{1e-6};
    int workers{1};

    void validate() const;
};

// Scans the ground-state parity over [g_lo, g_hi] and bisects every flip.
// Convergence failures propagate as ConvergenceError naming the offending g.
CrossingList find_crossings(const ModelParams& base, const CrossingSearch& search,
                            const SolverSettings& settings = {});

// Closed-form first crossing sqrt(w0 D / (1 - r^2)); +infinity for r >= 1.
double first_critical_coupling(const ModelParams& p) noexcept;

// Dressed-basis matrix <phi_j| op |phi_k> over the retained levels.
Eigen::MatrixXd dressed_matrix(const EigenSystem& eig, const SparseMatrix& op);
// <phi_j|(a + a^dag)|phi_k>
Eigen::MatrixXd position_elements(const EigenSystem& eig);
// <phi_j|sigma_x|phi_k>
Eigen::MatrixXd sigma_x_elements(const EigenSystem& eig);

} // namespace aqrm
