// correlations.hpp: dressed detection operators and steady-state photon statistics
//
// X+ = -i sum_{j<k} (E_k - E_j) <phi_j|(a + a^dag)|phi_k> |phi_j><phi_k| replaces the bare
// annihilation operator for the output field. Every statistic below depends on |X_jk|^2 or on
// products along two-step paths, so the eigenvector sign gauge drops out.

#pragma once

#include "aqrm/dme.hpp"
#include "aqrm/model.hpp"
#include "aqrm/spectrum.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace aqrm {

// One-photon flux below this is treated as zero and the ratio left undefined.
inline constexpr double kFluxUnderflow = 1e-300;
// Outputs flag points whose lowest gap is below this as sitting on a crossing.
inline constexpr double kNearDegenerateGap = 1e-6;

struct XOperator {
    // amplitude(j, k) = (E_k - E_j) x_jk for j < k, zero elsewhere; X+ = -i * amplitude.
    Eigen::MatrixXd amplitude;
    Eigen::MatrixXd position; // x_jk = <phi_j|(a + a^dag)|phi_k>
    std::vector<double> energies;

    int levels() const noexcept { return static_cast<int>(amplitude.rows()); }
    std::complex<double> plus(int j, int k) const { return {0.0, -amplitude(j, k)}; }
    Eigen::MatrixXcd plus_matrix() const { return std::complex<double>(0.0, -1.0) * amplitude.cast<std::complex<double>>(); }
    Eigen::MatrixXcd minus_matrix() const { return plus_matrix().adjoint(); }
};

XOperator x_plus(const EigenSystem& eig);

struct G2Result {
    std::optional<double> g2_dressed;  // <X-X-X+X+> / <X-X+>^2
    std::optional<double> g2_standard; // <a^dag a^dag a a> / <a^dag a>^2
    std::optional<double> g2_approx4;  // four-level low-temperature form
    std::optional<double> g2_crossing; // near-degenerate form with P1 = 1/2
    double one_photon{0.0};            // <X-X+>, output flux per unit detector loss rate
    double two_photon{0.0};            // <X-X-X+X+>
    double gap10{0.0};
    bool degenerate_flag{false};       // gap10 < kNearDegenerateGap
};

// Fills one_photon, two_photon and g2_dressed for the population-diagonal steady state.
G2Result g2_zero(const XOperator& x, const PopulationVector& pop);

std::optional<double> g2_approx_four_level(const EigenSystem& eig, const PopulationVector& pop);
std::optional<double> g2_near_crossing(const EigenSystem& eig, const PopulationVector& pop);
// Bare a projected onto the retained dressed levels.
std::optional<double> g2_standard(const EigenSystem& eig, const PopulationVector& pop, const OperatorSet& ops);

// All fields of G2Result for one steady state.
G2Result evaluate_correlations(const EigenSystem& eig, const PopulationVector& pop);

enum class PhotonStatistics { bunching, antibunching, poissonian, undefined };

// Pure threshold at 1 on the dressed correlation.
PhotonStatistics classify(const std::optional<double>& g2) noexcept;
std::string_view to_string(PhotonStatistics s) noexcept;

} // namespace aqrm
