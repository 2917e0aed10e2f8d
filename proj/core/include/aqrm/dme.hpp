// dme.hpp: dressed master equation rates and their steady state
//
// In the dressed basis every jump operator is a dyad |phi_j><phi_k| and H is diagonal, so the
// populations obey a closed Pauli rate equation dP/dt = W P; coherences decay and carry no
// weight at the fixed point.

#pragma once

#include "aqrm/spectrum.hpp"

#include <Eigen/Dense>

#include <vector>

namespace aqrm {

struct BathParams {
    double alpha_q{1e-4};      // qubit-bath coupling
    double alpha_c{1e-4};      // cavity-bath coupling
    double omega_cutoff{10.0}; // Ohmic cutoff
    double temp_q{0.07};       // k_B T of the qubit bath, units of omega0
    double temp_c{0.07};       // k_B T of the cavity bath

    void validate() const;
};

// Channel between levels lower < upper; gap = E_upper - E_lower >= 0.
struct Transition {
    int lower{0};
    int upper{0};
    double gap{0.0};
    double gamma_q{0.0};
    double gamma_c{0.0};
    double slope_q{0.0};  // gamma_q / gap, finite at zero gap
    double slope_c{0.0};  // gamma_c / gap
    double sigma_x{0.0};  // <phi_lower|sigma_x|phi_upper>
    double position{0.0}; // <phi_lower|(a + a^dag)|phi_upper>
};

struct RateSet {
    int levels{0};
    std::vector<Transition> transitions; // every pair lower < upper, lexicographic order

    const Transition& at(int lower, int upper) const;
};

// Gamma_q = alpha_q (gap/D) e^{-gap/wc} |s|^2 and Gamma_c = alpha_c (gap/w0) e^{-gap/wc} |x|^2.
RateSet transition_rates(const EigenSystem& eig, const BathParams& bath, double delta = 1.0, double omega0 = 1.0);

// gap * n(gap) for a Bose occupation at temperature T: finite as gap -> 0, exactly 0 at T = 0.
double thermal_gap_product(double gap, double temperature) noexcept;
// n(gap) = 1 / (exp(gap/T) - 1); 0 at T = 0.
double bose_occupation(double gap, double temperature) noexcept;

// Off-diagonal W(j, k) is the rate from level k into level j; columns sum to zero.
struct Generator {
    Eigen::MatrixXd rates;

    int levels() const noexcept { return static_cast<int>(rates.rows()); }
};

// Rates below this fraction of the largest off-diagonal rate are set to exact zero.
inline constexpr double kRatePruneRelative = 1e-20;

Generator build_generator(const RateSet& rates, const BathParams& bath);

struct PopulationVector {
    Eigen::VectorXd p;

    int levels() const noexcept { return static_cast<int>(p.size()); }
    double operator[](int k) const { return p[k]; }
};

// Levels sharing a closed communicating class of the transition graph. A unique steady state
// requires exactly one; transient levels belong to none.
std::vector<std::vector<int>> closed_classes(const Generator& w);

// Kernel of W normalized to one, via a bordered solve on the single closed class.
// Throws ReducibleGeneratorError when the kernel is degenerate.
PopulationVector steady_state(const Generator& w);

} // namespace aqrm
