#include "aqrm/correlations.hpp"

#include "aqrm/error.hpp"

#include <string>

namespace aqrm {

namespace {

std::optional<double> ratio(double numerator, double denominator) {
    if (!(denominator >= kFluxUnderflow)) return std::nullopt;
    return numerator / denominator;
}

void require_levels(const EigenSystem& eig, const PopulationVector& pop, int minimum) {
    if (eig.levels() < minimum) {
        throw InvalidArgument("need at least " + std::to_string(minimum) + " dressed levels, have " +
                              std::to_string(eig.levels()));
    }
    if (pop.levels() != eig.levels()) throw InvalidArgument("population vector does not match the eigen system");
}

// Squared transition weight D_kj^2 |X_jk|^2 for j < k.
struct PathWeights {
    explicit PathWeights(const EigenSystem& eig) : x(position_elements(eig)), eig(eig) {}

    double operator()(int j, int k) const {
        const double d = eig.gap(k, j);
        return d * d * x(j, k) * x(j, k);
    }

    Eigen::MatrixXd x;
    const EigenSystem& eig;
};

} // namespace

XOperator x_plus(const EigenSystem& eig) {
    XOperator out;
    out.position = position_elements(eig);
    out.energies = eig.energies;
    const int n = eig.levels();
    out.amplitude = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) out.amplitude(j, k) = eig.gap(k, j) * out.position(j, k);
    return out;
}

G2Result g2_zero(const XOperator& x, const PopulationVector& pop) {
    const int n = x.levels();
    if (pop.levels() != n) throw InvalidArgument("population vector does not match the detection operator");

    // <X-X+> = sum_k P_k |X+ phi_k|^2 ; <X-X-X+X+> = sum_l P_l |X+X+ phi_l|^2
    const Eigen::MatrixXd two_step = x.amplitude * x.amplitude;
    G2Result out;
    for (int k = 0; k < n; ++k) {
        out.one_photon += pop[k] * x.amplitude.col(k).squaredNorm();
        out.two_photon += pop[k] * two_step.col(k).squaredNorm();
    }
    out.g2_dressed = ratio(out.two_photon, out.one_photon * out.one_photon);
    if (n >= 2) {
        out.gap10 = x.energies[1] - x.energies[0];
        out.degenerate_flag = out.gap10 < kNearDegenerateGap;
    }
    return out;
}

std::optional<double> g2_approx_four_level(const EigenSystem& eig, const PopulationVector& pop) {
    require_levels(eig, pop, 4);
    const PathWeights w(eig);
    const double numerator = w(0, 1) * w(1, 2) * pop[2] + ((w(0, 2) + w(1, 2)) * w(2, 3) + w(0, 1) * w(1, 3)) * pop[3];
    const double denominator = w(0, 1) * w(0, 1) * pop[1] * pop[1];
    return ratio(numerator, denominator);
}

std::optional<double> g2_near_crossing(const EigenSystem& eig, const PopulationVector& pop) {
    require_levels(eig, pop, 4);
    const PathWeights w(eig);
    const double numerator = 4.0 * (w(0, 2) + w(1, 2)) * w(2, 3) * pop[3];
    const double denominator = w(0, 1) * w(0, 1);
    return ratio(numerator, denominator);
}

std::optional<double> g2_standard(const EigenSystem& eig, const PopulationVector& pop, const OperatorSet& ops) {
    if (pop.levels() != eig.levels()) throw InvalidArgument("population vector does not match the eigen system");
    if (ops.dim() != eig.dim()) throw InvalidArgument("operator set does not match the eigen system truncation");

    const Eigen::MatrixXd a = dressed_matrix(eig, ops.a);
    const Eigen::MatrixXd aa = a * a;
    double number = 0.0, pairs = 0.0;
    for (int k = 0; k < eig.levels(); ++k) {
        number += pop[k] * a.col(k).squaredNorm();
        pairs += pop[k] * aa.col(k).squaredNorm();
    }
    return ratio(pairs, number * number);
}

G2Result evaluate_correlations(const EigenSystem& eig, const PopulationVector& pop) {
    G2Result out = g2_zero(x_plus(eig), pop);
    if (eig.levels() >= 4) {
        out.g2_approx4 = g2_approx_four_level(eig, pop);
        out.g2_crossing = g2_near_crossing(eig, pop);
    }
    out.g2_standard = g2_standard(eig, pop, build_operators(Truncation(eig.n_max_used)));
    return out;
}

PhotonStatistics classify(const std::optional<double>& g2) noexcept {
    if (!g2) return PhotonStatistics::undefined;
    if (*g2 > 1.0) return PhotonStatistics::bunching;
    if (*g2 < 1.0) return PhotonStatistics::antibunching;
    return PhotonStatistics::poissonian;
}

std::string_view to_string(PhotonStatistics s) noexcept {
    switch (s) {
    case PhotonStatistics::bunching: return "bunching";
    case PhotonStatistics::antibunching: return "antibunching";
    case PhotonStatistics::poissonian: return "poissonian";
    case PhotonStatistics::undefined: break;
    }
    return "";
}

} // namespace aqrm
