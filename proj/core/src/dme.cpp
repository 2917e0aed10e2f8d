#include "aqrm/dme.hpp"

#include "aqrm/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace aqrm {

void BathParams::validate() const {
    if (!(alpha_q >= 0.0) || !(alpha_c >= 0.0)) throw InvalidArgument("bath couplings must be non-negative");
    if (!(omega_cutoff > 0.0)) throw InvalidArgument("bath cutoff must be positive");
    if (!(temp_q >= 0.0) || !(temp_c >= 0.0)) throw InvalidArgument("bath temperatures must be non-negative");
}

const Transition& RateSet::at(int lower, int upper) const {
    if (lower < 0 || upper >= levels || lower >= upper) {
        throw InvalidArgument("transition index out of range: (" + std::to_string(lower) + ", " +
                              std::to_string(upper) + ")");
    }
    // row-major over lower < upper
    const int offset = lower * levels - lower * (lower + 1) / 2 + (upper - lower - 1);
    return transitions[offset];
}

RateSet transition_rates(const EigenSystem& eig, const BathParams& bath, double delta, double omega0) {
    bath.validate();
    const int levels = eig.levels();
    if (levels < 2) throw InvalidArgument("transition rates need at least two levels");

    const Eigen::MatrixXd sx = sigma_x_elements(eig);
    const Eigen::MatrixXd x = position_elements(eig);

    RateSet out;
    out.levels = levels;
    out.transitions.reserve(static_cast<std::size_t>(levels * (levels - 1) / 2));
    for (int j = 0; j < levels; ++j) {
        for (int k = j + 1; k < levels; ++k) {
            Transition t;
            t.lower = j;
            t.upper = k;
            t.gap = std::max(eig.gap(k, j), 0.0);
            t.sigma_x = sx(j, k);
            t.position = x(j, k);
            const double cutoff = std::exp(-t.gap / bath.omega_cutoff);
            t.slope_q = bath.alpha_q / delta * cutoff * t.sigma_x * t.sigma_x;
            t.slope_c = bath.alpha_c / omega0 * cutoff * t.position * t.position;
            t.gamma_q = t.slope_q * t.gap;
            t.gamma_c = t.slope_c * t.gap;
            out.transitions.push_back(t);
        }
    }
    return out;
}

double thermal_gap_product(double gap, double temperature) noexcept {
    if (temperature <= 0.0) return 0.0;
    const double x = gap / temperature;
    if (x < 1e-6) return temperature - 0.5 * gap + gap * gap / (12.0 * temperature);
    return gap / std::expm1(x);
}

double bose_occupation(double gap, double temperature) noexcept {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(gap / temperature);
}

Generator build_generator(const RateSet& rates, const BathParams& bath) {
    bath.validate();
    const int levels = rates.levels;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(levels, levels);

    for (const Transition& t : rates.transitions) {
        // Gamma_u n_u is evaluated as slope_u * (gap n_u) so that it stays finite as gap -> 0.
        const double up = t.slope_q * thermal_gap_product(t.gap, bath.temp_q) +
                          t.slope_c * thermal_gap_product(t.gap, bath.temp_c);
        const double down = t.gamma_q + t.gamma_c + up;
        w(t.lower, t.upper) += down;
        w(t.upper, t.lower) += up;
    }

    double largest = 0.0;
    for (int j = 0; j < levels; ++j)
        for (int k = 0; k < levels; ++k)
            if (j != k) largest = std::max(largest, w(j, k));
    const double floor = largest * kRatePruneRelative;
    for (int j = 0; j < levels; ++j)
        for (int k = 0; k < levels; ++k)
            if (j != k && w(j, k) < floor) w(j, k) = 0.0;

    for (int k = 0; k < levels; ++k) {
        double out_flow = 0.0;
        for (int j = 0; j < levels; ++j)
            if (j != k) out_flow += w(j, k);
        w(k, k) = -out_flow;
    }
    return Generator{std::move(w)};
}

std::vector<std::vector<int>> closed_classes(const Generator& w) {
    const int n = w.levels();
    // reach(i, j): level j reachable from level i along nonzero rates
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int start = 0; start < n; ++start) {
        std::vector<int> stack{start};
        reach[start][start] = 1;
        while (!stack.empty()) {
            const int k = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j != k && w.rates(j, k) > 0.0 && !reach[start][j]) {
                    reach[start][j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }

    std::vector<std::vector<int>> classes;
    std::vector<char> assigned(n, 0);
    for (int i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<int> component;
        bool closed = true;
        for (int j = 0; j < n; ++j) {
            if (!reach[i][j]) continue;
            if (reach[j][i]) component.push_back(j);
            else closed = false;
        }
        for (int j : component) assigned[j] = 1;
        if (closed) classes.push_back(std::move(component));
    }
    return classes;
}

PopulationVector steady_state(const Generator& w) {
    const int n = w.levels();
    if (n < 1) throw InvalidArgument("empty generator");

    const auto classes = closed_classes(w);
    if (classes.size() != 1) {
        std::ostringstream os;
        os << "generator is reducible: " << classes.size() << " closed classes {";
        for (std::size_t c = 0; c < classes.size(); ++c) {
            os << (c ? "} {" : "");
            for (std::size_t i = 0; i < classes[c].size(); ++i) os << (i ? "," : "") << classes[c][i];
        }
        os << "}";
        throw ReducibleGeneratorError(os.str(), classes);
    }

    // Transient levels carry no stationary weight; solve W P = 0 on the closed class with the
    // first balance row replaced by the normalization row.
    const std::vector<int>& members = classes.front();
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd bordered(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) bordered(a, b) = w.rates(members[a], members[b]);
    bordered.row(0).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs[0] = 1.0;

    const Eigen::VectorXd sub = bordered.fullPivLu().solve(rhs);

    PopulationVector out{Eigen::VectorXd::Zero(n)};
    for (Eigen::Index a = 0; a < m; ++a) out.p[members[a]] = std::max(sub[a], 0.0);
    out.p /= out.p.sum();
    return out;
}

} // namespace aqrm
