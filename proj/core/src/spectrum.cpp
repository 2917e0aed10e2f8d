#include "aqrm/spectrum.hpp"

#include "aqrm/error.hpp"
#include "aqrm/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace aqrm {

namespace {

struct BlockSpectrum {
    Parity parity;
    std::vector<int> indices;
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

BlockSpectrum solve_block(const SparseMatrix& h, const Truncation& truncation, Parity parity) {
    BlockSpectrum block{parity, parity_block_indices(truncation, parity), {}, {}};

    // H is parity diagonal, so gathering rows/columns of one sector is exact.
    std::vector<int> local(truncation.dim(), -1);
    for (int i = 0; i < static_cast<int>(block.indices.size()); ++i) local[block.indices[i]] = i;

    const auto size = static_cast<Eigen::Index>(block.indices.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(size, size);
    for (int col = 0; col < h.outerSize(); ++col) {
        if (local[col] < 0) continue;
        for (SparseMatrix::InnerIterator it(h, col); it; ++it) {
            const int row = local[it.row()];
            if (row >= 0) dense(row, local[col]) = it.value();
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverError(std::string("symmetric eigensolver failed in the ") +
                               (parity == Parity::even ? "even" : "odd") + " parity sector");
    }
    block.values = solver.eigenvalues();
    block.vectors = solver.eigenvectors();
    return block;
}

std::string format_params(const ModelParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(delta=" << p.delta << ", g=" << p.g << ", r=" << p.r << ")";
    return os.str();
}

} // namespace

int initial_n_max(int levels) noexcept { return std::max(4 * levels, 50); }

EigenSystem diagonalize(const ModelParams& p, Truncation truncation, int levels) {
    p.validate();
    if (levels < 1) throw InvalidArgument("level count must be positive, got " + std::to_string(levels));
    if (levels > truncation.dim()) {
        throw InvalidArgument("requested " + std::to_string(levels) + " levels but the basis holds only " +
                              std::to_string(truncation.dim()));
    }

    const OperatorSet ops = build_operators(truncation);
    const SparseMatrix h = build_hamiltonian(p, ops);
    const BlockSpectrum even = solve_block(h, truncation, Parity::even);
    const BlockSpectrum odd = solve_block(h, truncation, Parity::odd);

    EigenSystem eig;
    eig.n_max_used = truncation.n_max();
    eig.energies.reserve(levels);
    eig.parities.reserve(levels);
    eig.states = Eigen::MatrixXd::Zero(truncation.dim(), levels);

    Eigen::Index ie = 0, io = 0;
    for (int k = 0; k < levels; ++k) {
        const bool take_even =
            io >= odd.values.size() ||
            (ie < even.values.size() && even.values[ie] <= odd.values[io] + kMergeTieTolerance);
        const BlockSpectrum& block = take_even ? even : odd;
        const Eigen::Index local = take_even ? ie++ : io++;

        eig.energies.push_back(block.values[local]);
        eig.parities.push_back(block.parity);
        for (std::size_t i = 0; i < block.indices.size(); ++i) {
            eig.states(block.indices[i], k) = block.vectors(static_cast<Eigen::Index>(i), local);
        }
    }
    return eig;
}

EigenSystem converge_truncation(const ModelParams& p, int levels, double tol_e, int n_max_cap, int growth_step) {
    if (!(tol_e > 0.0)) throw InvalidArgument("energy tolerance must be positive");
    if (growth_step < 1) throw InvalidArgument("growth step must be positive");

    int n_max = initial_n_max(levels);
    if (n_max + growth_step > n_max_cap) {
        throw ConvergenceError("initial truncation " + std::to_string(n_max) + " already exceeds the cap " +
                                   std::to_string(n_max_cap) + " at " + format_params(p),
                               n_max, {});
    }

    EigenSystem current = diagonalize(p, Truncation(n_max), levels);
    std::vector<double> deltas(levels);
    while (n_max + growth_step <= n_max_cap) {
        EigenSystem grown = diagonalize(p, Truncation(n_max + growth_step), levels);
        double worst = 0.0;
        for (int k = 0; k < levels; ++k) {
            deltas[k] = std::abs(grown.energies[k] - current.energies[k]);
            worst = std::max(worst, deltas[k]);
        }
        if (worst < tol_e) return current;
        current = std::move(grown);
        n_max += growth_step;
    }

    std::ostringstream os;
    os << "energies not converged to " << tol_e << " by n_max cap " << n_max_cap << " at " << format_params(p);
    throw ConvergenceError(os.str(), n_max, deltas);
}

EigenSystem converge_truncation(const ModelParams& p, const SolverSettings& settings) {
    return converge_truncation(p, settings.levels, settings.tol_e, settings.n_max_cap, settings.growth_step);
}

GroundState ground_parity(const EigenSystem& eig, double degeneracy_floor) {
    GroundState out;
    out.parity = eig.parities.front();
    if (eig.levels() >= 2) {
        out.gap10 = eig.gap(1, 0);
        out.degenerate = out.gap10 < degeneracy_floor;
    }
    return out;
}

GroundState ground_parity(const ModelParams& p, const SolverSettings& settings) {
    const EigenSystem eig =
        converge_truncation(p, 2, settings.tol_e, settings.n_max_cap, settings.growth_step);
    return ground_parity(eig, settings.degeneracy_floor);
}

void CrossingSearch::validate() const {
    if (!(g_lo < g_hi)) throw InvalidArgument("crossing search needs g_lo < g_hi");
    if (!(scan_step > 0.0)) throw InvalidArgument("scan step must be positive");
    if (!(bisect_tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
    if (g_lo < 0.0) throw InvalidArgument("crossing search range must have g_lo >= 0");
}

CrossingList find_crossings(const ModelParams& base, const CrossingSearch& search, const SolverSettings& settings) {
    search.validate();
    base.validate();

    auto parity_at = [&](double g) {
        ModelParams p = base;
        p.g = g;
        try {
            return ground_parity(p, settings);
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os.precision(17);
            os << "crossing search failed at g=" << g << ": " << e.what();
            throw ConvergenceError(os.str(), e.n_max_reached(), e.last_deltas());
        }
    };

    const auto intervals = static_cast<std::size_t>(std::ceil((search.g_hi - search.g_lo) / search.scan_step - 1e-9));
    std::vector<double> grid(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        grid[i] = std::min(search.g_lo + static_cast<double>(i) * search.scan_step, search.g_hi);
    }
    grid.back() = search.g_hi;

    std::vector<GroundState> scan(grid.size());
    parallel_for(grid.size(), search.workers, [&](std::size_t i) { scan[i] = parity_at(grid[i]); });

    CrossingList crossings;
    std::size_t prev = 0;
    while (prev < grid.size() && scan[prev].degenerate) ++prev;
    for (std::size_t i = prev + 1; i < grid.size(); ++i) {
        if (scan[i].degenerate) continue;
        if (scan[i].parity != scan[prev].parity) {
            double lo = grid[prev], hi = grid[i];
            const Parity before = scan[prev].parity;
            while (hi - lo > search.bisect_tol) {
                const double mid = 0.5 * (lo + hi);
                if (parity_at(mid).parity == before) lo = mid;
                else hi = mid;
            }
            crossings.push_back({static_cast<int>(crossings.size()) + 1, 0.5 * (lo + hi), before, scan[i].parity});
        }
        prev = i;
    }
    return crossings;
}

double first_critical_coupling(const ModelParams& p) noexcept {
    const double denom = 1.0 - p.r * p.r;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(p.omega0 * p.delta / denom);
}

Eigen::MatrixXd dressed_matrix(const EigenSystem& eig, const SparseMatrix& op) {
    const Eigen::MatrixXd applied = op * eig.states;
    return eig.states.transpose() * applied;
}

Eigen::MatrixXd position_elements(const EigenSystem& eig) {
    const OperatorSet ops = build_operators(Truncation(eig.n_max_used));
    const SparseMatrix x = ops.a + ops.a_dag;
    return dressed_matrix(eig, x);
}

Eigen::MatrixXd sigma_x_elements(const EigenSystem& eig) {
    const OperatorSet ops = build_operators(Truncation(eig.n_max_used));
    return dressed_matrix(eig, ops.sigma_x);
}

} // namespace aqrm
