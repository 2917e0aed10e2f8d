#include "aqrm/model.hpp"

#include "aqrm/error.hpp"

#include <cmath>
#include <string>

namespace aqrm {

void ModelParams::validate() const {
    if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be positive, got " + std::to_string(omega0));
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive, got " + std::to_string(delta));
    if (!(g >= 0.0)) throw InvalidArgument("g must be non-negative, got " + std::to_string(g));
    if (!(r >= 0.0)) throw InvalidArgument("r must be non-negative, got " + std::to_string(r));
}

Truncation::Truncation(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw InvalidArgument("n_max must be at least 1, got " + std::to_string(n_max));
}

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix from_triplets(int dim, const std::vector<Triplet>& triplets) {
    SparseMatrix m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

} // namespace

OperatorSet build_operators(Truncation truncation) {
    const int n_max = truncation.n_max();
    const int dim = truncation.dim();

    std::vector<Triplet> a, sp, sz, id;
    a.reserve(dim);
    sp.reserve(dim / 2);
    sz.reserve(dim);
    id.reserve(dim);

    for (int n = 0; n <= n_max; ++n) {
        for (int s = 0; s <= 1; ++s) {
            const int i = basis_index(n, s);
            id.emplace_back(i, i, 1.0);
            sz.emplace_back(i, i, s == 1 ? 1.0 : -1.0);
            if (n >= 1) a.emplace_back(basis_index(n - 1, s), i, std::sqrt(static_cast<double>(n)));
        }
        sp.emplace_back(basis_index(n, 1), basis_index(n, 0), 1.0);
    }

    OperatorSet ops{truncation, {}, {}, {}, {}, {}, {}, {}};
    ops.a = from_triplets(dim, a);
    ops.a_dag = SparseMatrix(ops.a.transpose());
    ops.sigma_plus = from_triplets(dim, sp);
    ops.sigma_minus = SparseMatrix(ops.sigma_plus.transpose());
    ops.sigma_x = ops.sigma_plus + ops.sigma_minus;
    ops.sigma_z = from_triplets(dim, sz);
    ops.identity = from_triplets(dim, id);
    return ops;
}

SparseMatrix build_hamiltonian(const ModelParams& p, const OperatorSet& ops) {
    const SparseMatrix number = ops.a_dag * ops.a;
    const SparseMatrix rotating = ops.a * ops.sigma_plus + ops.a_dag * ops.sigma_minus;
    const SparseMatrix counter = ops.a * ops.sigma_minus + ops.a_dag * ops.sigma_plus;

    SparseMatrix h = p.omega0 * number + (0.5 * p.delta) * ops.sigma_z + p.g * rotating + (p.g * p.r) * counter;
    h.prune(0.0);
    h.makeCompressed();
    return h;
}

ParityOperator parity_operator(const OperatorSet& ops) {
    const int dim = ops.dim();
    ParityOperator out;
    out.basis_parities.reserve(dim);
    std::vector<Triplet> diag;
    diag.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        const Parity par = basis_parity(i);
        out.basis_parities.push_back(par);
        diag.emplace_back(i, i, static_cast<double>(parity_value(par)));
    }
    out.matrix = from_triplets(dim, diag);
    return out;
}

std::vector<int> parity_block_indices(const Truncation& truncation, Parity parity) {
    std::vector<int> indices;
    indices.reserve(truncation.n_max() + 1);
    for (int i = 0; i < truncation.dim(); ++i) {
        if (basis_parity(i) == parity) indices.push_back(i);
    }
    return indices;
}

SparseMatrix excitation_number(const OperatorSet& ops) {
    SparseMatrix n = ops.a_dag * ops.a + 0.5 * (ops.sigma_z + ops.identity);
    n.makeCompressed();
    return n;
}

} // namespace aqrm
