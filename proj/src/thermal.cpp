#include "xxzring/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "xxzring/errors.hpp"

namespace xxzring {

SpectralDecomposition eigendecompose(const HamiltonianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver failed to converge on dim " +
                             std::to_string(h.dim()));
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

SpectralDecomposition eigendecompose_blocked(const HamiltonianMatrix& h) {
    SzBlocks blocks = split_sz_blocks(h);
    const int dim = h.dim();

    // Solve per sector, then sort eigenpairs globally by eigenvalue.
    std::vector<std::pair<double, int>> order;  // (eigenvalue, slot in scratch)
    Eigen::MatrixXd scratch = Eigen::MatrixXd::Zero(dim, dim);
    order.reserve(dim);
    int slot = 0;
    for (int m = 0; m <= h.n; ++m) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(blocks.blocks[m]);
        if (solver.info() != Eigen::Success)
            throw NumericalError("sector eigensolver failed in magnetization sector " +
                                 std::to_string(m));
        const auto& idx = blocks.indices[m];
        for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
            for (size_t r = 0; r < idx.size(); ++r)
                scratch(idx[r], slot) = solver.eigenvectors()(r, k);
            order.emplace_back(solver.eigenvalues()(k), slot);
            ++slot;
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    SpectralDecomposition out;
    out.eigenvalues.resize(dim);
    out.eigenvectors.resize(dim, dim);
    for (int k = 0; k < dim; ++k) {
        out.eigenvalues(k) = order[k].first;
        out.eigenvectors.col(k) = scratch.col(order[k].second);
    }
    return out;
}

DensityMatrix gibbs_state(const SpectralDecomposition& decomp, double temperature) {
    if (temperature <= 0.0)
        throw ValidationError("gibbs_state needs temperature > 0; use ground_state for T = 0");
    const int dim = static_cast<int>(decomp.eigenvalues.size());
    const double e0 = decomp.eigenvalues.minCoeff();
    Eigen::VectorXd weights(dim);
    for (int k = 0; k < dim; ++k)
        weights(k) = std::exp(-(decomp.eigenvalues(k) - e0) / temperature);
    weights /= weights.sum();

    DensityMatrix rho;
    rho.entries = decomp.eigenvectors * weights.asDiagonal() * decomp.eigenvectors.transpose();
    // Exact symmetry; the triple product drifts at machine level.
    rho.entries = 0.5 * (rho.entries + rho.entries.transpose()).eval();
    rho.label = "gibbs T=" + std::to_string(temperature);
    return rho;
}

DensityMatrix ground_state(const SpectralDecomposition& decomp, double degeneracy_tol) {
    const int dim = static_cast<int>(decomp.eigenvalues.size());
    const double cutoff = decomp.eigenvalues.minCoeff() + degeneracy_tol;
    int count = 0;
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        if (decomp.eigenvalues(k) <= cutoff) {
            proj += decomp.eigenvectors.col(k) * decomp.eigenvectors.col(k).transpose();
            ++count;
        }
    }
    DensityMatrix rho;
    rho.entries = proj / count;
    rho.label = "ground degeneracy=" + std::to_string(count);
    return rho;
}

}  // namespace xxzring
