#pragma once

#include <Eigen/Dense>
#include <string>

#include "xxzring/hamiltonian.hpp"

namespace xxzring {

/// Full spectrum of H: eigenvalues ascending, eigenvector k in column k.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Hermitian, unit-trace, PSD. Real in this basis (the Hamiltonian is real).
struct DensityMatrix {
    Eigen::MatrixXd entries;
    std::string label;

    int dim() const { return static_cast<int>(entries.rows()); }
};

SpectralDecomposition eigendecompose(const HamiltonianMatrix& h);

/// Solves each S^z sector separately and merges; same spectrum, faster for
/// large rings. The merged eigenvector matrix is still orthonormal.
SpectralDecomposition eigendecompose_blocked(const HamiltonianMatrix& h);

/// rho = exp(-H/T)/Z evaluated spectrally with the ground-energy shift, so
/// small T cannot overflow. Requires temperature > 0.
DensityMatrix gibbs_state(const SpectralDecomposition& decomp, double temperature);

/// T -> 0 limit: uniform mixture over eigenvectors within degeneracy_tol of E0.
DensityMatrix ground_state(const SpectralDecomposition& decomp, double degeneracy_tol = 1e-9);

}  // namespace xxzring
