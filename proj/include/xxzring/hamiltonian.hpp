#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xxzring/ring_spec.hpp"

namespace xxzring {

/// 2^n x 2^n real symmetric XXZ Hamiltonian in the computational basis.
/// Basis index k is little-endian: bit (site-1) of k gives the z eigenstate of
/// that site, bit value 1 = spin up. Pauli matrices have eigenvalues +-1.
struct HamiltonianMatrix {
    int n = 0;
    Eigen::MatrixXd entries;  // dim = 2^n

    int dim() const { return static_cast<int>(entries.rows()); }
};

/// Magnetization sectors: the Hamiltonian conserves total S^z, so it is block
/// diagonal over fixed-popcount index sets.
struct SzBlocks {
    int n = 0;
    std::vector<std::vector<int>> indices;  // sector m -> basis indices with popcount m
    std::vector<Eigen::MatrixXd> blocks;    // sector m -> restricted sub-matrix
};

/// H = sum_bonds 1/2 [J_i (sx sx + sy sy) + Jz_i sz sz] + B sum_i sz_i.
HamiltonianMatrix build_hamiltonian(const RingSpec& spec, const BondTable& bonds);

SzBlocks split_sz_blocks(const HamiltonianMatrix& h);

/// Scatters the sector blocks back to a dense matrix; exact inverse of the split.
Eigen::MatrixXd reassemble(const SzBlocks& blocks);

}  // namespace xxzring
