#include "xxzring/hamiltonian.hpp"

#include <bit>

#include "xxzring/errors.hpp"

namespace xxzring {

HamiltonianMatrix build_hamiltonian(const RingSpec& spec, const BondTable& bonds) {
    spec.validate(true);
    if (spec.n > kMaxSites)
        throw ValidationError("n exceeds dense-matrix cap " + std::to_string(kMaxSites));
    const int dim = 1 << spec.n;
    HamiltonianMatrix h;
    h.n = spec.n;
    h.entries = Eigen::MatrixXd::Zero(dim, dim);

    for (int k = 0; k < dim; ++k) {
        // Field term: B * (n_up - n_down).
        int up = std::popcount(static_cast<unsigned>(k));
        double diag = spec.b * (2 * up - spec.n);
        for (const Bond& bond : bonds) {
            int pa = bond.site_a - 1;
            int pb = bond.site_b - 1;
            int sa = (k >> pa) & 1;
            int sb = (k >> pb) & 1;
            // sz sz contributes +1 on aligned neighbors, -1 otherwise.
            diag += 0.5 * bond.jz_eff * ((sa == sb) ? 1.0 : -1.0);
            if (sa != sb) {
                // (sx sx + sy sy) swaps the anti-aligned pair with amplitude 2.
                int flipped = k ^ (1 << pa) ^ (1 << pb);
                if (flipped > k) {
                    double amp = bond.j_eff;  // 1/2 * J * 2
                    h.entries(k, flipped) += amp;
                    h.entries(flipped, k) += amp;
                }
            }
        }
        h.entries(k, k) = diag;
    }
    return h;
}

SzBlocks split_sz_blocks(const HamiltonianMatrix& h) {
    SzBlocks out;
    out.n = h.n;
    out.indices.assign(h.n + 1, {});
    const int dim = h.dim();
    for (int k = 0; k < dim; ++k)
        out.indices[std::popcount(static_cast<unsigned>(k))].push_back(k);
    out.blocks.resize(h.n + 1);
    for (int m = 0; m <= h.n; ++m) {
        const auto& idx = out.indices[m];
        Eigen::MatrixXd block(idx.size(), idx.size());
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                block(r, c) = h.entries(idx[r], idx[c]);
        out.blocks[m] = std::move(block);
    }
    return out;
}

Eigen::MatrixXd reassemble(const SzBlocks& blocks) {
    const int dim = 1 << blocks.n;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(dim, dim);
    for (int m = 0; m <= blocks.n; ++m) {
        const auto& idx = blocks.indices[m];
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                full(idx[r], idx[c]) = blocks.blocks[m](r, c);
    }
    return full;
}

}  // namespace xxzring
