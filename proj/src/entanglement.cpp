#include "xxzring/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "xxzring/errors.hpp"

namespace xxzring {

namespace {

constexpr double kEigClampFloor = -1e-10;

// Eigenvalues of a symmetric PSD-up-to-roundoff matrix, tiny negatives clamped.
Eigen::VectorXd psd_eigenvalues(const Eigen::MatrixXd& m, const char* what,
                                Eigen::MatrixXd* vectors = nullptr) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalError(std::string("eigensolver failed on ") + what);
    Eigen::VectorXd vals = solver.eigenvalues();
    for (int k = 0; k < vals.size(); ++k) {
        if (vals(k) < kEigClampFloor)
            throw NumericalError(std::string(what) + " has eigenvalue " +
                                 std::to_string(vals(k)) + " below the roundoff floor");
        if (vals(k) < 0.0) vals(k) = 0.0;
    }
    if (vectors) *vectors = solver.eigenvectors();
    return vals;
}

}  // namespace

QubitPair::QubitPair(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
    if (a == b) throw ValidationError("qubit pair needs two distinct sites");
}

DensityMatrix partial_trace_pair(const DensityMatrix& rho, QubitPair pair, int n) {
    const int dim = 1 << n;
    if (rho.dim() != dim)
        throw ValidationError("partial trace: state dim " + std::to_string(rho.dim()) +
                              " does not match 2^" + std::to_string(n));
    if (pair.i < 1 || pair.j > n)
        throw ValidationError("partial trace: pair sites outside 1.." + std::to_string(n));
    const int pi = pair.i - 1;
    const int pj = pair.j - 1;

    // Expand an environment index into a full basis index with holes at pi, pj.
    auto expand = [&](int env) {
        int lo = env & ((1 << pi) - 1);
        int mid = (env >> pi) & ((1 << (pj - pi - 1)) - 1);
        int hi = env >> (pj - 1);
        return lo | (mid << (pi + 1)) | (hi << (pj + 1));
    };

    Eigen::Matrix4d reduced = Eigen::Matrix4d::Zero();
    const int env_count = dim >> 2;
    for (int env = 0; env < env_count; ++env) {
        const int base = expand(env);
        for (int r = 0; r < 4; ++r) {
            const int kr = base | (((r >> 1) & 1) << pi) | ((r & 1) << pj);
            for (int c = 0; c < 4; ++c) {
                const int kc = base | (((c >> 1) & 1) << pi) | ((c & 1) << pj);
                reduced(r, c) += rho.entries(kr, kc);
            }
        }
    }
    DensityMatrix out;
    out.entries = reduced;
    out.label = rho.label + " pair " + std::to_string(pair.i) + "-" + std::to_string(pair.j);
    return out;
}

Eigen::Matrix4d spin_flip_tilde(const Eigen::Matrix4d& rho4) {
    Eigen::Matrix4d tilde;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            int parity = std::popcount(static_cast<unsigned>(r)) +
                         std::popcount(static_cast<unsigned>(c));
            double sign = (parity & 1) ? -1.0 : 1.0;
            tilde(r, c) = sign * rho4(3 - r, 3 - c);
        }
    }
    return tilde;
}

ConcurrenceResult concurrence(const DensityMatrix& rho4, QubitPair pair) {
    if (rho4.dim() != 4) throw ValidationError("concurrence expects a 4x4 state");
    const Eigen::Matrix4d rho = rho4.entries;
    const Eigen::Matrix4d tilde = spin_flip_tilde(rho);

    Eigen::MatrixXd vecs;
    Eigen::VectorXd vals = psd_eigenvalues(rho, "two-qubit state", &vecs);
    Eigen::Matrix4d sqrt_rho =
        vecs * vals.array().sqrt().matrix().asDiagonal() * vecs.transpose();

    // Same nonzero spectrum as rho * tilde, but symmetric.
    Eigen::Matrix4d m = sqrt_rho * tilde * sqrt_rho;
    m = 0.5 * (m + m.transpose()).eval();
    Eigen::VectorXd r_vals = psd_eigenvalues(m, "spin-flip product");

    ConcurrenceResult result;
    result.pair = pair;
    for (int k = 0; k < 4; ++k) result.lambdas[k] = std::sqrt(r_vals(k));
    std::sort(result.lambdas.begin(), result.lambdas.end(), std::greater<>());
    double c = result.lambdas[0] - result.lambdas[1] - result.lambdas[2] - result.lambdas[3];
    result.value = std::max(0.0, c);
    return result;
}

ConcurrenceResult pair_concurrence(const RingSpec& spec, QubitPair pair) {
    return RingContext(spec).concurrence_of(pair);
}

RingContext::RingContext(const RingSpec& spec) : spec_(spec) {
    spec_.validate(true);
    HamiltonianMatrix h = build_hamiltonian(spec_, derive_bonds(spec_));
    SzBlocks blocks = split_sz_blocks(h);
    sectors_.reserve(blocks.blocks.size());
    for (size_t m = 0; m < blocks.blocks.size(); ++m) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(blocks.blocks[m]);
        if (solver.info() != Eigen::Success)
            throw NumericalError("sector eigensolver failed in magnetization sector " +
                                 std::to_string(m));
        sectors_.push_back({blocks.indices[m], solver.eigenvalues(), solver.eigenvectors()});
    }
    ground_energy_ = sectors_[0].eigenvalues.minCoeff();
    for (const Sector& s : sectors_)
        ground_energy_ = std::min(ground_energy_, s.eigenvalues.minCoeff());
}

const SpectralDecomposition& RingContext::spectrum() const {
    if (!merged_ready_) {
        const int dim = 1 << spec_.n;
        std::vector<std::pair<double, std::pair<int, int>>> order;  // (E, (sector, col))
        order.reserve(dim);
        for (size_t m = 0; m < sectors_.size(); ++m)
            for (int k = 0; k < sectors_[m].eigenvalues.size(); ++k)
                order.push_back({sectors_[m].eigenvalues(k), {static_cast<int>(m), k}});
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        merged_.eigenvalues.resize(dim);
        merged_.eigenvectors = Eigen::MatrixXd::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) {
            merged_.eigenvalues(k) = order[k].first;
            const Sector& s = sectors_[order[k].second.first];
            const int col = order[k].second.second;
            for (size_t r = 0; r < s.indices.size(); ++r)
                merged_.eigenvectors(s.indices[r], k) = s.eigenvectors(r, col);
        }
        merged_ready_ = true;
    }
    return merged_;
}

DensityMatrix RingContext::gibbs(double temperature) const {
    if (temperature <= 0.0)
        throw ValidationError("gibbs needs temperature > 0; use ground_state for T = 0");
    const int dim = 1 << spec_.n;
    double z = 0.0;
    for (const Sector& s : sectors_)
        z += ((s.eigenvalues.array() - ground_energy_) / -temperature).exp().sum();

    DensityMatrix rho;
    rho.entries = Eigen::MatrixXd::Zero(dim, dim);
    for (const Sector& s : sectors_) {
        Eigen::VectorXd w =
            ((s.eigenvalues.array() - ground_energy_) / -temperature).exp() / z;
        Eigen::MatrixXd block = s.eigenvectors * w.asDiagonal() * s.eigenvectors.transpose();
        block = 0.5 * (block + block.transpose()).eval();
        for (size_t r = 0; r < s.indices.size(); ++r)
            for (size_t c = 0; c < s.indices.size(); ++c)
                rho.entries(s.indices[r], s.indices[c]) = block(r, c);
    }
    rho.label = "gibbs T=" + std::to_string(temperature);
    return rho;
}

const DensityMatrix& RingContext::thermal_state() const {
    if (!state_ready_) {
        cached_state_ = gibbs(spec_.temperature);
        state_ready_ = true;
    }
    return cached_state_;
}

ConcurrenceResult RingContext::concurrence_of(QubitPair pair) const {
    return concurrence(partial_trace_pair(thermal_state(), pair, spec_.n), pair);
}

ConcurrenceResult RingContext::concurrence_at(double temperature, QubitPair pair) const {
    DensityMatrix rho = gibbs(temperature);
    return concurrence(partial_trace_pair(rho, pair, spec_.n), pair);
}

}  // namespace xxzring
