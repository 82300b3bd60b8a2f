#pragma once

#include <array>

#include "xxzring/thermal.hpp"

namespace xxzring {

/// Unordered site pair, normalized to i < j.
struct QubitPair {
    int i = 0;
    int j = 0;

    QubitPair() = default;
    QubitPair(int a, int b);

    bool operator==(const QubitPair&) const = default;
};

struct ConcurrenceResult {
    QubitPair pair;
    double value = 0.0;
    std::array<double, 4> lambdas{};  // descending square roots of eig(rho rho~)
};

/// 4x4 marginal of rho over (site i, site j), i < j first in the tensor order.
DensityMatrix partial_trace_pair(const DensityMatrix& rho, QubitPair pair, int n);

/// rho~ = (sy x sy) rho* (sy x sy). For real rho this is a bit-flip of both
/// indices with a parity sign.
Eigen::Matrix4d spin_flip_tilde(const Eigen::Matrix4d& rho4);

/// Wootters concurrence of a two-qubit state: C = max(0, 2 lambda_max - sum).
/// The lambdas come from the symmetric form sqrt(rho) rho~ sqrt(rho), which
/// shares its nonzero spectrum with rho rho~.
ConcurrenceResult concurrence(const DensityMatrix& rho4, QubitPair pair = {});

/// End-to-end: spec -> H -> Gibbs rho -> marginal -> concurrence.
ConcurrenceResult pair_concurrence(const RingSpec& spec, QubitPair pair);

/// Memoized pipeline: one Hamiltonian + spectrum serves every pair and every
/// temperature probe. This is the entry point sweeps go through.
///
/// The spectrum is kept per S^z sector, so re-weighting for a new temperature
/// costs sum(dim_m^3) instead of a dense (2^n)^3 product.
class RingContext {
public:
    explicit RingContext(const RingSpec& spec);

    const RingSpec& spec() const { return spec_; }

    /// Merged full decomposition (eigenvalues ascending), built on first use.
    const SpectralDecomposition& spectrum() const;

    /// Gibbs state at an arbitrary temperature, assembled sector by sector.
    DensityMatrix gibbs(double temperature) const;

    /// Gibbs state at the spec's own temperature (cached).
    const DensityMatrix& thermal_state() const;

    ConcurrenceResult concurrence_of(QubitPair pair) const;
    ConcurrenceResult concurrence_at(double temperature, QubitPair pair) const;

private:
    struct Sector {
        std::vector<int> indices;
        Eigen::VectorXd eigenvalues;
        Eigen::MatrixXd eigenvectors;
    };

    RingSpec spec_;
    std::vector<Sector> sectors_;
    double ground_energy_ = 0.0;
    mutable SpectralDecomposition merged_;
    mutable bool merged_ready_ = false;
    mutable DensityMatrix cached_state_;
    mutable bool state_ready_ = false;
};

}  // namespace xxzring
