#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xxzring/entanglement.hpp"

namespace xxzring {

enum class SweepParam { alpha, beta, temperature, b };

SweepParam parse_sweep_param(const std::string& name);
std::string sweep_param_name(SweepParam p);

struct SweepAxis {
    SweepParam param = SweepParam::alpha;
    std::vector<double> grid;  // nonempty, strictly ascending
};

struct SweepPlan {
    RingSpec base;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<QubitPair> pairs;  // empty -> all n nearest-neighbor bonds

    void validate() const;
    std::vector<QubitPair> effective_pairs() const;

    static SweepPlan from_json(const std::string& text);
};

struct SweepRow {
    double axis1_value = 0.0;
    std::optional<double> axis2_value;
    QubitPair pair;
    double concurrence = 0.0;
};

struct SweepResult {
    SweepPlan plan;
    std::vector<SweepRow> rows;  // axis1 major, then axis2, then pair
};

/// Evaluates every grid point. One eigendecomposition per distinct Hamiltonian;
/// temperature probes reuse the spectrum. threads = 0 picks hardware concurrency.
SweepResult run_sweep(const SweepPlan& plan, int threads = 0);

/// CSV with header axis1,axis2,pair,concurrence; 12 significant digits,
/// '\n' line endings, pair formatted i-j. Byte-deterministic.
std::string to_csv(const SweepResult& result);

std::string to_json(const SweepResult& result);

/// Largest T at which the pair stays entangled (C > 1e-6), located by bisection
/// to width tol. The spectrum is computed once; each probe only re-weights it.
double critical_temperature(const RingSpec& spec, QubitPair pair, double t_lo, double t_hi,
                            double tol);

/// The threshold that operationalizes "entanglement has vanished".
inline constexpr double kConcurrenceEpsilon = 1e-6;

}  // namespace xxzring
