// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xxzring/entanglement.hpp"
#include "xxzring/errors.hpp"
#include "xxzring/sweep.hpp"

using namespace xxzring;

namespace {

int failures = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool ok, const std::string& detail) {
        if (!ok && why_.empty()) why_ = detail;
        ok_ = ok_ && ok;
    }

    void finish(double time_limit_s) {
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                       start_).count();
        if (elapsed >= time_limit_s) {
            ok_ = false;
            if (why_.empty())
                why_ = "runtime " + std::to_string(elapsed) + "s exceeds " +
                       std::to_string(time_limit_s) + "s";
        }
        std::printf("%s: %s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", name_.c_str(), elapsed,
                    why_.empty() ? "" : " -- ", why_.c_str());
        if (!ok_) ++failures;
    }

private:
    std::string name_;
    std::string why_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

RingSpec random_spec(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RingSpec spec;
    spec.n = n;
    spec.j = 0.2 + 1.3 * u(rng);
    spec.jz = 1.5 * u(rng);
    spec.b = u(rng);
    spec.temperature = 0.3 + 1.7 * u(rng);
    spec.alpha = 2.5 * u(rng);
    spec.beta = 2.5 * u(rng);
    for (int s = 1; s <= n; ++s)
        if (u(rng) < 0.3) spec.impurities.insert(s);
    return spec;
}

void criterion_oracle_equivalence() {
    Criterion c("1 oracle equivalence, random small rings vs brute-force pipeline");
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> pick_n(3, 6);
    for (int sample = 0; sample < 10; ++sample) {
        int n = 3 + sample % 4;
        RingSpec spec = random_spec(rng, n);
        int site = 1 + pick_n(rng) % n;
        QubitPair pair(site, site % n + 1);
        double lib = pair_concurrence(spec, pair).value;
        double ref = oracle::pair_concurrence(spec, pair.i, pair.j);
        c.require(std::abs(lib - ref) < 1e-9,
                  "sample " + std::to_string(sample) + ": |" + std::to_string(lib) + " - " +
                      std::to_string(ref) + "| >= 1e-9");
    }
    c.finish(10.0);
}

void criterion_uniform_ring() {
    Criterion c("2 uniform ring: all 10 nearest-neighbor concurrences equal");
    RingSpec spec;
    spec.n = 10;
    spec.j = 1.0;
    spec.jz = 0.65;
    spec.b = 0.4;
    spec.temperature = 1.0;
    RingContext ctx(spec);
    double first = ctx.concurrence_of(QubitPair(1, 2)).value;
    for (int i = 2; i <= 10; ++i) {
        double v = ctx.concurrence_of(QubitPair(i, i % 10 + 1)).value;
        c.require(std::abs(v - first) < 1e-10,
                  "bond " + std::to_string(i) + " deviates by " + std::to_string(v - first));
    }
    c.finish(5.0);
}

void criterion_reflection_symmetry() {
    Criterion c("3 reflection symmetry of the two-impurity ring at three alphas");
    for (double alpha : {0.1, 0.8, 2.0}) {
        RingSpec spec = preset("fig1a");
        spec.alpha = alpha;
        RingContext ctx(spec);
        auto cc = [&](int i, int j) { return ctx.concurrence_of(QubitPair(i, j)).value; };
        const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> mirrors = {
            {{4, 5}, {5, 6}}, {{3, 4}, {6, 7}}, {{2, 3}, {7, 8}},
            {{1, 2}, {8, 9}}, {{9, 10}, {10, 1}}};
        for (const auto& [left, right] : mirrors) {
            double d = std::abs(cc(left.first, left.second) - cc(right.first, right.second));
            c.require(d < 1e-10, "alpha=" + std::to_string(alpha) + " mirror pair deviates by " +
                                     std::to_string(d));
        }
    }
    c.finish(15.0);
}

void criterion_weak_coupling_cut() {
    Criterion c("4 weak impurity couplings cut the ring; pure segment oscillates");
    RingSpec spec = preset("fig1b");  // impurities {4, 6, 8}
    spec.alpha = 0.1;
    RingContext ctx(spec);
    // Bonds 3..8 touch an impurity at alpha scaling.
    for (int i = 3; i <= 8; ++i) {
        double v = ctx.concurrence_of(QubitPair(i, i + 1)).value;
        c.require(v < 1e-3, "scaled bond " + std::to_string(i) + " has C=" + std::to_string(v));
    }
    std::vector<double> segment = {
        ctx.concurrence_of(QubitPair(9, 10)).value, ctx.concurrence_of(QubitPair(10, 1)).value,
        ctx.concurrence_of(QubitPair(1, 2)).value, ctx.concurrence_of(QubitPair(2, 3)).value};
    double lo = *std::min_element(segment.begin(), segment.end());
    double hi = *std::max_element(segment.begin(), segment.end());
    c.require(hi - lo > 1e-3, "pure segment is flat: spread " + std::to_string(hi - lo));
    c.finish(5.0);
}

void criterion_enhancement() {
    Criterion c("5 strong impurity coupling raises concurrence and critical temperature");
    QubitPair pair(3, 4);
    RingSpec at1 = preset("fig1b");
    at1.alpha = 1.0;
    RingSpec at2 = preset("fig1b");
    at2.alpha = 2.0;
    double c1 = pair_concurrence(at1, pair).value;
    double c2 = pair_concurrence(at2, pair).value;
    c.require(c2 > c1, "C(alpha=2)=" + std::to_string(c2) + " not above C(alpha=1)=" +
                           std::to_string(c1));
    try {
        double tc1 = critical_temperature(at1, pair, 0.5, 20.0, 1e-3);
        double tc2 = critical_temperature(at2, pair, 0.5, 20.0, 1e-3);
        c.require(tc2 > tc1, "Tc(alpha=2)=" + std::to_string(tc2) + " not above Tc(alpha=1)=" +
                                 std::to_string(tc1));
    } catch (const std::exception& e) {
        c.require(false, std::string("critical temperature failed: ") + e.what());
    }
    c.finish(30.0);
}

void criterion_beta_locality() {
    Criterion c("6 impurity-pair coupling only moves nearby bonds (beta sweep)");
    SweepPlan plan;
    plan.base = preset("fig5b");  // impurities {4, 7, 8}
    plan.base.alpha = 0.8;
    plan.axis1.param = SweepParam::beta;
    for (int k = 0; k <= 150; ++k) plan.axis1.grid.push_back(0.02 * k);
    plan.pairs = {QubitPair(1, 2), QubitPair(7, 8)};
    SweepResult result = run_sweep(plan, 0);
    double lo12 = 2.0, hi12 = -1.0, lo78 = 2.0, hi78 = -1.0;
    for (const SweepRow& row : result.rows) {
        if (row.pair == QubitPair(1, 2)) {
            lo12 = std::min(lo12, row.concurrence);
            hi12 = std::max(hi12, row.concurrence);
        } else {
            lo78 = std::min(lo78, row.concurrence);
            hi78 = std::max(hi78, row.concurrence);
        }
    }
    double far = hi12 - lo12, near = hi78 - lo78;
    c.require(far * 10.0 <= near, "var(C12)=" + std::to_string(far) +
                                      " not 10x below var(C78)=" + std::to_string(near));
    c.finish(60.0);
}

void criterion_state_validity() {
    Criterion c("7 random thermal states: trace, symmetry, PSD, Sz sparsity, C range");
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick_n(3, 10);
    for (int sample = 0; sample < 25; ++sample) {
        RingSpec spec = random_spec(rng, pick_n(rng));
        RingContext ctx(spec);
        const DensityMatrix& rho = ctx.thermal_state();
        const int dim = rho.dim();
        c.require(std::abs(rho.entries.trace() - 1.0) < 1e-10, "trace deviates");
        c.require((rho.entries - rho.entries.transpose()).cwiseAbs().maxCoeff() < 1e-12,
                  "not symmetric");
        // Block diagonal over popcount sectors, so sector-wise PSD is full PSD.
        for (int m = 0; m <= spec.n; ++m) {
            std::vector<int> idx;
            for (int k = 0; k < dim; ++k)
                if (std::popcount(unsigned(k)) == m) idx.push_back(k);
            Eigen::MatrixXd block(idx.size(), idx.size());
            for (size_t r = 0; r < idx.size(); ++r)
                for (size_t col = 0; col < idx.size(); ++col)
                    block(r, col) = rho.entries(idx[r], idx[col]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(block);
            c.require(s.eigenvalues().minCoeff() > -1e-10, "negative eigenvalue in sector");
        }
        double off_block = 0.0;
        for (int p = 0; p < dim; ++p)
            for (int q = 0; q < dim; ++q)
                if (std::popcount(unsigned(p)) != std::popcount(unsigned(q)))
                    off_block = std::max(off_block, std::abs(rho.entries(p, q)));
        c.require(off_block < 1e-12, "Sz off-block leakage " + std::to_string(off_block));
        for (int i = 1; i <= spec.n; ++i) {
            double v = ctx.concurrence_of(QubitPair(i, i % spec.n + 1)).value;
            c.require(v >= 0.0 && v <= 1.0, "concurrence outside [0, 1]");
        }
    }
    c.finish(60.0);
}

void criterion_block_path() {
    Criterion c("8 sector spectrum equals dense spectrum");
    for (double alpha : {0.5, 1.0, 2.0}) {
        RingSpec spec = preset("fig1a");
        spec.alpha = alpha;
        HamiltonianMatrix h = build_hamiltonian(spec, derive_bonds(spec));
        Eigen::VectorXd dense = eigendecompose(h).eigenvalues;
        Eigen::VectorXd blocked = eigendecompose_blocked(h).eigenvalues;
        double d = (dense - blocked).cwiseAbs().maxCoeff();
        c.require(d < 1e-9, "alpha=" + std::to_string(alpha) + " spectra differ by " +
                                std::to_string(d));
    }
    c.finish(10.0);
}

void criterion_determinism() {
    Criterion c("9 repeated sweep runs emit byte-identical CSV");
    SweepPlan plan;
    plan.base = preset("fig1a");
    plan.axis1.param = SweepParam::alpha;
    for (int k = 0; k <= 150; ++k) plan.axis1.grid.push_back(0.02 * k);
    std::string first = to_csv(run_sweep(plan, 0));
    std::string second = to_csv(run_sweep(plan, 0));
    c.require(first == second, "CSV outputs differ between runs");
    c.require(!first.empty() && first.rfind("axis1,axis2,pair,concurrence\n", 0) == 0,
              "missing schema header");
    c.finish(120.0);
}

}  // namespace

int main() {
    try {
        criterion_oracle_equivalence();
        criterion_uniform_ring();
        criterion_reflection_symmetry();
        criterion_weak_coupling_cut();
        criterion_enhancement();
        criterion_beta_locality();
        criterion_state_validity();
        criterion_block_path();
        criterion_determinism();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 1;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
