#include "xxzring/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <mutex>
#include <memory>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "xxzring/errors.hpp"

namespace xxzring {

namespace {

void apply_param(RingSpec& spec, SweepParam param, double value) {
    switch (param) {
        case SweepParam::alpha: spec.alpha = value; break;
        case SweepParam::beta: spec.beta = value; break;
        case SweepParam::temperature: spec.temperature = value; break;
        case SweepParam::b: spec.b = value; break;
    }
}

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

SweepAxis axis_from_json(const nlohmann::json& doc, const std::string& which) {
    if (!doc.is_object()) throw ValidationError(which + ": must be an object");
    SweepAxis axis;
    if (!doc.contains("param")) throw ValidationError(which + ": missing 'param'");
    axis.param = parse_sweep_param(doc.at("param").get<std::string>());
    if (doc.contains("grid")) {
        axis.grid = doc.at("grid").get<std::vector<double>>();
    } else if (doc.contains("start") && doc.contains("stop") && doc.contains("step")) {
        double start = doc.at("start").get<double>();
        double stop = doc.at("stop").get<double>();
        double step = doc.at("step").get<double>();
        if (step <= 0.0) throw ValidationError(which + ": step must be > 0");
        // Half-step slack so stop lands on the grid despite rounding.
        for (double v = start; v <= stop + step * 0.5; v += step) axis.grid.push_back(v);
    } else {
        throw ValidationError(which + ": need 'grid' or 'start'/'stop'/'step'");
    }
    return axis;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

SweepParam parse_sweep_param(const std::string& name) {
    if (name == "alpha") return SweepParam::alpha;
    if (name == "beta") return SweepParam::beta;
    if (name == "temperature") return SweepParam::temperature;
    if (name == "b") return SweepParam::b;
    throw ValidationError("unknown sweep parameter '" + name +
                          "'; expected alpha, beta, temperature, or b");
}

std::string sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::alpha: return "alpha";
        case SweepParam::beta: return "beta";
        case SweepParam::temperature: return "temperature";
        case SweepParam::b: return "b";
    }
    return "?";
}

void SweepPlan::validate() const {
    base.validate();
    auto check_axis = [](const SweepAxis& axis, const char* which) {
        if (axis.grid.empty()) throw ValidationError(std::string(which) + ": empty grid");
        for (size_t k = 1; k < axis.grid.size(); ++k)
            if (axis.grid[k] <= axis.grid[k - 1])
                throw ValidationError(std::string(which) + ": grid must be strictly ascending");
    };
    check_axis(axis1, "axis1");
    if (axis2) {
        check_axis(*axis2, "axis2");
        if (axis2->param == axis1.param)
            throw ValidationError("axis1 and axis2 must sweep distinct parameters");
    }
    for (const QubitPair& p : pairs) {
        if (p.i < 1 || p.j > base.n)
            throw ValidationError("pairs: site outside 1.." + std::to_string(base.n));
    }
    // Temperature grids must stay positive.
    for (const SweepAxis* axis : {&axis1, axis2 ? &*axis2 : nullptr}) {
        if (axis && axis->param == SweepParam::temperature && axis->grid.front() <= 0.0)
            throw ValidationError("temperature grid must be > 0");
        if (axis && axis->param == SweepParam::b && axis->grid.front() < 0.0)
            throw ValidationError("field grid must be >= 0");
    }
}

std::vector<QubitPair> SweepPlan::effective_pairs() const {
    if (!pairs.empty()) return pairs;
    std::vector<QubitPair> all;
    all.reserve(base.n);
    for (int i = 1; i <= base.n; ++i) all.emplace_back(i, (i % base.n) + 1);
    return all;
}

SweepPlan SweepPlan::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("plan JSON parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("plan JSON must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "base" && key != "axis1" && key != "axis2" && key != "pairs")
            throw ValidationError("plan JSON: unknown key '" + key + "'");
    }
    SweepPlan plan;
    if (!doc.contains("base")) throw ValidationError("plan JSON: missing 'base'");
    plan.base = RingSpec::from_json(doc.at("base").dump());
    if (!doc.contains("axis1")) throw ValidationError("plan JSON: missing 'axis1'");
    plan.axis1 = axis_from_json(doc.at("axis1"), "axis1");
    if (doc.contains("axis2")) plan.axis2 = axis_from_json(doc.at("axis2"), "axis2");
    if (doc.contains("pairs")) {
        try {
            for (const auto& entry : doc.at("pairs")) {
                auto sites = entry.get<std::vector<int>>();
                if (sites.size() != 2)
                    throw ValidationError("pairs: each entry must be [i, j]");
                plan.pairs.emplace_back(sites[0], sites[1]);
            }
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("plan JSON pairs: ") + e.what());
        }
    }
    plan.validate();
    return plan;
}

SweepResult run_sweep(const SweepPlan& plan, int threads) {
    plan.validate();
    const std::vector<QubitPair> pairs = plan.effective_pairs();
    const std::vector<double> axis2_grid =
        plan.axis2 ? plan.axis2->grid : std::vector<double>{0.0};

    // Grid points in output order; temperature does not change the Hamiltonian,
    // so points that differ only in T share a context.
    struct Point {
        double a1 = 0.0;
        double a2 = 0.0;
        RingSpec spec;
        size_t context_slot = 0;
    };
    std::vector<Point> points;
    std::map<std::tuple<double, double, double>, size_t> context_slots;
    std::vector<RingSpec> context_specs;
    for (double v1 : plan.axis1.grid) {
        for (double v2 : axis2_grid) {
            Point pt;
            pt.a1 = v1;
            pt.a2 = v2;
            pt.spec = plan.base;
            apply_param(pt.spec, plan.axis1.param, v1);
            if (plan.axis2) apply_param(pt.spec, plan.axis2->param, v2);
            auto key = std::make_tuple(pt.spec.alpha, pt.spec.beta, pt.spec.b);
            auto [it, inserted] = context_slots.try_emplace(key, context_specs.size());
            if (inserted) context_specs.push_back(pt.spec);
            pt.context_slot = it->second;
            points.push_back(std::move(pt));
        }
    }

    // Diagonalize distinct Hamiltonians in parallel.
    unsigned worker_count = threads > 0 ? static_cast<unsigned>(threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, context_specs.size());
    std::vector<std::unique_ptr<RingContext>> contexts(context_specs.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (size_t k = next.fetch_add(1); k < context_specs.size(); k = next.fetch_add(1)) {
            try {
                contexts[k] = std::make_unique<RingContext>(context_specs[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.plan = plan;
    result.rows.reserve(points.size() * pairs.size());
    for (const Point& pt : points) {
        const RingContext& ctx = *contexts[pt.context_slot];
        DensityMatrix rho;
        try {
            rho = ctx.gibbs(pt.spec.temperature);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " at grid point axis1=" +
                                 format_sig12(pt.a1));
        }
        for (const QubitPair& pair : pairs) {
            SweepRow row;
            row.axis1_value = pt.a1;
            if (plan.axis2) row.axis2_value = pt.a2;
            row.pair = pair;
            row.concurrence =
                concurrence(partial_trace_pair(rho, pair, pt.spec.n), pair).value;
            result.rows.push_back(row);
        }
    }
    return result;
}

std::string to_csv(const SweepResult& result) {
    std::string out = "axis1,axis2,pair,concurrence\n";
    for (const SweepRow& row : result.rows) {
        out += format_sig12(row.axis1_value);
        out += ',';
        if (row.axis2_value) out += format_sig12(*row.axis2_value);
        out += ',';
        out += std::to_string(row.pair.i) + '-' + std::to_string(row.pair.j);
        out += ',';
        out += format_sig12(row.concurrence);
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepResult& result) {
    nlohmann::json doc;
    doc["plan"] = {
        {"base", nlohmann::json::parse(result.plan.base.to_json())},
        {"axis1",
         {{"param", sweep_param_name(result.plan.axis1.param)}, {"grid", result.plan.axis1.grid}}},
    };
    if (result.plan.axis2)
        doc["plan"]["axis2"] = {{"param", sweep_param_name(result.plan.axis2->param)},
                                {"grid", result.plan.axis2->grid}};
    nlohmann::json pairs = nlohmann::json::array();
    for (const QubitPair& p : result.plan.effective_pairs())
        pairs.push_back({p.i, p.j});
    doc["plan"]["pairs"] = pairs;
    doc["metadata"] = {
        {"generator", "xxzring"},
        {"version", "1.0.0"},
        {"spec_hash", fnv1a(result.plan.base.to_json())},
        {"timestamp_unix", static_cast<long long>(::time(nullptr))},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows) {
        nlohmann::json r;
        r["axis1"] = row.axis1_value;
        if (row.axis2_value) r["axis2"] = *row.axis2_value;
        r["pair"] = std::to_string(row.pair.i) + "-" + std::to_string(row.pair.j);
        r["concurrence"] = row.concurrence;
        rows.push_back(r);
    }
    doc["rows"] = rows;
    return doc.dump(2);
}

double critical_temperature(const RingSpec& spec, QubitPair pair, double t_lo, double t_hi,
                            double tol) {
    if (!(t_lo < t_hi)) throw ValidationError("critical_temperature: need t_lo < t_hi");
    if (!(tol > 0.0)) throw ValidationError("critical_temperature: need tol > 0");
    RingContext ctx(spec);
    auto c_at = [&](double t) { return ctx.concurrence_at(t, pair).value; };
    const double c_lo = c_at(t_lo);
    const double c_hi = c_at(t_hi);
    if (c_lo <= kConcurrenceEpsilon || c_hi > kConcurrenceEpsilon)
        throw BracketError("bracket invalid: C(" + format_sig12(t_lo) + ")=" +
                           format_sig12(c_lo) + ", C(" + format_sig12(t_hi) + ")=" +
                           format_sig12(c_hi));
    double lo = t_lo, hi = t_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (c_at(mid) > kConcurrenceEpsilon)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace xxzring
