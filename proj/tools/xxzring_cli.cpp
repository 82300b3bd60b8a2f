#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "xxzring/errors.hpp"
#include "xxzring/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw xxzring::ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw xxzring::ValidationError("cannot write '" + path + "'");
    out << content;
}

xxzring::QubitPair parse_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw xxzring::ValidationError("--pair expects i,j");
    try {
        int i = std::stoi(text.substr(0, comma));
        int j = std::stoi(text.substr(comma + 1));
        return xxzring::QubitPair(i, j);
    } catch (const std::invalid_argument&) {
        throw xxzring::ValidationError("--pair expects two integers i,j");
    }
}

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Dense CSV dump of H for inspection: dim header line, then rows.
std::string hamiltonian_csv(const xxzring::RingSpec& spec) {
    auto h = xxzring::build_hamiltonian(spec, xxzring::derive_bonds(spec));
    std::string out = std::to_string(h.dim()) + "\n";
    for (int r = 0; r < h.dim(); ++r) {
        for (int c = 0; c < h.dim(); ++c) {
            if (c) out += ',';
            out += format_sig12(h.entries(r, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermal entanglement in XXZ spin rings with impurity bonds"};
    app.require_subcommand(1);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep from a JSON plan");
    std::string plan_path, csv_path, json_path;
    int threads = 0;
    sweep_cmd->add_option("--plan", plan_path, "Plan JSON file")->required();
    sweep_cmd->add_option("--out", csv_path, "Output CSV path")->required();
    sweep_cmd->add_option("--json", json_path, "Optional JSON result path");
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = auto)");

    // tc
    auto* tc_cmd = app.add_subcommand("tc", "Locate the critical temperature by bisection");
    std::string tc_spec_path, tc_preset, tc_pair_text;
    double t_lo = 0.1, t_hi = 5.0, tol = 1e-3;
    tc_cmd->add_option("--spec", tc_spec_path, "RingSpec JSON file");
    tc_cmd->add_option("--preset", tc_preset, "Preset name instead of --spec");
    tc_cmd->add_option("--pair", tc_pair_text, "Qubit pair i,j")->required();
    tc_cmd->add_option("--t-lo", t_lo, "Lower bracket (entangled)")->required();
    tc_cmd->add_option("--t-hi", t_hi, "Upper bracket (separable)")->required();
    tc_cmd->add_option("--tol", tol, "Bisection width");
    double tc_alpha = -1.0, tc_beta = -1.0;
    tc_cmd->add_option("--alpha", tc_alpha, "Override alpha");
    tc_cmd->add_option("--beta", tc_beta, "Override beta");

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "Print a named preset as JSON");
    std::string preset_name;
    preset_cmd->add_option("name", preset_name, "One of fig1a, fig1b, fig5a, fig5b")
        ->required();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a RingSpec JSON file");
    std::string validate_path, dump_h_path;
    bool allow_negative = false;
    validate_cmd->add_option("--spec", validate_path, "RingSpec JSON file")->required();
    validate_cmd->add_flag("--allow-negative", allow_negative,
                           "Permit negative alpha/beta (ferromagnetic impurity bonds)");
    validate_cmd->add_option("--dump-hamiltonian", dump_h_path,
                             "Write the dense Hamiltonian as CSV (debug)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*sweep_cmd) {
            auto plan = xxzring::SweepPlan::from_json(read_file(plan_path));
            auto result = xxzring::run_sweep(plan, threads);
            write_file(csv_path, xxzring::to_csv(result));
            if (!json_path.empty()) write_file(json_path, xxzring::to_json(result));
            std::cout << result.rows.size() << " rows -> " << csv_path << "\n";
        } else if (*tc_cmd) {
            if (tc_spec_path.empty() == tc_preset.empty())
                throw xxzring::ValidationError("tc: give exactly one of --spec or --preset");
            xxzring::RingSpec spec = tc_spec_path.empty()
                                         ? xxzring::preset(tc_preset)
                                         : xxzring::RingSpec::from_json(read_file(tc_spec_path));
            if (tc_alpha >= 0.0) spec.alpha = tc_alpha;
            if (tc_beta >= 0.0) spec.beta = tc_beta;
            spec.validate();
            double tc = xxzring::critical_temperature(spec, parse_pair(tc_pair_text), t_lo,
                                                      t_hi, tol);
            std::cout << format_sig12(tc) << "\n";
        } else if (*preset_cmd) {
            std::cout << xxzring::preset(preset_name).to_json() << "\n";
        } else if (*validate_cmd) {
            auto spec = xxzring::RingSpec::from_json(read_file(validate_path));
            spec.validate(allow_negative);
            if (!dump_h_path.empty()) write_file(dump_h_path, hamiltonian_csv(spec));
            std::cout << "ok\n";
        }
    } catch (const xxzring::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const xxzring::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
