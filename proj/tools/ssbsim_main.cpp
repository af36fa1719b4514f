// Command-line front end: `verify` checks the operator-identity catalog,
// `simulate` runs a configured experiment and writes the result document,
// `tomography` reconstructs a state from a counts CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssbsim/experiments.hpp"
#include "ssbsim/serialize.hpp"
#include "ssbsim/verify.hpp"

namespace {

using namespace ssbsim;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;
constexpr int kExitData = 4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("failed while writing output file: " + path);
    }
}

Ket named_target(const std::string& name) {
    if (name == "psi-plus") return bell_state(BellKind::PsiPlus);
    if (name == "psi-minus") return bell_state(BellKind::PsiMinus);
    if (name == "phi-plus") return bell_state(BellKind::PhiPlus);
    if (name == "phi-minus") return bell_state(BellKind::PhiMinus);
    if (name == "zero") return Ket::basis(2, 0);
    if (name == "one") return Ket::basis(2, 1);
    if (name == "plus") {
        return QubitAmplitudes::balanced().ket();
    }
    if (name == "minus") {
        Vec v(2);
        const double s = std::numbers::sqrt2 / 2.0;
        v << Cx(s, 0.0), Cx(-s, 0.0);
        return Ket(std::move(v));
    }
    throw ConfigError("target: unknown state name '" + name + "'");
}

struct SimulateArgs {
    std::string experiment = "single-qubit-null";
    std::string model = "projective";
    std::string reversal = "conditioned";
    std::uint64_t trials = 100000;
    std::optional<std::uint64_t> seed;
    std::uint64_t tomography_shots = 0;
    bool exact = false;
    bool compare_models_flag = false;
    std::string out;
    std::string format = "json";
};

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

/// Flat key=value configuration file; '#' starts a comment line.
std::map<std::string, std::string> load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file line " + std::to_string(line_number) +
                              ": expected key=value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config file line " + std::to_string(line_number) +
                              ": empty key");
        }
        if (!values.emplace(key, value).second) {
            throw ConfigError("config file line " + std::to_string(line_number) +
                              ": duplicate key '" + key + "'");
        }
    }
    return values;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        if (value.empty() || value[0] == '-') {
            throw std::invalid_argument("negative");
        }
        const std::uint64_t parsed = std::stoull(value, &consumed);
        if (consumed != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a nonnegative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

/// File values fill every option the command line did not set; flags win.
void merge_config_file(const std::string& path, const CLI::App& cmd,
                       SimulateArgs& args) {
    const auto values = load_flat_config(path);
    const auto unset = [&cmd](const std::string& flag) {
        return cmd.get_option(flag)->count() == 0;
    };
    for (const auto& [key, value] : values) {
        if (key == "experiment") {
            if (unset("--experiment")) args.experiment = value;
        } else if (key == "model") {
            if (unset("--model")) args.model = value;
        } else if (key == "reversal") {
            if (unset("--reversal")) args.reversal = value;
        } else if (key == "trials") {
            if (unset("--trials")) args.trials = parse_uint(key, value);
        } else if (key == "seed") {
            if (unset("--seed") && !args.seed) args.seed = parse_uint(key, value);
        } else if (key == "tomography-shots") {
            if (unset("--tomography-shots")) {
                args.tomography_shots = parse_uint(key, value);
            }
        } else if (key == "exact") {
            if (unset("--exact")) args.exact = parse_bool(key, value);
        } else if (key == "compare-models") {
            if (unset("--compare-models")) {
                args.compare_models_flag = parse_bool(key, value);
            }
        } else if (key == "out") {
            if (unset("--out")) args.out = value;
        } else if (key == "format") {
            if (unset("--format")) args.format = value;
        } else {
            throw ConfigError("config file: unknown key '" + key + "'");
        }
    }
}

int run_simulate(const SimulateArgs& args) {
    ExperimentConfig config;
    config.experiment = experiment_kind_from_string(args.experiment);
    config.model = measurement_model_from_string(args.model);
    config.reversal = reversal_policy_from_string(args.reversal);
    config.trials = args.trials;
    config.seed = *args.seed;
    config.tomography_shots = args.tomography_shots;
    config.exact_tomography = args.exact;
    config.validate();

    if (args.format != "json" && args.format != "csv") {
        throw ConfigError("format: must be 'json' or 'csv'");
    }
    if (args.format == "csv" && config.tomography_shots == 0) {
        throw ConfigError("format: csv output requires --tomography-shots > 0");
    }

    const ExperimentResult result = run_experiment(config);

    if (args.format == "csv") {
        // The same counts the tomography stage sampled: identical seed and
        // per-setting streams.
        const int nq = result.exact_ensemble.dim() == 2 ? 1 : 2;
        const CountsTable table =
            simulate_counts(result.exact_ensemble, all_settings(nq),
                            config.tomography_shots, config.seed);
        write_file(args.out, counts_to_csv(table));
        return kExitOk;
    }

    std::optional<ComparisonReport> comparison;
    if (args.compare_models_flag) {
        ExperimentConfig other = config;
        other.model = config.model == MeasurementModel::Projective
                          ? MeasurementModel::UnitarySsb
                          : MeasurementModel::Projective;
        comparison = compare_models(result, run_experiment(other));
    }
    write_file(args.out, canonical_json(result_document(result, comparison)));
    return kExitOk;
}

int run_verify(double tol, std::uint64_t samples, std::uint64_t seed) {
    const VerificationReport report = run_verification(tol, samples, seed);
    std::cout << canonical_json(to_json(report));
    return report.overall ? kExitOk : kExitVerifyFailed;
}

int run_tomography(const std::string& input, const std::string& target_name,
                   const std::string& out) {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file: " + input);
    }
    const CountsTable table = counts_from_csv(in);
    const int nq = table.nqubits();

    const Ket target = named_target(target_name);
    if (target.dim() != (1 << nq)) {
        throw ConfigError("target: state '" + target_name + "' does not match a " +
                          std::to_string(nq) + "-qubit counts table");
    }

    const ExpectationMap expectations = expectations_from_counts(table);
    DensityMatrix rho_hat = project_psd(linear_inversion(expectations, nq));
    const double purity_hat = purity(rho_hat);
    const double fidelity_hat = fidelity_pure(target, rho_hat);
    TomographyResult result{std::move(rho_hat), purity_hat, fidelity_hat,
                            table.shots_per_setting, "linear-inversion+psd"};

    Json doc = to_json(result);
    doc["target"] = target_name;
    write_file(out, canonical_json(doc));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Qubit measurement-model simulator: projective vs unitary-SSB collapse,\n"
        "reversal experiments, and state tomography."};
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand(
        "verify", "Check the measurement-operator identity catalog");
    double tol = 1e-12;
    std::uint64_t samples = 1000;
    std::optional<std::uint64_t> verify_seed;
    verify_cmd->add_option("--tol", tol, "Deviation tolerance");
    verify_cmd->add_option("--samples", samples, "Random amplitude pairs to test");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed");

    // simulate
    auto* simulate_cmd =
        app.add_subcommand("simulate", "Run a seeded Monte Carlo experiment");
    SimulateArgs sim;
    std::string config_path;
    simulate_cmd->add_option("--config", config_path,
                             "Flat key=value configuration file; flags override");
    simulate_cmd->add_option("--experiment", sim.experiment,
                             "single-qubit-null or bell-reversal");
    simulate_cmd->add_option("--model", sim.model, "projective or unitary-ssb");
    simulate_cmd->add_option("--reversal", sim.reversal,
                             "conditioned, unconditioned, or none");
    simulate_cmd->add_option("--trials", sim.trials, "Number of trials");
    simulate_cmd->add_option("--seed", sim.seed, "RNG seed");
    simulate_cmd->add_option("--tomography-shots", sim.tomography_shots,
                             "Shots per tomography setting (0 skips tomography)");
    simulate_cmd->add_flag("--exact", sim.exact,
                           "Reconstruct from exact expectations instead of shots");
    simulate_cmd->add_flag("--compare-models", sim.compare_models_flag,
                           "Also run the other model and attach a comparison");
    simulate_cmd->add_option("--out", sim.out, "Output path");
    simulate_cmd->add_option("--format", sim.format,
                             "json (result document) or csv (tomography counts)");

    // tomography
    auto* tomography_cmd = app.add_subcommand(
        "tomography", "Reconstruct a density matrix from a counts CSV");
    std::string tomo_input;
    std::string tomo_target;
    std::string tomo_out;
    tomography_cmd->add_option("--input", tomo_input, "Counts CSV path")->required();
    tomography_cmd->add_option("--target", tomo_target,
                               "Named target state (psi-plus, phi-minus, zero, ...)")
        ->required();
    tomography_cmd->add_option("--out", tomo_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (verify_cmd->parsed()) {
            if (!verify_seed) {
                throw ConfigError("seed is mandatory for reproducibility");
            }
            return run_verify(tol, samples, *verify_seed);
        }
        if (simulate_cmd->parsed()) {
            if (!config_path.empty()) {
                merge_config_file(config_path, *simulate_cmd, sim);
            }
            if (!sim.seed) {
                throw ConfigError("seed is mandatory for reproducibility");
            }
            if (sim.out.empty()) {
                throw ConfigError("out: an output path is required");
            }
            return run_simulate(sim);
        }
        if (tomography_cmd->parsed()) {
            return run_tomography(tomo_input, tomo_target, tomo_out);
        }
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const ContractViolation& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
