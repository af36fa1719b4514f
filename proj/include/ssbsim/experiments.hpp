#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssbsim/measurement.hpp"
#include "ssbsim/qcore.hpp"
#include "ssbsim/tomography.hpp"

namespace ssbsim {

enum class ExperimentKind { SingleQubitNull, BellReversal };
enum class ReversalPolicy { Conditioned, Unconditioned, None };

const char* to_string(ExperimentKind kind);
const char* to_string(ReversalPolicy policy);
ExperimentKind experiment_kind_from_string(const std::string& name);
ReversalPolicy reversal_policy_from_string(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::SingleQubitNull;
    MeasurementModel model = MeasurementModel::Projective;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    ReversalPolicy reversal = ReversalPolicy::Conditioned;
    std::uint64_t tomography_shots = 0;  // 0 and !exact_tomography: skip tomography
    bool exact_tomography = false;       // reconstruct from exact expectations

    void validate() const;
};

struct TrialRecord {
    std::uint64_t trial_index;
    int outcome;  // experiment (i): 1 means the detector fired
    Ket posterior;
    std::optional<Ket> reversed;
    std::string applied_op;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::map<std::string, std::uint64_t> counts;
    // Placeholder until the run fills it in; a result is never returned
    // without the real ensemble.
    DensityMatrix exact_ensemble = DensityMatrix::pure(Ket::basis(1, 0));
    std::optional<TomographyResult> tomography;
    double purity_exact = 0.0;
    double fidelity_to_target = 0.0;

    std::uint64_t kept_trials = 0;
    std::uint64_t discarded_trials = 0;
    // Ray fidelity of each kept trial's final state against the target.
    double min_kept_fidelity = 0.0;
    double max_kept_fidelity = 0.0;

    std::vector<TrialRecord> records;
};

/// The state the final ensemble is compared against: |psi>_0 for the
/// single-qubit experiment, |Psi+> for the Bell experiment.
Ket experiment_target(ExperimentKind kind);

/// Heralded |0>, beamsplitter to the balanced superposition, detector on |1>.
/// Null results get the model's measurement-to-|0> update and, unless the
/// policy is none, a second beamsplitter as the reversing operation. Fired
/// trials are counted but excluded from the reversed ensemble.
ExperimentResult run_single_qubit_null(const ExperimentConfig& config);

/// |Psi+> measured in the {|01>, |10>} subspace under either model, then
/// reversed per policy: conditioned applies the recorded operator's inverse,
/// unconditioned always applies operator(1), none stops after measurement.
ExperimentResult run_bell_reversal(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// (1/N) sum |s><s| over the selected per-trial states.
DensityMatrix ensemble_density(const std::vector<TrialRecord>& records,
                               bool use_reversed);

struct ComparisonReport {
    double chi_square = 0.0;
    double p_value = 1.0;
    int dof = 0;
    double purity_diff = 0.0;
    double fidelity_diff = 0.0;
    double p_threshold = 0.01;
    double diff_threshold = 0.01;
    bool indistinguishable = false;

    const char* verdict() const {
        return indistinguishable ? "indistinguishable" : "distinguishable";
    }
};

/// Chi-square homogeneity test on the outcome counts plus absolute purity and
/// fidelity differences. Thresholds are fixed constants echoed in the report.
ComparisonReport compare_models(const ExperimentResult& a,
                                const ExperimentResult& b);

}  // namespace ssbsim
