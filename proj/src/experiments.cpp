#include "ssbsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

namespace ssbsim {

namespace {

struct FidelityStats {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();

    void update(double f) {
        min = std::min(min, f);
        max = std::max(max, f);
    }
};

const Ket& final_state(const TrialRecord& record) {
    return record.reversed ? *record.reversed : record.posterior;
}

std::optional<TomographyResult> maybe_run_tomography(
    const ExperimentConfig& config, const DensityMatrix& ensemble,
    const Ket& target) {
    if (config.exact_tomography) {
        return tomography_pipeline(ensemble, target, 0, config.seed);
    }
    if (config.tomography_shots > 0) {
        return tomography_pipeline(ensemble, target, config.tomography_shots,
                                   config.seed);
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
    return kind == ExperimentKind::SingleQubitNull ? "single-qubit-null"
                                                   : "bell-reversal";
}

const char* to_string(ReversalPolicy policy) {
    switch (policy) {
        case ReversalPolicy::Conditioned: return "conditioned";
        case ReversalPolicy::Unconditioned: return "unconditioned";
        case ReversalPolicy::None: return "none";
    }
    throw ContractViolation("to_string: invalid ReversalPolicy");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "single-qubit-null") {
        return ExperimentKind::SingleQubitNull;
    }
    if (name == "bell-reversal") {
        return ExperimentKind::BellReversal;
    }
    throw ConfigError("unknown experiment: " + name);
}

ReversalPolicy reversal_policy_from_string(const std::string& name) {
    if (name == "conditioned") {
        return ReversalPolicy::Conditioned;
    }
    if (name == "unconditioned") {
        return ReversalPolicy::Unconditioned;
    }
    if (name == "none") {
        return ReversalPolicy::None;
    }
    throw ConfigError("unknown reversal policy: " + name);
}

void ExperimentConfig::validate() const {
    if (trials == 0) {
        throw ConfigError("trials: must be at least 1");
    }
    if (trials >= kTomographyStreamBase) {
        throw ConfigError("trials: exceeds the per-trial stream id space");
    }
}

Ket experiment_target(ExperimentKind kind) {
    if (kind == ExperimentKind::SingleQubitNull) {
        return QubitAmplitudes::balanced().ket();
    }
    return bell_state(BellKind::PsiPlus);
}

ExperimentResult run_single_qubit_null(const ExperimentConfig& config) {
    if (config.experiment != ExperimentKind::SingleQubitNull) {
        throw ContractViolation("run_single_qubit_null: wrong experiment kind");
    }
    config.validate();

    const QubitAmplitudes amps = QubitAmplitudes::balanced();
    const Ket target = amps.ket();
    const Operator beamsplitter = ssb_unitary(amps, 1);   // M_1 |0> = |psi>_0
    const Operator reverser = ssb_inverse(amps, 0);       // (M_0)^{-1} = M_1
    const Ket heralded = Ket::basis(2, 0);
    const bool reverse = config.reversal != ReversalPolicy::None;

    ExperimentResult result;
    result.config = config;
    result.records.reserve(config.trials);
    result.counts["fired"] = 0;
    result.counts["null"] = 0;

    FidelityStats stats;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        RandomStream stream(config.seed, i);
        const Ket prepared = apply_operator(beamsplitter, heralded);
        OutcomeRecord rec = measure(prepared, amps, config.model, stream);

        TrialRecord trial{i, rec.outcome, std::move(rec.posterior), std::nullopt,
                          std::move(rec.applied_op)};
        if (rec.outcome == 1) {
            ++result.counts["fired"];
        } else {
            ++result.counts["null"];
            if (reverse) {
                trial.reversed = apply_operator(reverser, trial.posterior);
            }
            stats.update(ray_fidelity(final_state(trial), target));
        }
        result.records.push_back(std::move(trial));
    }

    std::vector<TrialRecord> kept;
    kept.reserve(result.counts["null"]);
    for (const auto& r : result.records) {
        if (r.outcome == 0) {
            kept.push_back(r);
        }
    }
    if (kept.empty()) {
        throw EmptyEnsembleError(
            "run_single_qubit_null: every trial fired the detector");
    }

    result.kept_trials = kept.size();
    result.discarded_trials = config.trials - kept.size();
    result.min_kept_fidelity = stats.min;
    result.max_kept_fidelity = stats.max;
    result.exact_ensemble = ensemble_density(kept, reverse);
    result.purity_exact = purity(result.exact_ensemble);
    result.fidelity_to_target = fidelity_pure(target, result.exact_ensemble);
    result.tomography = maybe_run_tomography(config, result.exact_ensemble, target);
    return result;
}

ExperimentResult run_bell_reversal(const ExperimentConfig& config) {
    if (config.experiment != ExperimentKind::BellReversal) {
        throw ContractViolation("run_bell_reversal: wrong experiment kind");
    }
    config.validate();

    const Ket psi_plus = bell_state(BellKind::PsiPlus);
    // Outcome m=0 lands on |01> (basis index 1), m=1 on |10> (index 2).
    const double probs[2] = {std::norm(psi_plus.amp(1)), std::norm(psi_plus.amp(2))};
    const int basis_index[2] = {1, 2};
    const bool projective = config.model == MeasurementModel::Projective;

    ExperimentResult result;
    result.config = config;
    result.records.reserve(config.trials);
    result.counts["m0"] = 0;
    result.counts["m1"] = 0;

    FidelityStats stats;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        RandomStream stream(config.seed, i);
        const int m = static_cast<int>(stream.sample(probs));
        ++result.counts[m == 0 ? "m0" : "m1"];

        Ket posterior = [&] {
            if (projective) {
                Mat proj = Mat::Zero(4, 4);
                proj(basis_index[m], basis_index[m]) = Cx(1.0, 0.0);
                return apply_operator(Operator(std::move(proj)), psi_plus).normalized();
            }
            return apply_operator(bell_measurement_operator(m), psi_plus);
        }();
        TrialRecord trial{i, m, std::move(posterior), std::nullopt,
                          std::string(projective ? "PI_AB_" : "M_AB_") +
                              static_cast<char>('0' + m)};

        switch (config.reversal) {
            case ReversalPolicy::Conditioned:
                trial.reversed =
                    apply_operator(bell_measurement_operator(1 - m), trial.posterior);
                break;
            case ReversalPolicy::Unconditioned:
                trial.reversed =
                    apply_operator(bell_measurement_operator(1), trial.posterior);
                break;
            case ReversalPolicy::None:
                break;
        }
        stats.update(ray_fidelity(final_state(trial), psi_plus));
        result.records.push_back(std::move(trial));
    }

    result.kept_trials = config.trials;
    result.discarded_trials = 0;
    result.min_kept_fidelity = stats.min;
    result.max_kept_fidelity = stats.max;

    if (projective && config.reversal == ReversalPolicy::None) {
        // The unselected projective ensemble is analytic: both projected
        // blocks of |Psi+><Psi+|, no sampling noise.
        const Mat rho = psi_plus.amps() * psi_plus.amps().adjoint();
        Mat mixed = Mat::Zero(4, 4);
        for (int m = 0; m < 2; ++m) {
            Mat proj = Mat::Zero(4, 4);
            proj(basis_index[m], basis_index[m]) = Cx(1.0, 0.0);
            mixed += proj * rho * proj;
        }
        result.exact_ensemble = DensityMatrix::from_matrix(std::move(mixed));
    } else {
        result.exact_ensemble =
            ensemble_density(result.records, config.reversal != ReversalPolicy::None);
    }

    result.purity_exact = purity(result.exact_ensemble);
    result.fidelity_to_target = fidelity_pure(psi_plus, result.exact_ensemble);
    result.tomography = maybe_run_tomography(config, result.exact_ensemble, psi_plus);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    return config.experiment == ExperimentKind::SingleQubitNull
               ? run_single_qubit_null(config)
               : run_bell_reversal(config);
}

DensityMatrix ensemble_density(const std::vector<TrialRecord>& records,
                               bool use_reversed) {
    if (records.empty()) {
        throw EmptyEnsembleError("ensemble_density: no records to average");
    }
    auto select = [use_reversed](const TrialRecord& record) -> const Ket& {
        if (!use_reversed) {
            return record.posterior;
        }
        if (!record.reversed) {
            throw ContractViolation("ensemble_density: record has no reversed state");
        }
        return *record.reversed;
    };
    const int dim = select(records.front()).dim();
    Mat acc = Mat::Zero(dim, dim);
    for (const auto& record : records) {
        const Ket& state = select(record);
        if (state.dim() != dim) {
            throw ContractViolation("ensemble_density: mixed dimensions");
        }
        acc += state.amps() * state.amps().adjoint();
    }
    return DensityMatrix::from_matrix(acc / static_cast<double>(records.size()));
}

ComparisonReport compare_models(const ExperimentResult& a,
                                const ExperimentResult& b) {
    if (a.config.experiment != b.config.experiment) {
        throw ContractViolation("compare_models: different experiments");
    }
    if (a.config.trials != b.config.trials) {
        throw ContractViolation("compare_models: different trial counts");
    }
    if (a.counts.size() != b.counts.size() ||
        !std::equal(a.counts.begin(), a.counts.end(), b.counts.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; })) {
        throw ContractViolation("compare_models: outcome categories differ");
    }

    ComparisonReport report;

    // Homogeneity test for the two count vectors against a shared multinomial.
    const double row_a = static_cast<double>(a.config.trials);
    const double row_b = static_cast<double>(b.config.trials);
    const double total = row_a + row_b;
    int live_columns = 0;
    for (const auto& [key, count_a] : a.counts) {
        const double oa = static_cast<double>(count_a);
        const double ob = static_cast<double>(b.counts.at(key));
        const double column = oa + ob;
        if (column == 0.0) {
            continue;
        }
        ++live_columns;
        const double ea = row_a * column / total;
        const double eb = row_b * column / total;
        report.chi_square += (oa - ea) * (oa - ea) / ea;
        report.chi_square += (ob - eb) * (ob - eb) / eb;
    }
    report.dof = std::max(live_columns - 1, 0);
    if (report.dof == 0 || report.chi_square <= 0.0) {
        report.p_value = 1.0;
    } else {
        boost::math::chi_squared dist(report.dof);
        report.p_value = boost::math::cdf(boost::math::complement(dist, report.chi_square));
    }

    report.purity_diff = std::abs(a.purity_exact - b.purity_exact);
    report.fidelity_diff = std::abs(a.fidelity_to_target - b.fidelity_to_target);
    report.indistinguishable = report.p_value >= report.p_threshold &&
                               report.purity_diff < report.diff_threshold &&
                               report.fidelity_diff < report.diff_threshold;
    return report;
}

}  // namespace ssbsim
