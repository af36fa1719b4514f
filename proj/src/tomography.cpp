#include "ssbsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ssbsim {

namespace {

int qubits_for_dim(int dim, const char* where) {
    if (dim == 2) {
        return 1;
    }
    if (dim == 4) {
        return 2;
    }
    throw ContractViolation(std::string(where) + ": expected a 2- or 4-dimensional state");
}

Mat eigen_projector(PauliAxis axis, int sign) {
    return 0.5 * (Mat::Identity(2, 2) +
                  static_cast<double>(sign) * pauli_operator(axis).matrix());
}

/// Outcome tuples in canonical order: first qubit varies slowest,
/// +1 before -1.
std::vector<std::vector<int>> outcome_tuples(int nqubits) {
    std::vector<std::vector<int>> tuples;
    const int total = 1 << nqubits;
    tuples.reserve(static_cast<std::size_t>(total));
    for (int mask = 0; mask < total; ++mask) {
        std::vector<int> t(static_cast<std::size_t>(nqubits));
        for (int q = 0; q < nqubits; ++q) {
            const int bit = (mask >> (nqubits - 1 - q)) & 1;
            t[static_cast<std::size_t>(q)] = bit == 0 ? +1 : -1;
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

Mat outcome_projector(const PauliSetting& setting, const std::vector<int>& outcome) {
    Mat proj = eigen_projector(setting.axes[0], outcome[0]);
    for (std::size_t q = 1; q < setting.axes.size(); ++q) {
        const Mat next = eigen_projector(setting.axes[q], outcome[q]);
        Mat grown(proj.rows() * 2, proj.cols() * 2);
        for (Eigen::Index i = 0; i < proj.rows(); ++i) {
            for (Eigen::Index k = 0; k < proj.cols(); ++k) {
                grown.block(i * 2, k * 2, 2, 2) = proj(i, k) * next;
            }
        }
        proj = std::move(grown);
    }
    return proj;
}

void require_complete_schedule(const std::vector<PauliSetting>& settings, int nqubits) {
    std::set<std::string> seen;
    for (const auto& s : settings) {
        if (s.nqubits() != nqubits) {
            throw ContractViolation("simulate_counts: setting width does not match the state");
        }
        seen.insert(s.label());
    }
    for (const auto& s : all_settings(nqubits)) {
        if (seen.count(s.label()) == 0) {
            throw ContractViolation("simulate_counts: schedule is missing setting " + s.label());
        }
    }
}

}  // namespace

char to_char(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    throw ContractViolation("to_char: invalid PauliAxis");
}

PauliAxis pauli_axis_from_char(char c) {
    switch (c) {
        case 'X': return PauliAxis::X;
        case 'Y': return PauliAxis::Y;
        case 'Z': return PauliAxis::Z;
        default:
            throw DataError(std::string("invalid Pauli axis character: ") + c);
    }
}

std::string PauliSetting::label() const {
    std::string out;
    for (PauliAxis a : axes) {
        out.push_back(to_char(a));
    }
    return out;
}

std::vector<PauliSetting> all_settings(int nqubits) {
    static const PauliAxis kAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::vector<PauliSetting> out;
    if (nqubits == 1) {
        for (PauliAxis a : kAxes) {
            out.push_back(PauliSetting{{a}});
        }
        return out;
    }
    if (nqubits == 2) {
        for (PauliAxis a : kAxes) {
            for (PauliAxis b : kAxes) {
                out.push_back(PauliSetting{{a, b}});
            }
        }
        return out;
    }
    throw ContractViolation("all_settings: only 1 or 2 qubits supported");
}

int CountsTable::nqubits() const {
    if (rows.empty()) {
        throw DataError("CountsTable: empty table");
    }
    return rows.front().setting.nqubits();
}

Operator pauli_operator(PauliAxis axis) {
    Mat m(2, 2);
    switch (axis) {
        case PauliAxis::X:
            m << Cx(0, 0), Cx(1, 0),
                 Cx(1, 0), Cx(0, 0);
            break;
        case PauliAxis::Y:
            m << Cx(0, 0), Cx(0, -1),
                 Cx(0, 1), Cx(0, 0);
            break;
        case PauliAxis::Z:
            m << Cx(1, 0), Cx(0, 0),
                 Cx(0, 0), Cx(-1, 0);
            break;
    }
    return Operator(std::move(m));
}

Mat pauli_string_matrix(const std::string& label) {
    if (label.empty()) {
        throw ContractViolation("pauli_string_matrix: empty label");
    }
    Mat acc = Mat::Identity(1, 1);
    for (char c : label) {
        Mat factor;
        if (c == 'I') {
            factor = Mat::Identity(2, 2);
        } else {
            factor = pauli_operator(pauli_axis_from_char(c)).matrix();
        }
        Mat grown(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index i = 0; i < acc.rows(); ++i) {
            for (Eigen::Index k = 0; k < acc.cols(); ++k) {
                grown.block(i * 2, k * 2, 2, 2) = acc(i, k) * factor;
            }
        }
        acc = std::move(grown);
    }
    return acc;
}

std::vector<std::string> nontrivial_pauli_labels(int nqubits) {
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> out;
    if (nqubits == 1) {
        out = {"X", "Y", "Z"};
        return out;
    }
    if (nqubits == 2) {
        for (char a : kLetters) {
            for (char b : kLetters) {
                if (a == 'I' && b == 'I') {
                    continue;
                }
                out.push_back(std::string{a, b});
            }
        }
        return out;
    }
    throw ContractViolation("nontrivial_pauli_labels: only 1 or 2 qubits supported");
}

CountsTable simulate_counts(const DensityMatrix& rho,
                            const std::vector<PauliSetting>& settings,
                            std::uint64_t shots, std::uint64_t seed) {
    const int nq = qubits_for_dim(rho.dim(), "simulate_counts");
    require_complete_schedule(settings, nq);
    if (shots == 0) {
        throw ContractViolation("simulate_counts: shots must be positive");
    }

    CountsTable table;
    table.shots_per_setting = shots;
    const auto tuples = outcome_tuples(nq);

    for (std::size_t idx = 0; idx < settings.size(); ++idx) {
        const auto& setting = settings[idx];
        std::vector<double> probs;
        probs.reserve(tuples.size());
        for (const auto& outcome : tuples) {
            const Cx p = (rho.matrix() * outcome_projector(setting, outcome)).trace();
            probs.push_back(std::max(p.real(), 0.0));
        }

        std::vector<std::uint64_t> tally(tuples.size(), 0);
        RandomStream stream(seed, kTomographyStreamBase + idx);
        for (std::uint64_t s = 0; s < shots; ++s) {
            ++tally[stream.sample(probs)];
        }
        for (std::size_t o = 0; o < tuples.size(); ++o) {
            table.rows.push_back(CountsRow{setting, tuples[o], tally[o]});
        }
    }
    return table;
}

ExpectationMap expectations_from_counts(const CountsTable& counts) {
    const int nq = counts.nqubits();
    if (counts.shots_per_setting == 0) {
        throw DataError("expectations_from_counts: zero shots per setting");
    }

    struct Accumulator {
        double weighted_sum = 0.0;
        std::uint64_t shots = 0;
    };
    std::map<std::string, Accumulator> acc;

    auto add = [&acc](const std::string& key, int product, std::uint64_t count) {
        auto& slot = acc[key];
        slot.weighted_sum += static_cast<double>(product) * static_cast<double>(count);
        slot.shots += count;
    };

    for (const auto& row : counts.rows) {
        if (row.setting.nqubits() != nq ||
            static_cast<int>(row.outcome.size()) != nq) {
            throw DataError("expectations_from_counts: inconsistent row width");
        }
        const std::string label = row.setting.label();
        if (nq == 1) {
            add(label, row.outcome[0], row.count);
        } else {
            add(label, row.outcome[0] * row.outcome[1], row.count);
            add(std::string{label[0], 'I'}, row.outcome[0], row.count);
            add(std::string{'I', label[1]}, row.outcome[1], row.count);
        }
    }

    ExpectationMap out;
    for (const auto& [key, slot] : acc) {
        if (slot.shots == 0) {
            throw DataError("expectations_from_counts: no shots recorded for " + key);
        }
        out[key] = slot.weighted_sum / static_cast<double>(slot.shots);
    }
    return out;
}

ExpectationMap exact_expectations(const DensityMatrix& rho) {
    const int nq = qubits_for_dim(rho.dim(), "exact_expectations");
    ExpectationMap out;
    for (const auto& label : nontrivial_pauli_labels(nq)) {
        out[label] = (rho.matrix() * pauli_string_matrix(label)).trace().real();
    }
    return out;
}

Mat linear_inversion(const ExpectationMap& expectations, int nqubits) {
    if (nqubits != 1 && nqubits != 2) {
        throw ContractViolation("linear_inversion: only 1 or 2 qubits supported");
    }
    const auto required = nontrivial_pauli_labels(nqubits);

    std::vector<std::string> missing;
    for (const auto& label : required) {
        if (expectations.count(label) == 0) {
            missing.push_back(label);
        }
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "linear_inversion: missing Pauli expectations:";
        for (const auto& label : missing) {
            msg << ' ' << label;
        }
        throw IncompleteDataError(msg.str());
    }

    const int dim = 1 << nqubits;
    Mat acc = Mat::Identity(dim, dim);  // identity expectation fixed to 1
    for (const auto& label : required) {
        acc += expectations.at(label) * pauli_string_matrix(label);
    }
    return acc / static_cast<double>(dim);
}

DensityMatrix project_psd(const Mat& h) {
    if (h.rows() == 0 || h.rows() != h.cols()) {
        throw ContractViolation("project_psd: matrix must be square and nonempty");
    }
    if (max_abs(h - h.adjoint()) > 1e-9) {
        throw ContractViolation("project_psd: input not Hermitian");
    }
    if (std::abs(h.trace() - Cx(1.0, 0.0)) > 1e-9) {
        throw ContractViolation("project_psd: trace deviates from 1 beyond 1e-9");
    }

    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    Eigen::VectorXd evals = solver.eigenvalues();  // ascending
    const Eigen::Index d = evals.size();
    for (Eigen::Index i = 0; i < d; ++i) {
        if (evals(i) >= 0.0) {
            continue;
        }
        if (i == d - 1) {
            throw ContractViolation("project_psd: total mass is negative");
        }
        const double mass = evals(i);
        evals(i) = 0.0;
        const double share = mass / static_cast<double>(d - 1 - i);
        for (Eigen::Index j = i + 1; j < d; ++j) {
            evals(j) += share;
        }
    }
    // exact unit trace, absorbing the <=1e-9 input slack
    evals /= evals.sum();

    Mat out = solver.eigenvectors() * evals.asDiagonal() *
              solver.eigenvectors().adjoint();
    return DensityMatrix::from_matrix(std::move(out));
}

TomographyResult tomography_pipeline(const DensityMatrix& rho_source,
                                     const Ket& target, std::uint64_t shots,
                                     std::uint64_t seed) {
    const int nq = qubits_for_dim(rho_source.dim(), "tomography_pipeline");
    if (target.dim() != rho_source.dim()) {
        throw ContractViolation("tomography_pipeline: target dimension mismatch");
    }

    ExpectationMap expectations;
    if (shots == 0) {
        expectations = exact_expectations(rho_source);
    } else {
        const auto counts =
            simulate_counts(rho_source, all_settings(nq), shots, seed);
        expectations = expectations_from_counts(counts);
    }

    DensityMatrix rho_hat = project_psd(linear_inversion(expectations, nq));
    const double purity_hat = purity(rho_hat);
    const double fidelity_hat = fidelity_pure(target, rho_hat);
    return TomographyResult{std::move(rho_hat), purity_hat, fidelity_hat, shots,
                            "linear-inversion+psd"};
}

}  // namespace ssbsim
