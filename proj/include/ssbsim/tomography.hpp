#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssbsim/qcore.hpp"
#include "ssbsim/random.hpp"

namespace ssbsim {

enum class PauliAxis { X, Y, Z };

char to_char(PauliAxis axis);
PauliAxis pauli_axis_from_char(char c);

/// One measurement basis per qubit, e.g. {Z} or {Z, X}.
struct PauliSetting {
    std::vector<PauliAxis> axes;

    int nqubits() const { return static_cast<int>(axes.size()); }
    std::string label() const;
};

/// The informationally complete schedule: 3 settings for one qubit, the 9
/// axis pairs for two.
std::vector<PauliSetting> all_settings(int nqubits);

struct CountsRow {
    PauliSetting setting;
    std::vector<int> outcome;  // one +1/-1 eigenvalue per qubit
    std::uint64_t count;
};

/// Tally of sampled eigenvalue tuples, `shots_per_setting` draws per setting.
struct CountsTable {
    std::vector<CountsRow> rows;
    std::uint64_t shots_per_setting = 0;

    int nqubits() const;
};

using ExpectationMap = std::map<std::string, double>;

Operator pauli_operator(PauliAxis axis);

/// Matrix for labels like "Z", "XI", "ZY" ('I' is allowed per position).
Mat pauli_string_matrix(const std::string& label);

/// Labels of every nontrivial Pauli string on nqubits, in canonical order.
std::vector<std::string> nontrivial_pauli_labels(int nqubits);

/// Draws `shots` outcomes per setting from the exact Born distribution over
/// the commuting eigenbasis of each Pauli string. Per-setting streams are
/// derived from (seed, kTomographyStreamBase + setting index).
CountsTable simulate_counts(const DensityMatrix& rho,
                            const std::vector<PauliSetting>& settings,
                            std::uint64_t shots, std::uint64_t seed);

/// Empirical means of eigenvalue products for every Pauli string the settings
/// reach, marginals included (e.g. "ZI" pooled over the (Z,*) settings).
ExpectationMap expectations_from_counts(const CountsTable& counts);

/// Exact expectations Tr(rho P) for every nontrivial Pauli string.
ExpectationMap exact_expectations(const DensityMatrix& rho);

/// (1/2^n) sum_P <P> P. Hermitian with unit trace by construction, possibly
/// not PSD. Throws IncompleteDataError naming any missing strings.
Mat linear_inversion(const ExpectationMap& expectations, int nqubits);

/// Eigenvalue clipping: zero out negative eigenvalues in ascending order,
/// redistributing their mass uniformly over the remaining ones.
DensityMatrix project_psd(const Mat& h);

struct TomographyResult {
    DensityMatrix rho_hat;
    double purity_hat;
    double fidelity_hat;
    std::uint64_t shots_per_setting;  // 0 == reconstructed from exact expectations
    std::string method;
};

/// Full chain: counts (or exact expectations when shots == 0), linear
/// inversion, PSD projection, then purity and fidelity against the target.
TomographyResult tomography_pipeline(const DensityMatrix& rho_source,
                                     const Ket& target, std::uint64_t shots,
                                     std::uint64_t seed);

}  // namespace ssbsim
