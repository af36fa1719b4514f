#pragma once

#include <string>
#include <vector>

#include "ssbsim/qcore.hpp"
#include "ssbsim/random.hpp"

namespace ssbsim {

/// Normalized amplitude pair (alpha, beta) of a prepared qubit. The
/// unitary-SSB measurement operators are built from these amplitudes, so the
/// pair is threaded explicitly to every SSB operation.
class QubitAmplitudes {
public:
    QubitAmplitudes(Cx alpha, Cx beta);

    Cx alpha() const { return alpha_; }
    Cx beta() const { return beta_; }

    /// arg(beta), with the convention phase == 0 when |beta| == 0.
    double phase() const;

    Ket ket() const;

    /// alpha == beta == 1/sqrt(2).
    static QubitAmplitudes balanced();

    /// Uniform modulus split with independent uniform phases.
    static QubitAmplitudes random(RandomStream& rng);

private:
    Cx alpha_;
    Cx beta_;
};

enum class MeasurementModel { Projective, UnitarySsb };

const char* to_string(MeasurementModel model);
MeasurementModel measurement_model_from_string(const std::string& name);

/// One sampled measurement: outcome label, post-measurement state, and a
/// stable tag for the operator that acted ("PI_0", "M_1", ...).
struct OutcomeRecord {
    int outcome;
    Ket posterior;
    std::string applied_op;
};

/// diag(1,0) for m=0, diag(0,1) for m=1.
Operator projector(int m);

/// The state-dependent unitary that rotates ket(amps) onto basis ray |m>.
Operator ssb_unitary(const QubitAmplitudes& amps, int m);

/// Adjoint of ssb_unitary; composing the two yields identity.
Operator ssb_inverse(const QubitAmplitudes& amps, int m);

/// U = [[0, e^{i theta}], [1, 0]] with theta = -2 arg(beta), which conjugates
/// each measurement unitary into its inverse.
Operator flipper(const QubitAmplitudes& amps);

/// Squared amplitude moduli of a normalized state.
std::vector<double> born_probabilities(const Ket& ket);

/// Draws an outcome by the Born rule and applies the model's update rule:
/// projective collapses and renormalizes, unitary-SSB rotates with no
/// renormalization. For unitary-SSB, amps must describe the measured state.
OutcomeRecord measure(const Ket& ket, const QubitAmplitudes& amps,
                      MeasurementModel model, RandomStream& rng);

/// Ensemble-average channel over both outcomes. Projective: sum of projected
/// blocks. Unitary-SSB: Born-weighted average of the rotated states, with
/// weights taken from the prepared amplitudes.
DensityMatrix nonselective_channel(const DensityMatrix& rho,
                                   const QubitAmplitudes& amps,
                                   MeasurementModel model);

/// Renormalized m-th branch of a diagonal mixture.
DensityMatrix subensemble(const DensityMatrix& rho_mixed, int m);

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

const char* to_string(BellKind kind);

/// The four maximally entangled two-qubit states in basis order
/// {|00>, |01>, |10>, |11>}.
Ket bell_state(BellKind kind);

/// 4x4 unitary acting as (1/sqrt2)[[1,1],[-1,1]] (m=0) or
/// (1/sqrt2)[[1,-1],[1,1]] (m=1) on span{|01>, |10>} and as identity on
/// span{|00>, |11>}. operator(1) is the inverse of operator(0).
Operator bell_measurement_operator(int m);

}  // namespace ssbsim
