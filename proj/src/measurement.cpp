#include "ssbsim/measurement.hpp"

#include <cmath>
#include <numbers>

namespace ssbsim {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void require_outcome_label(int m, const char* where) {
    if (m != 0 && m != 1) {
        throw ContractViolation(std::string(where) + ": outcome label must be 0 or 1");
    }
}

}  // namespace

QubitAmplitudes::QubitAmplitudes(Cx alpha, Cx beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw ContractViolation("QubitAmplitudes: non-finite amplitude");
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
        throw ContractViolation("QubitAmplitudes: |alpha|^2 + |beta|^2 must be 1");
    }
}

double QubitAmplitudes::phase() const {
    if (std::abs(beta_) == 0.0) {
        return 0.0;
    }
    return std::arg(beta_);
}

Ket QubitAmplitudes::ket() const {
    Vec v(2);
    v << alpha_, beta_;
    return Ket(std::move(v));
}

QubitAmplitudes QubitAmplitudes::balanced() {
    return QubitAmplitudes(Cx(kInvSqrt2, 0.0), Cx(kInvSqrt2, 0.0));
}

QubitAmplitudes QubitAmplitudes::random(RandomStream& rng) {
    const double u = rng.uniform();
    const double phase_a = 2.0 * std::numbers::pi * rng.uniform();
    const double phase_b = 2.0 * std::numbers::pi * rng.uniform();
    return QubitAmplitudes(std::polar(std::sqrt(u), phase_a),
                           std::polar(std::sqrt(1.0 - u), phase_b));
}

const char* to_string(MeasurementModel model) {
    return model == MeasurementModel::Projective ? "projective" : "unitary-ssb";
}

MeasurementModel measurement_model_from_string(const std::string& name) {
    if (name == "projective") {
        return MeasurementModel::Projective;
    }
    if (name == "unitary-ssb") {
        return MeasurementModel::UnitarySsb;
    }
    throw ConfigError("unknown measurement model: " + name);
}

Operator projector(int m) {
    require_outcome_label(m, "projector");
    Mat p = Mat::Zero(2, 2);
    p(m, m) = Cx(1.0, 0.0);
    return Operator(std::move(p));
}

Operator ssb_unitary(const QubitAmplitudes& amps, int m) {
    require_outcome_label(m, "ssb_unitary");
    const Cx a = amps.alpha();
    const Cx b = amps.beta();
    Mat u(2, 2);
    if (m == 0) {
        u << std::conj(a), std::conj(b),
             -b, a;
    } else {
        u << b, -a,
             std::conj(a), std::conj(b);
    }
    return Operator(std::move(u));
}

Operator ssb_inverse(const QubitAmplitudes& amps, int m) {
    return ssb_unitary(amps, m).adjoint();
}

Operator flipper(const QubitAmplitudes& amps) {
    const double theta = -2.0 * amps.phase();
    Mat u(2, 2);
    u << Cx(0.0, 0.0), std::polar(1.0, theta),
         Cx(1.0, 0.0), Cx(0.0, 0.0);
    return Operator(std::move(u));
}

std::vector<double> born_probabilities(const Ket& ket) {
    if (!ket.is_normalized()) {
        throw ContractViolation("born_probabilities: state not normalized");
    }
    std::vector<double> probs(static_cast<std::size_t>(ket.dim()));
    for (int k = 0; k < ket.dim(); ++k) {
        probs[static_cast<std::size_t>(k)] = std::norm(ket.amp(k));
    }
    return probs;
}

OutcomeRecord measure(const Ket& ket, const QubitAmplitudes& amps,
                      MeasurementModel model, RandomStream& rng) {
    if (ket.dim() != 2) {
        throw ContractViolation("measure: single-qubit states only");
    }
    if (!ket.is_normalized()) {
        throw ContractViolation("measure: state not normalized");
    }
    if (model == MeasurementModel::UnitarySsb &&
        ray_fidelity(ket, amps.ket()) < 1.0 - 1e-9) {
        throw ContractViolation(
            "measure: unitary-ssb operators were built for a different state");
    }

    const auto probs = born_probabilities(ket);
    const int m = static_cast<int>(rng.sample(probs));

    if (model == MeasurementModel::Projective) {
        return OutcomeRecord{m, apply_operator(projector(m), ket).normalized(),
                             m == 0 ? "PI_0" : "PI_1"};
    }
    return OutcomeRecord{m, apply_operator(ssb_unitary(amps, m), ket),
                         m == 0 ? "M_0" : "M_1"};
}

DensityMatrix nonselective_channel(const DensityMatrix& rho,
                                   const QubitAmplitudes& amps,
                                   MeasurementModel model) {
    if (rho.dim() != 2) {
        throw ContractViolation("nonselective_channel: single-qubit states only");
    }
    if (model == MeasurementModel::Projective) {
        Mat out = Mat::Zero(2, 2);
        for (int m = 0; m < 2; ++m) {
            const Mat p = projector(m).matrix();
            out += p * rho.matrix() * p.adjoint();
        }
        return DensityMatrix::from_matrix(std::move(out));
    }
    const double weights[2] = {std::norm(amps.alpha()), std::norm(amps.beta())};
    Mat out = Mat::Zero(2, 2);
    for (int m = 0; m < 2; ++m) {
        const Mat u = ssb_unitary(amps, m).matrix();
        out += weights[m] * (u * rho.matrix() * u.adjoint());
    }
    return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix subensemble(const DensityMatrix& rho_mixed, int m) {
    require_outcome_label(m, "subensemble");
    const Mat& r = rho_mixed.matrix();
    Mat off = r;
    off.diagonal().setZero();
    if (max_abs(off) > kHermTol) {
        throw ContractViolation("subensemble: input mixture is not diagonal");
    }
    if (r(m, m).real() <= 0.0) {
        throw DegenerateConditioningError(
            "subensemble: conditioning on a zero-probability branch");
    }
    Mat out = Mat::Zero(r.rows(), r.cols());
    out(m, m) = Cx(1.0, 0.0);
    return DensityMatrix::from_matrix(std::move(out));
}

const char* to_string(BellKind kind) {
    switch (kind) {
        case BellKind::PsiPlus: return "psi-plus";
        case BellKind::PsiMinus: return "psi-minus";
        case BellKind::PhiPlus: return "phi-plus";
        case BellKind::PhiMinus: return "phi-minus";
    }
    throw ContractViolation("to_string: invalid BellKind");
}

Ket bell_state(BellKind kind) {
    Vec v = Vec::Zero(4);
    const Cx s(kInvSqrt2, 0.0);
    switch (kind) {
        case BellKind::PsiPlus:
            v(1) = s;
            v(2) = s;
            break;
        case BellKind::PsiMinus:
            v(1) = s;
            v(2) = -s;
            break;
        case BellKind::PhiPlus:
            v(0) = s;
            v(3) = s;
            break;
        case BellKind::PhiMinus:
            v(0) = s;
            v(3) = -s;
            break;
    }
    return Ket(std::move(v));
}

Operator bell_measurement_operator(int m) {
    require_outcome_label(m, "bell_measurement_operator");
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = Cx(1.0, 0.0);
    u(3, 3) = Cx(1.0, 0.0);
    const Cx s(kInvSqrt2, 0.0);
    if (m == 0) {
        u(1, 1) = s;
        u(1, 2) = s;
        u(2, 1) = -s;
        u(2, 2) = s;
    } else {
        u(1, 1) = s;
        u(1, 2) = -s;
        u(2, 1) = s;
        u(2, 2) = s;
    }
    return Operator(std::move(u));
}

}  // namespace ssbsim
