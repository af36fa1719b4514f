#include "ssbsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ssbsim/measurement.hpp"
#include "ssbsim/qcore.hpp"
#include "ssbsim/random.hpp"

namespace ssbsim {

namespace {

constexpr double kNonProjectorFloor = 1e-6;
constexpr double kBalancedTol = 1e-15;

struct Catalog {
    std::vector<VerificationCheck> checks;

    void add_deviation(const std::string& name, double deviation, double tol) {
        checks.push_back({name, deviation, tol, "max_deviation_le_tol",
                          deviation <= tol});
    }

    void add_magnitude(const std::string& name, double magnitude, double floor) {
        checks.push_back({name, magnitude, floor, "min_magnitude_gt_tol",
                          magnitude > floor});
    }
};

double basis_map_deviation(const QubitAmplitudes& amps, int m) {
    const Ket mapped = apply_operator(ssb_unitary(amps, m), amps.ket());
    return (mapped.amps() - Ket::basis(2, m).amps()).cwiseAbs().maxCoeff();
}

}  // namespace

VerificationReport run_verification(double tol, std::uint64_t samples,
                                    std::uint64_t seed) {
    if (tol <= 0.0) {
        throw ContractViolation("run_verification: tolerance must be positive");
    }
    if (samples == 0) {
        throw ContractViolation("run_verification: samples must be positive");
    }

    RandomStream rng(seed, 0);
    const Mat identity2 = Mat::Identity(2, 2);

    double m_unitary[2] = {0.0, 0.0};
    double m_inverse[2] = {0.0, 0.0};
    double flipper_dev[2] = {0.0, 0.0};
    double flipper_real_dev[2] = {0.0, 0.0};
    double alpha_flipper_m1_dev = 0.0;
    double basis_dev[2] = {0.0, 0.0};
    double m0m1_min = std::numeric_limits<double>::infinity();
    double m1m0_min = std::numeric_limits<double>::infinity();
    double sum_min = std::numeric_limits<double>::infinity();

    for (std::uint64_t i = 0; i < samples; ++i) {
        const QubitAmplitudes amps = QubitAmplitudes::random(rng);
        const Operator m0 = ssb_unitary(amps, 0);
        const Operator m1 = ssb_unitary(amps, 1);
        const Operator u = flipper(amps);

        for (int m = 0; m < 2; ++m) {
            const Operator& mm = m == 0 ? m0 : m1;
            m_unitary[m] = std::max(
                m_unitary[m],
                max_abs(mm.matrix().adjoint() * mm.matrix() - identity2));
            m_inverse[m] = std::max(
                m_inverse[m],
                max_abs(ssb_inverse(amps, m).matrix() * mm.matrix() - identity2));
            flipper_dev[m] = std::max(
                flipper_dev[m],
                max_abs(u.matrix() * mm.matrix() * u.matrix().adjoint() -
                        ssb_inverse(amps, m).matrix()));
            basis_dev[m] = std::max(basis_dev[m], basis_map_deviation(amps, m));
        }

        // The beta-phase flipper fails to invert M1 once the amplitudes carry
        // independent phases; theta = 2 arg(alpha) is the phase that works.
        {
            Mat u_alpha(2, 2);
            u_alpha << Cx(0, 0), std::polar(1.0, 2.0 * std::arg(amps.alpha())),
                       Cx(1, 0), Cx(0, 0);
            alpha_flipper_m1_dev = std::max(
                alpha_flipper_m1_dev,
                max_abs(u_alpha * m1.matrix() * u_alpha.adjoint() -
                        ssb_inverse(amps, 1).matrix()));
        }

        // Same identities over a real amplitude pair (random signs), the
        // regime the experiments operate in.
        {
            const double p = rng.uniform();
            const double sign_a = rng.uniform() < 0.5 ? 1.0 : -1.0;
            const double sign_b = rng.uniform() < 0.5 ? 1.0 : -1.0;
            const QubitAmplitudes real_amps(Cx(sign_a * std::sqrt(p), 0.0),
                                            Cx(sign_b * std::sqrt(1.0 - p), 0.0));
            const Operator u_real = flipper(real_amps);
            for (int m = 0; m < 2; ++m) {
                flipper_real_dev[m] = std::max(
                    flipper_real_dev[m],
                    max_abs(u_real.matrix() * ssb_unitary(real_amps, m).matrix() *
                                u_real.matrix().adjoint() -
                            ssb_inverse(real_amps, m).matrix()));
            }
        }

        m0m1_min = std::min(m0m1_min, max_abs(m0.matrix() * m1.matrix()));
        m1m0_min = std::min(m1m0_min, max_abs(m1.matrix() * m0.matrix()));
        sum_min = std::min(sum_min,
                           max_abs(m0.matrix() + m1.matrix() - identity2));
    }

    Catalog catalog;
    catalog.add_deviation("M0_unitary", m_unitary[0], tol);
    catalog.add_deviation("M1_unitary", m_unitary[1], tol);
    catalog.add_deviation("M0_inverse_is_adjoint", m_inverse[0], tol);
    catalog.add_deviation("M1_inverse_is_adjoint", m_inverse[1], tol);
    catalog.add_deviation("M0_maps_state_to_basis", basis_dev[0], tol);
    catalog.add_deviation("M1_maps_state_to_basis", basis_dev[1], tol);
    catalog.add_deviation("flipper_conjugates_M0_to_inverse", flipper_dev[0], tol);
    // Known-failing row for complex amplitude ensembles: the cataloged claim
    // holds for M0 in general but for M1 only when arg(alpha) == -arg(beta)
    // mod pi. The two rows after it show where the identity does hold.
    catalog.add_deviation("flipper_conjugates_M1_to_inverse", flipper_dev[1], tol);
    catalog.add_deviation("flipper_conjugates_M0_to_inverse_real_pairs",
                          flipper_real_dev[0], tol);
    catalog.add_deviation("flipper_conjugates_M1_to_inverse_real_pairs",
                          flipper_real_dev[1], tol);
    catalog.add_deviation("alpha_phase_flipper_conjugates_M1_to_inverse",
                          alpha_flipper_m1_dev, tol);

    // Projector algebra is amplitude-independent.
    const Mat pi0 = projector(0).matrix();
    const Mat pi1 = projector(1).matrix();
    catalog.add_deviation("Pi0_Pi1_orthogonal", max_abs(pi0 * pi1), tol);
    catalog.add_deviation("Pi1_Pi0_orthogonal", max_abs(pi1 * pi0), tol);
    catalog.add_deviation("Pi_sum_is_identity", max_abs(pi0 + pi1 - identity2), tol);

    catalog.add_magnitude("M0_M1_not_projectors", m0m1_min, kNonProjectorFloor);
    catalog.add_magnitude("M1_M0_not_projectors", m1m0_min, kNonProjectorFloor);
    catalog.add_magnitude("M_sum_not_identity", sum_min, kNonProjectorFloor);

    // Balanced special case: alpha = beta = 1/sqrt(2) turns the measurement
    // unitaries into (1/sqrt2)(I +- i sigma_y). Fixed tolerance; the match is
    // exact in double precision.
    {
        const QubitAmplitudes balanced = QubitAmplitudes::balanced();
        const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
        Mat sigma_y(2, 2);
        sigma_y << Cx(0, 0), Cx(0, -1),
                   Cx(0, 1), Cx(0, 0);
        const Mat plus = inv_sqrt2 * (identity2 + Cx(0, 1) * sigma_y);
        const Mat minus = inv_sqrt2 * (identity2 - Cx(0, 1) * sigma_y);
        catalog.add_deviation("balanced_M0_is_I_plus_i_sigma_y",
                              max_abs(ssb_unitary(balanced, 0).matrix() - plus),
                              kBalancedTol);
        catalog.add_deviation("balanced_M1_is_I_minus_i_sigma_y",
                              max_abs(ssb_unitary(balanced, 1).matrix() - minus),
                              kBalancedTol);
    }

    // Bell-subspace operators and the reversal chain.
    {
        const Operator b0 = bell_measurement_operator(0);
        const Operator b1 = bell_measurement_operator(1);
        const Mat identity4 = Mat::Identity(4, 4);
        catalog.add_deviation("bell_op0_unitary",
                              max_abs(b0.matrix().adjoint() * b0.matrix() - identity4),
                              tol);
        catalog.add_deviation("bell_op1_unitary",
                              max_abs(b1.matrix().adjoint() * b1.matrix() - identity4),
                              tol);
        catalog.add_deviation("bell_ops_mutually_inverse",
                              max_abs(b1.matrix() * b0.matrix() - identity4), tol);

        const Ket psi_plus = bell_state(BellKind::PsiPlus);
        const Ket forward = apply_operator(b0, psi_plus);
        const Ket back = apply_operator(b1, forward);
        catalog.add_deviation("bell_reversal_returns_psi_plus",
                              std::abs(1.0 - ray_fidelity(back, psi_plus)), tol);

        Mat spectator = Mat::Zero(4, 4);
        spectator(0, 0) = Cx(1.0, 0.0);
        spectator(3, 3) = Cx(1.0, 0.0);
        catalog.add_deviation(
            "bell_op_commutes_with_spectator_projector",
            std::max(max_abs(b0.matrix() * spectator - spectator * b0.matrix()),
                     max_abs(b1.matrix() * spectator - spectator * b1.matrix())),
            tol);
    }

    VerificationReport report;
    report.tol = tol;
    report.samples = samples;
    report.seed = seed;
    report.checks = std::move(catalog.checks);
    report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const VerificationCheck& c) { return c.pass; });
    return report;
}

}  // namespace ssbsim
