#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssbsim {

/// One verified identity. For "sense == max_deviation_le_tol" rows the value
/// is the worst deviation seen and passing means value <= tolerance; for
/// "sense == min_magnitude_gt_tol" rows the value is the smallest magnitude
/// seen and passing means value > tolerance (non-projector checks).
struct VerificationCheck {
    std::string name;
    double deviation;
    double tolerance;
    std::string sense;
    bool pass;
};

struct VerificationReport {
    double tol;
    std::uint64_t samples;
    std::uint64_t seed;
    std::vector<VerificationCheck> checks;
    bool overall;
};

/// Evaluates the operator-identity catalog over `samples` random amplitude
/// pairs: unitarity of the measurement operators, adjoint inverses, projector
/// algebra, non-projector magnitude bounds, the flipper conjugation, the
/// balanced special case, and the Bell-subspace reversal chain.
VerificationReport run_verification(double tol, std::uint64_t samples,
                                    std::uint64_t seed);

}  // namespace ssbsim
