#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "ssbsim/errors.hpp"

namespace ssbsim {

// Stream ids at or above this base are reserved for tomography settings so
// they never collide with per-trial streams.
inline constexpr std::uint64_t kTomographyStreamBase = std::uint64_t{1} << 48;

/// Deterministic random source. The (seed, stream) pair fully determines the
/// sequence, so concurrent consumers each own a stream and results are
/// schedule-independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(stream),
            static_cast<std::uint32_t>(stream >> 32),
        };
        gen_.seed(seq);
    }

    /// Uniform double in [0, 1), built from the top 53 bits of one draw.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Inverse-CDF draw over a probability list. Zero-probability entries are
    /// never selected; roundoff at the top of the CDF falls back to the last
    /// positive entry.
    std::size_t sample(std::span<const double> probs) {
        const double u = uniform();
        double cum = 0.0;
        std::size_t last_positive = probs.size();
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0.0) {
                continue;
            }
            last_positive = i;
            cum += probs[i];
            if (u < cum) {
                return i;
            }
        }
        if (last_positive == probs.size()) {
            throw ContractViolation("RandomStream::sample: no positive probability");
        }
        return last_positive;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ssbsim
