#pragma once

#include "scode/rational.hpp"
#include "scode/source_model.hpp"

#include <cstdint>

namespace scode {

/// CODATA value pinned as a constant, J/K.
inline constexpr double kBoltzmann = 1.3806504e-23;

/// An entropy value together with the log base it was measured in.
/// radix == 2 means bits.
struct EntropyValue {
    double value = 0;
    unsigned radix = 2;
};

/// Entropy in joules per kelvin.
struct PhysicalEntropy {
    double joules_per_kelvin = 0;
};

/// H(S) = Σ p lg(1/p), with 0·lg(1/0) = 0.
EntropyValue entropy_bits(const SourceDistribution& dist);

/// H_r(S) = H(S) / lg r. Throws BadRadix for r < 2.
EntropyValue entropy_radix(const SourceDistribution& dist, unsigned radix);

/// H_r(S) at 50 decimal digits, for settling near-tie bound comparisons.
BigFloat entropy_radix_hp(const SourceDistribution& dist, unsigned radix);

/// Shannon's estimator G_N = (1/N) Σ p(seq) lg(1/p(seq)) over all
/// N-symbol sequences. Throws TooManySequences when q^N > cap.
EntropyValue g_n(const SequenceModel& model, unsigned N,
                 std::uint64_t cap = kDefaultExtensionCap);

/// Gibbs entropy k_B Σ p ln(1/p).
PhysicalEntropy gibbs_entropy(const SourceDistribution& dist);

/// Boltzmann entropy k_B ln Ω. Throws BadOmega for Ω < 1.
PhysicalEntropy boltzmann_entropy(std::uint64_t omega);

/// H = S / (k_B ln 2), in bits.
EntropyValue physical_to_bits(PhysicalEntropy s);

} // namespace scode
