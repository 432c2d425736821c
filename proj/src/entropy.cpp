#include "scode/entropy.hpp"

#include "scode/errors.hpp"
#include "scode/kernels.hpp"

#include <cmath>
#include <numbers>

namespace scode {

EntropyValue entropy_bits(const SourceDistribution& dist) {
    return {kernels::entropy_bits_sum(dist.probs()), 2};
}

EntropyValue entropy_radix(const SourceDistribution& dist, unsigned radix) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
    const double bits = kernels::entropy_bits_sum(dist.probs());
    return {bits / std::log2(static_cast<double>(radix)), radix};
}

BigFloat entropy_radix_hp(const SourceDistribution& dist, unsigned radix) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
    BigFloat sum = 0;
    for (const auto& p : dist.probs()) {
        const BigInt& num = numerator(p);
        const BigInt& den = denominator(p);
        if (num == 0 || num == den) continue;
        sum += to_bigfloat(p) * (log(BigFloat(den)) - log(BigFloat(num)));
    }
    return sum / log(BigFloat(radix));
}

EntropyValue g_n(const SequenceModel& model, unsigned N, std::uint64_t cap) {
    if (N < 1) raise(Errc::BadShape, "N must be >= 1");
    const std::size_t q = model.alphabet_size();
    std::uint64_t count = 1;
    for (unsigned k = 0; k < N; ++k) {
        if (q != 0 && count > cap / q) {
            raise(Errc::TooManySequences,
                  "q^N exceeds sequence cap of " + std::to_string(cap));
        }
        count *= q;
    }
    return {kernels::gn_sum(model, N) / static_cast<double>(N), 2};
}

PhysicalEntropy gibbs_entropy(const SourceDistribution& dist) {
    // k_B Σ p ln(1/p), the lg sum rebased to natural log
    const double bits = kernels::entropy_bits_sum(dist.probs());
    return {kBoltzmann * bits * std::numbers::ln2};
}

PhysicalEntropy boltzmann_entropy(std::uint64_t omega) {
    if (omega < 1) raise(Errc::BadOmega, "omega must be >= 1");
    return {kBoltzmann * std::log2(static_cast<double>(omega)) * std::numbers::ln2};
}

EntropyValue physical_to_bits(PhysicalEntropy s) {
    return {s.joules_per_kelvin / (kBoltzmann * std::numbers::ln2), 2};
}

} // namespace scode
