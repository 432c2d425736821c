#pragma once

#include "scode/rational.hpp"
#include "scode/source_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

// Data-parallel inner loops. Every kernel comes in a _serial and a
// _parallel (OpenMP) variant with identical semantics; the serial form is
// the reference the parallel one is tested against. Exact (rational /
// big-integer) results are bit-identical across variants because rational
// addition is associative; float sums may differ by reduction order within
// normal rounding.
namespace scode::kernels {

enum class ExecMode { Auto, Serial, Parallel };

/// Element count below which Auto dispatch stays serial.
inline constexpr std::uint64_t kParallelThreshold = 8192;

bool parallel_available();

// --- entropy accumulation -------------------------------------------------

/// Σ p lg(1/p). Zero and one contribute nothing. Kahan-compensated.
double entropy_bits_sum_serial(std::span<const Rational> probs);
double entropy_bits_sum_parallel(std::span<const Rational> probs);
double entropy_bits_sum(std::span<const Rational> probs,
                        ExecMode mode = ExecMode::Auto);

// --- Shannon length assignment ---------------------------------------------

/// Smallest l with num * radix^l >= den (exact big-integer comparison);
/// 0 for num == 0; for num == den, 1 when extended, else 0.
std::uint32_t shannon_symbol_length(const BigInt& num, const BigInt& den,
                                    unsigned radix, bool extended);

std::vector<std::uint32_t> shannon_lengths_serial(std::span<const Rational> probs,
                                                  unsigned radix, bool extended);
std::vector<std::uint32_t> shannon_lengths_parallel(std::span<const Rational> probs,
                                                    unsigned radix, bool extended);
std::vector<std::uint32_t> shannon_lengths(std::span<const Rational> probs,
                                           unsigned radix, bool extended,
                                           ExecMode mode = ExecMode::Auto);

// --- exact weighted length ---------------------------------------------------

/// Σ p_i l_i as an exact rational.
Rational weighted_length_sum_serial(std::span<const Rational> probs,
                                    std::span<const std::uint32_t> lengths);
Rational weighted_length_sum_parallel(std::span<const Rational> probs,
                                      std::span<const std::uint32_t> lengths);
Rational weighted_length_sum(std::span<const Rational> probs,
                             std::span<const std::uint32_t> lengths,
                             ExecMode mode = ExecMode::Auto);

// --- implicit nth-extension pass ---------------------------------------------

/// One pass over all q^n tuples of base^n without materializing them:
/// Shannon length per tuple (classic or extended family), the exact
/// average length of the extension in blocks, and its entropy in bits.
struct ExtensionStats {
    std::uint64_t tuple_count = 0;
    Rational avg_len_blocks;  // L̄(S^n), exact
    double entropy_bits = 0;  // H(S^n)
};

ExtensionStats extension_stats_serial(const SourceDistribution& base, unsigned n,
                                      unsigned radix, bool extended,
                                      std::uint64_t cap = kDefaultExtensionCap);
ExtensionStats extension_stats_parallel(const SourceDistribution& base, unsigned n,
                                        unsigned radix, bool extended,
                                        std::uint64_t cap = kDefaultExtensionCap);
ExtensionStats extension_stats(const SourceDistribution& base, unsigned n,
                               unsigned radix, bool extended,
                               std::uint64_t cap = kDefaultExtensionCap,
                               ExecMode mode = ExecMode::Auto);

// --- extension materialization ------------------------------------------------

/// Fill indices (n per tuple, most significant first) and product
/// probabilities for all tuples of base^n. Spans must hold count*n and
/// count entries.
void fill_extension_serial(const SourceDistribution& base, unsigned n,
                           std::span<std::uint32_t> indices,
                           std::span<Rational> probs);
void fill_extension_parallel(const SourceDistribution& base, unsigned n,
                             std::span<std::uint32_t> indices,
                             std::span<Rational> probs);
void fill_extension(const SourceDistribution& base, unsigned n,
                    std::span<std::uint32_t> indices, std::span<Rational> probs,
                    ExecMode mode = ExecMode::Auto);

// --- G_N sequence sum ----------------------------------------------------------

/// Σ over all q^N sequences of p(seq) lg(1/p(seq)); G_N is this over N.
double gn_sum_serial(const SequenceModel& model, unsigned N);
double gn_sum_parallel(const SequenceModel& model, unsigned N);
double gn_sum(const SequenceModel& model, unsigned N,
              ExecMode mode = ExecMode::Auto);

} // namespace scode::kernels
