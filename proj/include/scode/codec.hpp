#pragma once

#include "scode/coding.hpp"
#include "scode/source_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace scode {

/// A sequence of digits in [0, r-1]. The packed on-disk form records the
/// digit count explicitly; pad digits are zero and never decoded.
class DigitStream {
public:
    explicit DigitStream(unsigned radix);

    unsigned radix() const { return radix_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
    std::span<const std::uint8_t> digits() const { return digits_; }

    void push_back(unsigned digit);
    void append(const Codeword& word);

    bool operator==(const DigitStream&) const = default;

private:
    unsigned radix_;
    std::vector<std::uint8_t> digits_;
};

/// Concatenate the codewords of the message symbols.
/// Throws UnknownSymbol for symbols without a codeword.
DigitStream encode(std::span<const std::string> message, const Codebook& book);

/// Unique prefix parse of the whole stream via the book's trie.
/// Throws UnknownPrefix when digits match no codeword, TrailingGarbage
/// when the stream ends mid-codeword.
std::vector<std::string> decode(const DigitStream& stream, const Codebook& book);

struct RateComparison {
    Rational expected_per_symbol; // L̄ of the book's profile under dist
    Rational actual_per_symbol;   // emitted digits / message symbols, exact
};

RateComparison expected_vs_actual(const SourceDistribution& dist,
                                  const Codebook& book,
                                  std::span<const std::string> sample);

// Packed digit bytes: r=2 packs 8 digits per byte (MSB first), r<=16
// packs 2 per byte (high nibble first), larger radixes 1 per byte.
std::vector<std::uint8_t> pack_digits(const DigitStream& stream);
DigitStream unpack_digits(unsigned radix, std::uint64_t digit_count,
                          std::span<const std::uint8_t> bytes);

// Encoded-file container: magic "ENC1", 1 byte radix, u32-LE codebook
// JSON length, codebook JSON, u64-LE digit count, packed digits.
void write_container(std::ostream& out, const Codebook& book,
                     const DigitStream& stream);

struct Container {
    Codebook book;
    DigitStream stream;
};

Container read_container(std::istream& in);

/// Build an empirical distribution over the input bytes, code it with the
/// given family, and emit a self-describing container.
std::vector<std::uint8_t> encode_file_bytes(std::span<const std::uint8_t> data,
                                            unsigned radix, CodeFamily family);

/// Inverse of encode_file_bytes; bit-exact round trip.
std::vector<std::uint8_t> decode_file_bytes(std::span<const std::uint8_t> container);

} // namespace scode
