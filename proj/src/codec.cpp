#include "scode/codec.hpp"

#include "scode/errors.hpp"
#include "scode/json_io.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace scode {

namespace {

constexpr char kMagic[4] = {'E', 'N', 'C', '1'};

unsigned digits_per_byte(unsigned radix) {
    if (radix == 2) return 8;
    if (radix <= 16) return 2;
    return 1;
}

void put_u32(std::ostream& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.put(static_cast<char>((v >> (8 * k)) & 0xff));
}

void put_u64(std::ostream& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.put(static_cast<char>((v >> (8 * k)) & 0xff));
}

std::uint64_t get_uint(std::istream& in, int bytes) {
    std::uint64_t v = 0;
    for (int k = 0; k < bytes; ++k) {
        const int c = in.get();
        if (c < 0) raise(Errc::ParseError, "container truncated");
        v |= static_cast<std::uint64_t>(c) << (8 * k);
    }
    return v;
}

} // namespace

DigitStream::DigitStream(unsigned radix) : radix_(radix) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
}

void DigitStream::push_back(unsigned digit) {
    if (digit >= radix_) {
        raise(Errc::BadRadix, "digit " + std::to_string(digit) +
                                  " out of range for radix " + std::to_string(radix_));
    }
    digits_.push_back(static_cast<std::uint8_t>(digit));
}

void DigitStream::append(const Codeword& word) {
    for (auto d : word.digits) push_back(d);
}

DigitStream encode(std::span<const std::string> message, const Codebook& book) {
    DigitStream out(book.radix());
    for (const auto& symbol : message) {
        const auto idx = book.find(symbol);
        if (!idx || !book.has_word(*idx)) {
            raise(Errc::UnknownSymbol, "no codeword for symbol '" + symbol + "'");
        }
        out.append(book.word(*idx));
    }
    return out;
}

std::vector<std::string> decode(const DigitStream& stream, const Codebook& book) {
    if (stream.radix() != book.radix()) {
        raise(Errc::ShapeMismatch, "stream and codebook radix differ");
    }
    std::vector<std::string> message;
    std::int64_t node = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        node = book.trie_step(node, stream[i]);
        if (node < 0) {
            raise(Errc::UnknownPrefix,
                  "digits at offset " + std::to_string(i) + " match no codeword");
        }
        const std::int64_t symbol = book.trie_terminal(node);
        if (symbol >= 0) {
            message.push_back(book.label(static_cast<std::size_t>(symbol)));
            node = 0;
        }
    }
    if (node != 0) {
        raise(Errc::TrailingGarbage, "stream ends in the middle of a codeword");
    }
    return message;
}

RateComparison expected_vs_actual(const SourceDistribution& dist,
                                  const Codebook& book,
                                  std::span<const std::string> sample) {
    if (sample.empty()) {
        raise(Errc::EmptyInput, "sample must contain at least one symbol");
    }
    const DigitStream stream = encode(sample, book);
    RateComparison cmp;
    cmp.expected_per_symbol = average_length(dist, book.profile());
    cmp.actual_per_symbol =
        Rational(stream.size(), static_cast<unsigned long>(sample.size()));
    return cmp;
}

std::vector<std::uint8_t> pack_digits(const DigitStream& stream) {
    const unsigned per_byte = digits_per_byte(stream.radix());
    const unsigned bits = 8 / per_byte;
    std::vector<std::uint8_t> bytes((stream.size() + per_byte - 1) / per_byte, 0);
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const std::size_t byte = i / per_byte;
        const unsigned slot = static_cast<unsigned>(i % per_byte);
        const unsigned shift = 8 - bits * (slot + 1);
        bytes[byte] |= static_cast<std::uint8_t>(stream[i] << shift);
    }
    return bytes;
}

DigitStream unpack_digits(unsigned radix, std::uint64_t digit_count,
                          std::span<const std::uint8_t> bytes) {
    const unsigned per_byte = digits_per_byte(radix);
    const unsigned bits = 8 / per_byte;
    if (bytes.size() * per_byte < digit_count) {
        raise(Errc::ParseError, "packed digit block too short");
    }
    DigitStream stream(radix);
    for (std::uint64_t i = 0; i < digit_count; ++i) {
        const std::size_t byte = static_cast<std::size_t>(i / per_byte);
        const unsigned slot = static_cast<unsigned>(i % per_byte);
        const unsigned shift = 8 - bits * (slot + 1);
        const unsigned mask = (1u << bits) - 1;
        stream.push_back((bytes[byte] >> shift) & mask);
    }
    return stream;
}

void write_container(std::ostream& out, const Codebook& book,
                     const DigitStream& stream) {
    if (book.radix() != stream.radix()) {
        raise(Errc::ShapeMismatch, "stream and codebook radix differ");
    }
    out.write(kMagic, 4);
    out.put(static_cast<char>(book.radix()));
    const std::string codebook_json = codebook_to_json(book);
    put_u32(out, static_cast<std::uint32_t>(codebook_json.size()));
    out.write(codebook_json.data(),
              static_cast<std::streamsize>(codebook_json.size()));
    put_u64(out, stream.size());
    const auto packed = pack_digits(stream);
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
    if (!out) raise(Errc::IoError, "container write failed");
}

Container read_container(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) {
        raise(Errc::ParseError, "not an ENC1 container");
    }
    const auto radix = static_cast<unsigned>(get_uint(in, 1));
    const auto json_len = static_cast<std::size_t>(get_uint(in, 4));
    std::string codebook_json(json_len, '\0');
    in.read(codebook_json.data(), static_cast<std::streamsize>(json_len));
    if (in.gcount() != static_cast<std::streamsize>(json_len)) {
        raise(Errc::ParseError, "container truncated in codebook block");
    }
    Codebook book = codebook_from_json(codebook_json);
    if (book.radix() != radix) {
        raise(Errc::ParseError, "container radix disagrees with codebook");
    }
    const std::uint64_t digit_count = get_uint(in, 8);
    const unsigned per_byte = digits_per_byte(radix);
    const std::size_t packed_len =
        static_cast<std::size_t>((digit_count + per_byte - 1) / per_byte);
    std::vector<std::uint8_t> packed(packed_len);
    in.read(reinterpret_cast<char*>(packed.data()),
            static_cast<std::streamsize>(packed_len));
    if (in.gcount() != static_cast<std::streamsize>(packed_len)) {
        raise(Errc::ParseError, "container truncated in digit block");
    }
    return {std::move(book), unpack_digits(radix, digit_count, packed)};
}

std::vector<std::uint8_t> encode_file_bytes(std::span<const std::uint8_t> data,
                                            unsigned radix, CodeFamily family) {
    const SourceDistribution dist = empirical_distribution(data);

    Codebook book = [&] {
        switch (family) {
        case CodeFamily::Huffman:
            return huffman_code(dist, radix).book;
        case CodeFamily::ClassicShannon:
            return canonical_codewords(classic_shannon_lengths(dist, radix),
                                       dist.labels());
        case CodeFamily::ExtendedShannon:
            return canonical_codewords(extended_shannon_lengths(dist, radix),
                                       dist.labels());
        case CodeFamily::Block:
            return canonical_codewords(block_lengths(dist, radix), dist.labels());
        case CodeFamily::Custom:
            break;
        }
        raise(Errc::BadFamily, "cannot build a codebook for this family");
    }();

    std::vector<std::string> message;
    message.reserve(data.size());
    for (auto b : data) message.push_back(label_for_byte(b));

    const DigitStream stream = encode(message, book);
    std::ostringstream out(std::ios::binary);
    write_container(out, book, stream);
    const std::string s = out.str();
    return {s.begin(), s.end()};
}

std::vector<std::uint8_t> decode_file_bytes(
    std::span<const std::uint8_t> container) {
    std::istringstream in(
        std::string(container.begin(), container.end()), std::ios::binary);
    const Container parsed = read_container(in);
    const auto message = decode(parsed.stream, parsed.book);
    std::vector<std::uint8_t> bytes;
    bytes.reserve(message.size());
    for (const auto& label : message) bytes.push_back(byte_for_label(label));
    return bytes;
}

} // namespace scode
