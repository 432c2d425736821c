#pragma once

#include "scode/rational.hpp"
#include "scode/source_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scode {

/// Largest radix whose digits render as '0'..'9','a'..'z'.
inline constexpr unsigned kMaxRadix = 36;

enum class CodeFamily {
    ClassicShannon,
    ExtendedShannon,
    Block,
    Huffman,
    Custom,
};

const char* family_name(CodeFamily f);

/// Per-symbol codeword lengths for one code family and radix. Length 0
/// means "no codeword": it appears only for p = 0, and for the certain
/// event under the classic Shannon rule.
struct LengthProfile {
    std::vector<std::uint32_t> lengths;
    CodeFamily family = CodeFamily::Custom;
    unsigned radix = 2;
};

struct Codeword {
    std::vector<std::uint8_t> digits;

    std::size_t size() const { return digits.size(); }
    bool operator==(const Codeword&) const = default;
};

char digit_to_char(unsigned digit);
unsigned char_to_digit(char c, unsigned radix);

/// A prefix-free symbol → codeword map over {0..r-1}. Symbols without a
/// codeword (p = 0) have no entry. Construction verifies prefix-freeness
/// and builds the decode trie; immutable afterwards.
class Codebook {
public:
    Codebook(unsigned radix, CodeFamily family, std::vector<std::string> labels,
             std::vector<std::optional<Codeword>> words);

    unsigned radix() const { return radix_; }
    CodeFamily family() const { return family_; }
    std::size_t symbol_count() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool has_word(std::size_t i) const { return words_[i].has_value(); }
    const Codeword& word(std::size_t i) const { return *words_[i]; }
    /// Codeword as text, e.g. "10" for binary.
    std::string word_text(std::size_t i) const;
    std::optional<std::size_t> find(const std::string& label) const;

    LengthProfile profile() const;

    // Decode trie: node 0 is the root; step() returns the next node or -1
    // when no codeword continues with that digit. terminal() gives the
    // symbol index ending at a node, or -1.
    std::int64_t trie_step(std::int64_t node, unsigned digit) const;
    std::int64_t trie_terminal(std::int64_t node) const;

private:
    unsigned radix_;
    CodeFamily family_;
    std::vector<std::string> labels_;
    std::vector<std::optional<Codeword>> words_;
    std::vector<std::int64_t> trie_children_; // node_count * radix
    std::vector<std::int64_t> trie_symbol_;   // node_count

    void insert_word(std::size_t symbol);
};

/// l_i = ⌈log_r(1/p_i)⌉ by exact comparison (smallest l with p_i r^l >= 1);
/// the certain event gets 0, p = 0 gets 0.
LengthProfile classic_shannon_lengths(const SourceDistribution& dist,
                                      unsigned radix);

/// Same as classic except the certain event gets length 1.
LengthProfile extended_shannon_lengths(const SourceDistribution& dist,
                                       unsigned radix);

/// Every symbol gets ⌈log_r q⌉.
LengthProfile block_lengths(const SourceDistribution& dist, unsigned radix);

/// ⌈log_r q⌉ as the smallest l with r^l >= q.
std::uint32_t block_symbol_length(std::size_t q, unsigned radix);

struct HuffmanCode {
    LengthProfile profile;
    Codebook book;
};

/// Optimal r-ary prefix code over the symbols with p > 0, deterministic:
/// merges the r lowest-probability nodes (zero-probability padding nodes
/// added so the final merge is full), ties broken by smallest original
/// symbol index then node creation order. A lone positive symbol gets
/// length 1.
HuffmanCode huffman_code(const SourceDistribution& dist, unsigned radix);

/// Σ r^(-l) over symbols with l >= 1, exact.
Rational kraft_sum(const LengthProfile& profile);

/// Realize a Kraft-feasible profile as a concrete prefix code: symbols
/// sorted by (length, original index), codewords assigned in canonical
/// order. Throws KraftViolation when the profile is infeasible.
Codebook canonical_codewords(const LengthProfile& profile,
                             std::span<const std::string> labels);

/// Exact L̄ = Σ p_i l_i.
Rational average_length(const SourceDistribution& dist,
                        const LengthProfile& profile);

struct GoodCodeVerdict {
    bool good = false;
    Rational margin; // L̄_B - L̄
};

/// Good code test: L̄ <= ⌈log_r q⌉, exact comparison.
GoodCodeVerdict is_good_code(const SourceDistribution& dist,
                             const LengthProfile& profile);

} // namespace scode
