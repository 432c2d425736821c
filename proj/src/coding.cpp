#include "scode/coding.hpp"

#include "scode/errors.hpp"
#include "scode/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace scode {

namespace {

void check_radix(unsigned radix) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
}

LengthProfile shannon_profile(const SourceDistribution& dist, unsigned radix,
                              bool extended) {
    check_radix(radix);
    LengthProfile profile;
    profile.lengths = kernels::shannon_lengths(dist.probs(), radix, extended);
    profile.family =
        extended ? CodeFamily::ExtendedShannon : CodeFamily::ClassicShannon;
    profile.radix = radix;
    return profile;
}

} // namespace

const char* family_name(CodeFamily f) {
    switch (f) {
    case CodeFamily::ClassicShannon: return "classic-shannon";
    case CodeFamily::ExtendedShannon: return "extended-shannon";
    case CodeFamily::Block: return "block";
    case CodeFamily::Huffman: return "huffman";
    case CodeFamily::Custom: return "custom";
    }
    return "unknown";
}

char digit_to_char(unsigned digit) {
    return digit < 10 ? static_cast<char>('0' + digit)
                      : static_cast<char>('a' + digit - 10);
}

unsigned char_to_digit(char c, unsigned radix) {
    unsigned d;
    if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'z') d = static_cast<unsigned>(c - 'a' + 10);
    else raise(Errc::ParseError, std::string("bad code digit '") + c + "'");
    if (d >= radix) {
        raise(Errc::ParseError,
              std::string("digit '") + c + "' out of range for radix " +
                  std::to_string(radix));
    }
    return d;
}

Codebook::Codebook(unsigned radix, CodeFamily family,
                   std::vector<std::string> labels,
                   std::vector<std::optional<Codeword>> words)
    : radix_(radix), family_(family), labels_(std::move(labels)),
      words_(std::move(words)) {
    check_radix(radix_);
    if (radix_ > kMaxRadix) {
        raise(Errc::BadRadix,
              "radix above " + std::to_string(kMaxRadix) + " is not supported");
    }
    if (labels_.size() != words_.size()) {
        raise(Errc::ShapeMismatch, "label and codeword counts differ");
    }
    trie_children_.assign(radix_, -1);
    trie_symbol_.assign(1, -1);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i]) insert_word(i);
    }
}

void Codebook::insert_word(std::size_t symbol) {
    const Codeword& w = *words_[symbol];
    if (w.digits.empty()) {
        raise(Errc::KraftViolation, "empty codeword for '" + labels_[symbol] + "'");
    }
    std::int64_t node = 0;
    for (std::size_t k = 0; k < w.digits.size(); ++k) {
        const unsigned d = w.digits[k];
        if (d >= radix_) {
            raise(Errc::BadRadix, "code digit out of range for radix " +
                                      std::to_string(radix_));
        }
        if (trie_symbol_[static_cast<std::size_t>(node)] >= 0) {
            raise(Errc::KraftViolation,
                  "codeword of '" + labels_[symbol] + "' extends another codeword");
        }
        std::int64_t next = trie_children_[static_cast<std::size_t>(node) * radix_ + d];
        if (next < 0) {
            next = static_cast<std::int64_t>(trie_symbol_.size());
            trie_children_[static_cast<std::size_t>(node) * radix_ + d] = next;
            trie_children_.resize(trie_children_.size() + radix_, -1);
            trie_symbol_.push_back(-1);
        }
        node = next;
    }
    auto& terminal = trie_symbol_[static_cast<std::size_t>(node)];
    bool has_child = false;
    for (unsigned d = 0; d < radix_; ++d) {
        has_child |= trie_children_[static_cast<std::size_t>(node) * radix_ + d] >= 0;
    }
    if (terminal >= 0 || has_child) {
        raise(Errc::KraftViolation,
              "codeword of '" + labels_[symbol] + "' is a prefix of another");
    }
    terminal = static_cast<std::int64_t>(symbol);
}

std::string Codebook::word_text(std::size_t i) const {
    std::string out;
    for (auto d : words_[i]->digits) out += digit_to_char(d);
    return out;
}

std::optional<std::size_t> Codebook::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

LengthProfile Codebook::profile() const {
    LengthProfile p;
    p.family = family_;
    p.radix = radix_;
    p.lengths.reserve(words_.size());
    for (const auto& w : words_) {
        p.lengths.push_back(w ? static_cast<std::uint32_t>(w->size()) : 0);
    }
    return p;
}

std::int64_t Codebook::trie_step(std::int64_t node, unsigned digit) const {
    return trie_children_[static_cast<std::size_t>(node) * radix_ + digit];
}

std::int64_t Codebook::trie_terminal(std::int64_t node) const {
    return trie_symbol_[static_cast<std::size_t>(node)];
}

LengthProfile classic_shannon_lengths(const SourceDistribution& dist,
                                      unsigned radix) {
    return shannon_profile(dist, radix, false);
}

LengthProfile extended_shannon_lengths(const SourceDistribution& dist,
                                       unsigned radix) {
    return shannon_profile(dist, radix, true);
}

std::uint32_t block_symbol_length(std::size_t q, unsigned radix) {
    check_radix(radix);
    std::uint32_t l = 0;
    BigInt v = 1;
    while (v < q) {
        v *= radix;
        ++l;
    }
    return l;
}

LengthProfile block_lengths(const SourceDistribution& dist, unsigned radix) {
    LengthProfile profile;
    profile.lengths.assign(dist.size(), block_symbol_length(dist.size(), radix));
    profile.family = CodeFamily::Block;
    profile.radix = radix;
    return profile;
}

HuffmanCode huffman_code(const SourceDistribution& dist, unsigned radix) {
    check_radix(radix);

    std::vector<std::size_t> active; // original indices with p > 0
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.prob(i) > 0) active.push_back(i);
    }
    if (active.empty()) {
        raise(Errc::AllZero, "Huffman needs at least one positive probability");
    }

    std::vector<std::uint32_t> lengths(dist.size(), 0);
    if (active.size() == 1) {
        lengths[active[0]] = 1; // lone symbol still gets a decodable word
    } else {
        struct Node {
            Rational prob;
            std::size_t min_index; // smallest original symbol index inside
            std::uint64_t created;
            std::int64_t parent = -1;
        };
        std::vector<Node> nodes;
        nodes.reserve(active.size() * 2);
        for (std::size_t i : active) {
            nodes.push_back({dist.prob(i), i, nodes.size(), -1});
        }
        // pad with zero-probability dummies so every merge takes exactly r
        const std::size_t r1 = radix - 1;
        const std::size_t pad = (r1 - (active.size() - 1) % r1) % r1;
        for (std::size_t j = 0; j < pad; ++j) {
            nodes.push_back({Rational(0), dist.size() + j, nodes.size(), -1});
        }

        auto heavier = [&nodes](std::size_t a, std::size_t b) {
            const Node& x = nodes[a];
            const Node& y = nodes[b];
            if (x.prob != y.prob) return x.prob > y.prob;
            if (x.min_index != y.min_index) return x.min_index > y.min_index;
            return x.created > y.created;
        };
        std::priority_queue<std::size_t, std::vector<std::size_t>,
                            decltype(heavier)>
            queue(heavier);
        for (std::size_t i = 0; i < nodes.size(); ++i) queue.push(i);

        while (queue.size() > 1) {
            Node merged{Rational(0), SIZE_MAX, nodes.size(), -1};
            std::vector<std::size_t> children;
            for (unsigned k = 0; k < radix && !queue.empty(); ++k) {
                const std::size_t c = queue.top();
                queue.pop();
                children.push_back(c);
                merged.prob += nodes[c].prob;
                merged.min_index = std::min(merged.min_index, nodes[c].min_index);
            }
            const auto id = static_cast<std::int64_t>(nodes.size());
            nodes.push_back(std::move(merged));
            for (std::size_t c : children) nodes[c].parent = id;
            queue.push(static_cast<std::size_t>(id));
        }

        for (std::size_t k = 0; k < active.size(); ++k) {
            std::uint32_t depth = 0;
            for (std::int64_t at = nodes[k].parent; at >= 0;
                 at = nodes[static_cast<std::size_t>(at)].parent) {
                ++depth;
            }
            lengths[active[k]] = depth;
        }
    }

    LengthProfile profile{std::move(lengths), CodeFamily::Huffman, radix};
    Codebook book = canonical_codewords(profile, dist.labels());
    return {std::move(profile), std::move(book)};
}

Rational kraft_sum(const LengthProfile& profile) {
    check_radix(profile.radix);
    Rational sum = 0;
    for (auto l : profile.lengths) {
        if (l >= 1) sum += Rational(1, pow_uint(profile.radix, l));
    }
    return sum;
}

Codebook canonical_codewords(const LengthProfile& profile,
                             std::span<const std::string> labels) {
    check_radix(profile.radix);
    if (labels.size() != profile.lengths.size()) {
        raise(Errc::ShapeMismatch, "profile and label counts differ");
    }
    if (kraft_sum(profile) > 1) {
        raise(Errc::KraftViolation, "Kraft sum exceeds 1; no prefix code exists");
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < profile.lengths.size(); ++i) {
        if (profile.lengths[i] >= 1) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&profile](std::size_t a, std::size_t b) {
                         return profile.lengths[a] < profile.lengths[b];
                     });

    std::vector<std::optional<Codeword>> words(labels.size());
    BigInt code = 0;
    std::uint32_t prev_len = 0;
    bool first = true;
    for (std::size_t i : order) {
        const std::uint32_t len = profile.lengths[i];
        if (first) {
            first = false;
        } else {
            code += 1;
            code *= pow_uint(profile.radix, len - prev_len);
        }
        prev_len = len;

        Codeword w;
        w.digits.assign(len, 0);
        BigInt v = code;
        for (std::uint32_t k = len; k-- > 0 && v != 0;) {
            w.digits[k] = static_cast<std::uint8_t>(v % profile.radix);
            v /= profile.radix;
        }
        words[i] = std::move(w);
    }

    return Codebook(profile.radix, profile.family,
                    {labels.begin(), labels.end()}, std::move(words));
}

Rational average_length(const SourceDistribution& dist,
                        const LengthProfile& profile) {
    if (dist.size() != profile.lengths.size()) {
        raise(Errc::ShapeMismatch, "profile does not match symbol count");
    }
    return kernels::weighted_length_sum(dist.probs(), profile.lengths);
}

GoodCodeVerdict is_good_code(const SourceDistribution& dist,
                             const LengthProfile& profile) {
    const Rational avg = average_length(dist, profile);
    const std::uint32_t block = block_symbol_length(dist.size(), profile.radix);
    GoodCodeVerdict v;
    v.margin = Rational(block) - avg;
    v.good = avg <= block;
    return v;
}

} // namespace scode
