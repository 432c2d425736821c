#pragma once

#include "scode/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scode {

inline constexpr std::uint64_t kDefaultExtensionCap = 1'000'000;

/// A finite discrete source: ordered symbols with exact probabilities.
/// Probabilities sum to exactly 1; zeros are permitted and retained.
/// Immutable after construction.
class SourceDistribution {
public:
    static SourceDistribution create(std::vector<std::string> labels,
                                     std::vector<Rational> probs);

    /// Uniform source over q symbols named s0..s{q-1}.
    static SourceDistribution uniform(std::size_t q);

    std::size_t size() const { return probs_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const Rational& prob(std::size_t i) const { return probs_[i]; }
    std::span<const std::string> labels() const { return labels_; }
    std::span<const Rational> probs() const { return probs_; }

    bool has_certain_event() const;
    bool all_positive() const;

    /// Least common denominator D of all probabilities.
    BigInt common_denominator() const;
    /// Numerators a_i with p_i = a_i / D for the given D.
    std::vector<BigInt> scaled_numerators(const BigInt& common_den) const;

private:
    SourceDistribution() = default;

    std::vector<std::string> labels_;
    std::vector<Rational> probs_;
};

/// The nth extension S^n: all q^n n-tuples of base symbols, in
/// lexicographic order by component index, with product probabilities.
class ExtendedSource {
public:
    const SourceDistribution& base() const { return base_; }
    unsigned order() const { return order_; }
    std::uint64_t tuple_count() const { return probs_.size(); }

    const Rational& tuple_prob(std::uint64_t t) const { return probs_[t]; }
    std::span<const Rational> tuple_probs() const { return probs_; }
    /// Component indices of tuple t, most significant first.
    std::span<const std::uint32_t> tuple_indices(std::uint64_t t) const;
    std::string tuple_label(std::uint64_t t) const;

private:
    friend ExtendedSource nth_extension(const SourceDistribution&, unsigned,
                                        std::uint64_t);

    SourceDistribution base_;
    unsigned order_ = 1;
    std::vector<std::uint32_t> indices_; // order_ entries per tuple
    std::vector<Rational> probs_;
};

SourceDistribution new_distribution(std::vector<std::string> labels,
                                    std::vector<Rational> probs);

/// Enumerates all q^n tuples. Throws ExtensionTooLarge when q^n > cap.
ExtendedSource nth_extension(const SourceDistribution& base, unsigned n,
                             std::uint64_t cap = kDefaultExtensionCap);

/// Tuples become compound symbols; labels joined with "·".
SourceDistribution as_distribution(const ExtendedSource& ext);

/// Exact count/total distribution over the distinct bytes of the input,
/// ordered by byte value.
SourceDistribution empirical_distribution(std::span<const std::uint8_t> data);

/// Label used for a byte by empirical_distribution: the character itself
/// for printable ASCII (0x21..0x7e), "0xNN" otherwise.
std::string label_for_byte(std::uint8_t b);
/// Inverse of label_for_byte. Throws LabelNotByte.
std::uint8_t byte_for_label(const std::string& label);

/// Probability model for N-symbol sequences: iid, or a first-order
/// Markov chain given by an initial distribution and a transition matrix
/// of exact rationals (each row sums to exactly 1).
class SequenceModel {
public:
    static SequenceModel iid(SourceDistribution dist);
    static SequenceModel markov(SourceDistribution initial,
                                std::vector<std::vector<Rational>> transitions);

    bool is_markov() const { return markov_; }
    std::size_t alphabet_size() const { return initial_.size(); }
    const SourceDistribution& initial() const { return initial_; }
    const Rational& transition(std::size_t from, std::size_t to) const {
        return transitions_[from][to];
    }

private:
    SequenceModel() = default;

    bool markov_ = false;
    SourceDistribution initial_ = SourceDistribution::uniform(1);
    std::vector<std::vector<Rational>> transitions_;
};

} // namespace scode
