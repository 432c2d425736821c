#include "scode/source_model.hpp"

#include "scode/errors.hpp"
#include "scode/kernels.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <array>
#include <cstdio>
#include <unordered_set>

namespace scode {

namespace {

constexpr const char* kTupleSeparator = "·"; // '·'

void check_extension_size(std::size_t q, unsigned n, std::uint64_t cap,
                          std::uint64_t& count_out) {
    if (n < 1) {
        raise(Errc::BadShape, "extension order must be >= 1");
    }
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (q != 0 && count > cap / q) {
            raise(Errc::ExtensionTooLarge,
                  "q^n exceeds tuple cap of " + std::to_string(cap));
        }
        count *= q;
    }
    if (count > cap) {
        raise(Errc::ExtensionTooLarge,
              "q^n exceeds tuple cap of " + std::to_string(cap));
    }
    count_out = count;
}

} // namespace

SourceDistribution SourceDistribution::create(std::vector<std::string> labels,
                                              std::vector<Rational> probs) {
    if (labels.empty() || probs.empty()) {
        raise(Errc::Empty, "a source needs at least one symbol");
    }
    if (labels.size() != probs.size()) {
        raise(Errc::ShapeMismatch, "label and probability counts differ");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            raise(Errc::DuplicateLabel, "duplicate symbol label '" + l + "'");
        }
    }
    Rational sum = 0;
    for (const auto& p : probs) {
        if (p < 0) {
            raise(Errc::NegativeProbability,
                  "negative probability " + format_rational(p));
        }
        sum += p;
    }
    if (sum != 1) {
        raise(Errc::SumNotOne,
              "probabilities sum to " + format_rational(sum) + ", not 1");
    }
    SourceDistribution d;
    d.labels_ = std::move(labels);
    d.probs_ = std::move(probs);
    return d;
}

SourceDistribution SourceDistribution::uniform(std::size_t q) {
    std::vector<std::string> labels;
    std::vector<Rational> probs;
    labels.reserve(q);
    probs.reserve(q);
    for (std::size_t i = 0; i < q; ++i) {
        labels.push_back("s" + std::to_string(i));
        probs.emplace_back(1, static_cast<unsigned long>(q));
    }
    return create(std::move(labels), std::move(probs));
}

bool SourceDistribution::has_certain_event() const {
    for (const auto& p : probs_) {
        if (p == 1) return true;
    }
    return false;
}

bool SourceDistribution::all_positive() const {
    for (const auto& p : probs_) {
        if (p == 0) return false;
    }
    return true;
}

BigInt SourceDistribution::common_denominator() const {
    BigInt lcm = 1;
    for (const auto& p : probs_) {
        lcm = boost::integer::lcm(lcm, denominator(p));
    }
    return lcm;
}

std::vector<BigInt> SourceDistribution::scaled_numerators(
    const BigInt& common_den) const {
    std::vector<BigInt> nums;
    nums.reserve(probs_.size());
    for (const auto& p : probs_) {
        nums.push_back(numerator(p) * (common_den / denominator(p)));
    }
    return nums;
}

SourceDistribution new_distribution(std::vector<std::string> labels,
                                    std::vector<Rational> probs) {
    return SourceDistribution::create(std::move(labels), std::move(probs));
}

std::span<const std::uint32_t> ExtendedSource::tuple_indices(
    std::uint64_t t) const {
    return {indices_.data() + t * order_, order_};
}

std::string ExtendedSource::tuple_label(std::uint64_t t) const {
    std::string out;
    auto idx = tuple_indices(t);
    for (unsigned k = 0; k < order_; ++k) {
        if (k != 0) out += kTupleSeparator;
        out += base_.label(idx[k]);
    }
    return out;
}

ExtendedSource nth_extension(const SourceDistribution& base, unsigned n,
                             std::uint64_t cap) {
    std::uint64_t count = 0;
    check_extension_size(base.size(), n, cap, count);

    ExtendedSource ext;
    ext.base_ = base;
    ext.order_ = n;
    ext.indices_.resize(count * n);
    ext.probs_.resize(count);
    kernels::fill_extension(base, n, ext.indices_, ext.probs_);
    return ext;
}

SourceDistribution as_distribution(const ExtendedSource& ext) {
    std::vector<std::string> labels;
    std::vector<Rational> probs;
    const std::uint64_t count = ext.tuple_count();
    labels.reserve(count);
    probs.reserve(count);
    for (std::uint64_t t = 0; t < count; ++t) {
        labels.push_back(ext.tuple_label(t));
        probs.push_back(ext.tuple_prob(t));
    }
    return SourceDistribution::create(std::move(labels), std::move(probs));
}

SourceDistribution empirical_distribution(std::span<const std::uint8_t> data) {
    if (data.empty()) {
        raise(Errc::EmptyInput, "cannot build a distribution from empty input");
    }
    std::array<std::uint64_t, 256> counts{};
    for (std::uint8_t b : data) counts[b]++;

    std::vector<std::string> labels;
    std::vector<Rational> probs;
    const unsigned long total = static_cast<unsigned long>(data.size());
    for (unsigned b = 0; b < 256; ++b) {
        if (counts[b] == 0) continue;
        labels.push_back(label_for_byte(static_cast<std::uint8_t>(b)));
        probs.emplace_back(static_cast<unsigned long>(counts[b]), total);
    }
    return SourceDistribution::create(std::move(labels), std::move(probs));
}

std::string label_for_byte(std::uint8_t b) {
    if (b >= 0x21 && b <= 0x7e) {
        return std::string(1, static_cast<char>(b));
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", b);
    return buf;
}

std::uint8_t byte_for_label(const std::string& label) {
    if (label.size() == 1) {
        return static_cast<std::uint8_t>(label[0]);
    }
    if (label.size() == 4 && label[0] == '0' && label[1] == 'x') {
        unsigned value = 0;
        for (int i = 2; i < 4; ++i) {
            const char c = label[i];
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<unsigned>(c - 'a' + 10);
            else raise(Errc::LabelNotByte, "label '" + label + "' is not a byte");
        }
        return static_cast<std::uint8_t>(value);
    }
    raise(Errc::LabelNotByte, "label '" + label + "' is not a byte");
}

SequenceModel SequenceModel::iid(SourceDistribution dist) {
    SequenceModel m;
    m.markov_ = false;
    m.initial_ = std::move(dist);
    return m;
}

SequenceModel SequenceModel::markov(
    SourceDistribution initial,
    std::vector<std::vector<Rational>> transitions) {
    const std::size_t q = initial.size();
    if (transitions.size() != q) {
        raise(Errc::ShapeMismatch, "transition matrix must have one row per symbol");
    }
    for (const auto& row : transitions) {
        if (row.size() != q) {
            raise(Errc::ShapeMismatch, "transition rows must have q entries");
        }
        Rational sum = 0;
        for (const auto& p : row) {
            if (p < 0) {
                raise(Errc::NegativeProbability,
                      "negative transition probability " + format_rational(p));
            }
            sum += p;
        }
        if (sum != 1) {
            raise(Errc::SumNotOne,
                  "transition row sums to " + format_rational(sum) + ", not 1");
        }
    }
    SequenceModel m;
    m.markov_ = true;
    m.initial_ = std::move(initial);
    m.transitions_ = std::move(transitions);
    return m;
}

} // namespace scode
