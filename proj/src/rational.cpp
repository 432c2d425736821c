#include "scode/rational.hpp"

#include "scode/errors.hpp"

#include <cctype>
#include <cmath>

namespace scode {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::Empty: return "Empty";
    case Errc::ExtensionTooLarge: return "ExtensionTooLarge";
    case Errc::BadRadix: return "BadRadix";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::TooManySequences: return "TooManySequences";
    case Errc::BadOmega: return "BadOmega";
    case Errc::AllZero: return "AllZero";
    case Errc::KraftViolation: return "KraftViolation";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadFamily: return "BadFamily";
    case Errc::BadShape: return "BadShape";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::TrailingGarbage: return "TrailingGarbage";
    case Errc::UnknownPrefix: return "UnknownPrefix";
    case Errc::ParseError: return "ParseError";
    case Errc::LabelNotByte: return "LabelNotByte";
    case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

Rational parse_rational(std::string_view text) {
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };

    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    std::string_view num = body;
    std::string_view den = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!is_digits(num) || !is_digits(den)) {
        raise(Errc::ParseError,
              "not an exact rational: '" + std::string(text) +
                  "' (expected digits or digits/digits; floats are rejected)");
    }
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) {
        raise(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    if (negative) n = -n;
    return Rational(n, d);
}

std::string format_rational(const Rational& value) {
    std::string s = numerator(value).str();
    if (denominator(value) != 1) {
        s += '/';
        s += denominator(value).str();
    }
    return s;
}

BigInt pow_uint(const BigInt& base, unsigned exp) {
    BigInt acc = 1;
    BigInt b = base;
    unsigned e = exp;
    while (e != 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

double log2_bigint(const BigInt& value) {
    if (value <= 0) {
        raise(Errc::ParseError, "log2 of non-positive integer");
    }
    const unsigned bits = boost::multiprecision::msb(value);
    if (bits <= 52) {
        return std::log2(value.convert_to<double>());
    }
    // Keep the top 63 bits; the rest contribute below double precision.
    const unsigned shift = bits - 62;
    const BigInt top = value >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double log2_rational(const Rational& value) {
    return log2_bigint(numerator(value)) - log2_bigint(denominator(value));
}

double to_double(const Rational& value) {
    return to_bigfloat(value).convert_to<double>();
}

BigFloat to_bigfloat(const Rational& value) {
    return BigFloat(numerator(value)) / BigFloat(denominator(value));
}

BigFloat log2_rational_hp(const Rational& value) {
    static const BigFloat ln2 = log(BigFloat(2));
    return (log(BigFloat(numerator(value))) - log(BigFloat(denominator(value)))) / ln2;
}

} // namespace scode
