#include "scode/json_io.hpp"

#include "scode/errors.hpp"

#include <cmath>
#include <cstdio>

namespace scode {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

OrderedJson parse_or_raise(const std::string& text) {
    try {
        return OrderedJson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(Errc::ParseError, e.what());
    }
}

} // namespace

SourceDistribution distribution_from_json(const std::string& text) {
    const OrderedJson doc = parse_or_raise(text);
    if (!doc.is_object() || !doc.contains("symbols") || !doc["symbols"].is_array()) {
        raise(Errc::ParseError, "expected {\"symbols\": [...]}");
    }
    std::vector<std::string> labels;
    std::vector<Rational> probs;
    for (const auto& entry : doc["symbols"]) {
        if (!entry.is_object() || !entry.contains("label") || !entry.contains("p")) {
            raise(Errc::ParseError, "each symbol needs \"label\" and \"p\"");
        }
        if (!entry["label"].is_string()) {
            raise(Errc::ParseError, "symbol label must be a string");
        }
        if (!entry["p"].is_string()) {
            raise(Errc::ParseError,
                  "probability must be an exact \"num/den\" string, not a number");
        }
        labels.push_back(entry["label"].get<std::string>());
        probs.push_back(parse_rational(entry["p"].get<std::string>()));
    }
    return SourceDistribution::create(std::move(labels), std::move(probs));
}

std::string distribution_to_json(const SourceDistribution& dist) {
    OrderedJson symbols = OrderedJson::array();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        symbols.push_back(OrderedJson{{"label", dist.label(i)},
                                      {"p", format_rational(dist.prob(i))}});
    }
    return OrderedJson{{"symbols", std::move(symbols)}}.dump();
}

std::string codebook_to_json(const Codebook& book) {
    OrderedJson codes = OrderedJson::object();
    for (std::size_t i = 0; i < book.symbol_count(); ++i) {
        if (book.has_word(i)) codes[book.label(i)] = book.word_text(i);
    }
    return OrderedJson{{"radix", book.radix()}, {"codes", std::move(codes)}}.dump();
}

Codebook codebook_from_json(const std::string& text) {
    const OrderedJson doc = parse_or_raise(text);
    if (!doc.is_object() || !doc.contains("radix") || !doc.contains("codes") ||
        !doc["radix"].is_number_unsigned() || !doc["codes"].is_object()) {
        raise(Errc::ParseError, "expected {\"radix\":r,\"codes\":{...}}");
    }
    const auto radix = doc["radix"].get<unsigned>();
    if (radix < 2 || radix > kMaxRadix) {
        raise(Errc::BadRadix, "radix out of range in codebook");
    }
    std::vector<std::string> labels;
    std::vector<std::optional<Codeword>> words;
    for (const auto& [label, value] : doc["codes"].items()) {
        if (!value.is_string()) {
            raise(Errc::ParseError, "codeword must be a digit string");
        }
        Codeword w;
        for (char c : value.get<std::string>()) {
            w.digits.push_back(static_cast<std::uint8_t>(char_to_digit(c, radix)));
        }
        labels.push_back(label);
        words.push_back(std::move(w));
    }
    return Codebook(radix, CodeFamily::Custom, std::move(labels), std::move(words));
}

OrderedJson bound_report_to_json(const BoundReport& report) {
    return OrderedJson{
        {"radix", report.radix},
        {"n", report.n},
        {"family", family_name(report.family)},
        {"h_r", report.h_r},
        {"avg_len_per_symbol", format_rational(report.avg_len_per_symbol)},
        {"avg_len_per_symbol_approx", to_double(report.avg_len_per_symbol)},
        {"lower_ok", report.lower_ok},
        {"upper_ok", report.upper_ok},
        {"excess", report.excess},
        {"bound_gap", report.bound_gap},
    };
}

OrderedJson convergence_to_json(const ConvergenceTable& table) {
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : table.rows) rows.push_back(bound_report_to_json(r));
    return OrderedJson{{"rows", std::move(rows)}};
}

std::string convergence_to_csv(const ConvergenceTable& table) {
    std::string out = "n,avg,entropy,excess,bound\n";
    for (const auto& r : table.rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt_double(to_double(r.avg_len_per_symbol));
        out += ',';
        out += fmt_double(r.h_r);
        out += ',';
        out += fmt_double(r.excess);
        out += ',';
        out += fmt_double(1.0 / r.n);
        out += '\n';
    }
    return out;
}

OrderedJson sensitivity_to_json(const SensitivityReport& report) {
    return OrderedJson{
        {"q", report.q},
        {"radix", report.radix},
        {"epsilon", format_rational(report.epsilon)},
        {"excess_just_over", report.excess_just_over},
        {"excess_just_under", report.excess_just_under},
        {"avg_just_over", format_rational(report.avg_just_over)},
        {"avg_just_under", format_rational(report.avg_just_under)},
        {"h_just_over", report.h_just_over},
        {"h_just_under", report.h_just_under},
        {"note", "the two perturbation directions give different excesses: "
                 "just-under lands near (q-1)/q, just-over near 1/q"},
    };
}

} // namespace scode
