// scode — command line front door for the source coding library.
//
// Subcommands: entropy, code, bounds, extend, encode, decode, physics,
// sensitivity. Exit codes: 0 success, 1 usage/validation error, 2 a bound
// check was violated.

#include "scode/bounds.hpp"
#include "scode/codec.hpp"
#include "scode/coding.hpp"
#include "scode/entropy.hpp"
#include "scode/errors.hpp"
#include "scode/json_io.hpp"
#include "scode/source_model.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace scode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin),
                std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
    const auto bytes = read_binary(path);
    return {bytes.begin(), bytes.end()};
}

void write_binary(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(Errc::IoError, "write to '" + path + "' failed");
}

struct IngestOpts {
    std::string dist_path;
    std::string raw_path;
};

void add_ingest_options(CLI::App* cmd, IngestOpts& opts) {
    auto* dist = cmd->add_option("--dist", opts.dist_path,
                                 "distribution JSON file ('-' for stdin)");
    auto* raw = cmd->add_option(
        "--raw", opts.raw_path,
        "raw file; the empirical byte distribution is used ('-' for stdin)");
    dist->excludes(raw);
    raw->excludes(dist);
}

SourceDistribution ingest(const IngestOpts& opts) {
    if (!opts.dist_path.empty()) {
        return distribution_from_json(read_text(opts.dist_path));
    }
    if (!opts.raw_path.empty()) {
        return empirical_distribution(read_binary(opts.raw_path));
    }
    raise(Errc::EmptyInput, "one of --dist or --raw is required");
}

CodeFamily parse_family(const std::string& name) {
    if (name == "classic") return CodeFamily::ClassicShannon;
    if (name == "extended") return CodeFamily::ExtendedShannon;
    if (name == "block") return CodeFamily::Block;
    if (name == "huffman") return CodeFamily::Huffman;
    raise(Errc::BadFamily, "unknown code family '" + name + "'");
}

void emit_json(const OrderedJson& doc) { std::cout << doc.dump(2) << "\n"; }

void print_bound_report(const BoundReport& r) {
    std::cout << "family:      " << family_name(r.family) << "\n";
    std::cout << "radix:       " << r.radix << "\n";
    if (r.n != 1) std::cout << "n:           " << r.n << "\n";
    std::cout << "H_r:         " << fmt_double(r.h_r) << "\n";
    std::cout << "avg length:  " << format_rational(r.avg_len_per_symbol) << " ("
              << fmt_double(to_double(r.avg_len_per_symbol)) << ")\n";
    std::cout << "lower bound: " << (r.lower_ok ? "ok" : "VIOLATED")
              << "  (H_r <= avg)\n";
    const std::string upper = r.family == CodeFamily::ClassicShannon
                                  ? "(avg < H_r + 1)"
                                  : (r.n == 1 ? "(avg <= H_r + 1)"
                                              : "(avg <= H_r + 1/n)");
    std::cout << "upper bound: " << (r.upper_ok ? "ok" : "VIOLATED") << "  "
              << upper << "\n";
    std::cout << "excess:      " << fmt_double(r.excess) << "\n";
}

int cmd_entropy(const IngestOpts& in, unsigned radix, bool json) {
    const auto dist = ingest(in);
    const double bits = entropy_bits(dist).value;
    const double h_r = entropy_radix(dist, radix).value;
    if (json) {
        emit_json({{"q", dist.size()},
                   {"radix", radix},
                   {"h_bits", bits},
                   {"h_radix", h_r}});
    } else {
        std::cout << "q:            " << dist.size() << "\n";
        std::cout << "H (bits):     " << fmt_double(bits) << "\n";
        std::cout << "H_" << radix << ":          " << fmt_double(h_r) << "\n";
    }
    return kExitOk;
}

int cmd_code(const IngestOpts& in, unsigned radix, const std::string& family_name_,
             bool json) {
    const auto dist = ingest(in);
    const CodeFamily family = parse_family(family_name_);

    LengthProfile profile;
    std::optional<Codebook> book;
    if (family == CodeFamily::Huffman) {
        auto built = huffman_code(dist, radix);
        profile = std::move(built.profile);
        book.emplace(std::move(built.book));
    } else {
        profile = family == CodeFamily::ClassicShannon
                      ? classic_shannon_lengths(dist, radix)
                      : (family == CodeFamily::ExtendedShannon
                             ? extended_shannon_lengths(dist, radix)
                             : block_lengths(dist, radix));
        book.emplace(canonical_codewords(profile, dist.labels()));
    }

    const Rational avg = average_length(dist, profile);
    const Rational kraft = kraft_sum(profile);
    const double h_r = entropy_radix(dist, radix).value;

    if (json) {
        OrderedJson symbols = OrderedJson::array();
        for (std::size_t i = 0; i < dist.size(); ++i) {
            symbols.push_back({{"label", dist.label(i)},
                               {"p", format_rational(dist.prob(i))},
                               {"length", profile.lengths[i]},
                               {"code", book->has_word(i)
                                            ? OrderedJson(book->word_text(i))
                                            : OrderedJson(nullptr)}});
        }
        emit_json({{"radix", radix},
                   {"family", family_name(family)},
                   {"symbols", std::move(symbols)},
                   {"avg_len", format_rational(avg)},
                   {"avg_len_approx", to_double(avg)},
                   {"kraft_sum", format_rational(kraft)},
                   {"h_r", h_r}});
    } else {
        std::cout << "family: " << family_name(family) << "  radix: " << radix
                  << "\n";
        for (std::size_t i = 0; i < dist.size(); ++i) {
            std::printf("  %-12s p=%-10s l=%-3u %s\n", dist.label(i).c_str(),
                        format_rational(dist.prob(i)).c_str(), profile.lengths[i],
                        book->has_word(i) ? book->word_text(i).c_str() : "-");
        }
        std::cout << "avg length: " << format_rational(avg) << " ("
                  << fmt_double(to_double(avg)) << ")\n";
        std::cout << "kraft sum:  " << format_rational(kraft) << "\n";
        std::cout << "H_r:        " << fmt_double(h_r) << "\n";
    }
    return kExitOk;
}

int cmd_bounds(const IngestOpts& in, unsigned radix,
               const std::string& family_name_, bool json) {
    const auto dist = ingest(in);
    const CodeFamily family = parse_family(family_name_);
    const BoundReport report = check_code_bounding(dist, radix, family);
    if (json) emit_json(bound_report_to_json(report));
    else print_bound_report(report);
    return bounds_hold(report) ? kExitOk : kExitViolation;
}

int cmd_extend(const IngestOpts& in, unsigned radix, unsigned n,
               std::uint64_t cap, bool table, bool json) {
    const auto dist = ingest(in);
    if (table) {
        const ConvergenceTable t = convergence_table(dist, radix, n, cap);
        if (json) emit_json(convergence_to_json(t));
        else std::cout << convergence_to_csv(t);
        for (const auto& row : t.rows) {
            if (!bounds_hold(row)) return kExitViolation;
        }
        return kExitOk;
    }
    const BoundReport report = check_compression(dist, radix, n, cap);
    if (json) emit_json(bound_report_to_json(report));
    else print_bound_report(report);
    return bounds_hold(report) ? kExitOk : kExitViolation;
}

int cmd_encode(const std::string& raw_path, const std::string& out_path,
               unsigned radix, const std::string& family_name_, bool json) {
    const auto data = read_binary(raw_path);
    const auto container = encode_file_bytes(data, radix, parse_family(family_name_));
    write_binary(out_path, container);
    if (json) {
        emit_json({{"input_bytes", data.size()},
                   {"container_bytes", container.size()},
                   {"output", out_path}});
    } else {
        std::cout << data.size() << " bytes -> " << container.size()
                  << " container bytes -> " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_decode(const std::string& in_path, const std::string& out_path,
               bool json) {
    const auto container = read_binary(in_path);
    const auto bytes = decode_file_bytes(container);
    write_binary(out_path, bytes);
    if (json) {
        emit_json({{"container_bytes", container.size()},
                   {"output_bytes", bytes.size()},
                   {"output", out_path}});
    } else {
        std::cout << container.size() << " container bytes -> " << bytes.size()
                  << " bytes -> " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_physics(const std::string& gibbs_dist, std::int64_t boltzmann_omega,
                double to_bits_value, bool has_to_bits, bool json) {
    if (!gibbs_dist.empty()) {
        const auto dist = distribution_from_json(read_text(gibbs_dist));
        const PhysicalEntropy s = gibbs_entropy(dist);
        const double bits = physical_to_bits(s).value;
        if (json) {
            emit_json({{"gibbs_j_per_k", s.joules_per_kelvin}, {"bits", bits}});
        } else {
            std::cout << "Gibbs entropy: " << fmt_double(s.joules_per_kelvin)
                      << " J/K\n";
            std::cout << "in bits:       " << fmt_double(bits) << "\n";
        }
        return kExitOk;
    }
    if (boltzmann_omega >= 0) {
        const PhysicalEntropy s =
            boltzmann_entropy(static_cast<std::uint64_t>(boltzmann_omega));
        const double bits = physical_to_bits(s).value;
        if (json) {
            emit_json({{"omega", boltzmann_omega},
                       {"boltzmann_j_per_k", s.joules_per_kelvin},
                       {"bits", bits}});
        } else {
            std::cout << "Boltzmann entropy: " << fmt_double(s.joules_per_kelvin)
                      << " J/K\n";
            std::cout << "in bits:           " << fmt_double(bits) << "\n";
        }
        return kExitOk;
    }
    if (has_to_bits) {
        const double bits = physical_to_bits({to_bits_value}).value;
        if (json) emit_json({{"j_per_k", to_bits_value}, {"bits", bits}});
        else std::cout << fmt_double(bits) << " bits\n";
        return kExitOk;
    }
    raise(Errc::EmptyInput,
          "one of --gibbs-from-dist, --boltzmann, --to-bits is required");
}

int cmd_sensitivity(unsigned q, unsigned radix, const std::string& eps_text,
                    bool json) {
    const Rational eps = parse_rational(eps_text);
    const SensitivityReport report = excess_sensitivity(q, radix, eps);
    if (json) {
        emit_json(sensitivity_to_json(report));
    } else {
        std::cout << "q: " << report.q << "  radix: " << report.radix
                  << "  epsilon: " << format_rational(report.epsilon) << "\n";
        std::cout << "just over  (q-1 symbols at 1/q + eps): excess "
                  << fmt_double(report.excess_just_over) << "\n";
        std::cout << "just under (q-1 symbols at 1/q - eps): excess "
                  << fmt_double(report.excess_just_under) << "\n";
        std::cout << "note: the directions differ; just-under lands near "
                     "(q-1)/q = "
                  << fmt_double((report.q - 1) / static_cast<double>(report.q))
                  << ", just-over near 1/q\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"source coding toolkit: entropy, Shannon/Huffman codes, "
                 "coding bound checks, extensions, file codec"};
    app.require_subcommand(1);

    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of text")->configurable(false);
    unsigned radix = 2;
    std::uint64_t cap = kDefaultExtensionCap;

    IngestOpts ing;

    auto* entropy_cmd = app.add_subcommand("entropy", "entropy of a source");
    add_ingest_options(entropy_cmd, ing);
    entropy_cmd->add_option("--radix", radix, "code radix r (default 2)");

    std::string family = "extended";
    auto* code_cmd = app.add_subcommand("code", "build a code and show it");
    add_ingest_options(code_cmd, ing);
    code_cmd->add_option("--radix", radix, "code radix r (default 2)");
    code_cmd->add_option("--family", family,
                         "classic | extended | block | huffman");

    auto* bounds_cmd =
        app.add_subcommand("bounds", "check the code bounding inequalities");
    add_ingest_options(bounds_cmd, ing);
    bounds_cmd->add_option("--radix", radix, "code radix r (default 2)");
    bounds_cmd->add_option("--family", family, "classic | extended");

    unsigned ext_n = 1;
    bool table = false;
    auto* extend_cmd = app.add_subcommand(
        "extend", "code the nth extension and check compression bounds");
    add_ingest_options(extend_cmd, ing);
    extend_cmd->add_option("-n", ext_n, "extension order (default 1)");
    extend_cmd->add_option("--radix", radix, "code radix r (default 2)");
    extend_cmd->add_option("--cap", cap, "max tuple count (default 1e6)");
    extend_cmd->add_flag("--table", table, "emit a CSV convergence table for 1..n");

    std::string enc_out;
    std::string enc_family = "huffman";
    auto* encode_cmd = app.add_subcommand("encode", "encode a file into an "
                                                    "ENC1 container");
    encode_cmd->add_option("--raw", ing.raw_path, "input file ('-' for stdin)")
        ->required();
    encode_cmd->add_option("--out", enc_out, "output container path")->required();
    encode_cmd->add_option("--radix", radix, "code radix r (default 2)");
    encode_cmd->add_option("--family", enc_family,
                           "classic | extended | block | huffman");

    std::string dec_in;
    std::string dec_out;
    auto* decode_cmd = app.add_subcommand("decode", "decode an ENC1 container");
    decode_cmd->add_option("--in", dec_in, "container path")->required();
    decode_cmd->add_option("--out", dec_out, "restored output path")->required();

    std::string gibbs_dist;
    std::int64_t boltzmann_omega = -1;
    double to_bits_value = 0;
    auto* physics_cmd =
        app.add_subcommand("physics", "physical entropy conversions");
    auto* opt_gibbs = physics_cmd->add_option(
        "--gibbs-from-dist", gibbs_dist, "Gibbs entropy of a distribution file");
    auto* opt_boltz = physics_cmd->add_option(
        "--boltzmann", boltzmann_omega, "Boltzmann entropy of Ω microstates");
    auto* opt_bits = physics_cmd->add_option(
        "--to-bits", to_bits_value, "convert a J/K entropy value to bits");
    opt_gibbs->excludes(opt_boltz)->excludes(opt_bits);
    opt_boltz->excludes(opt_bits);

    unsigned sens_q = 4;
    std::string sens_eps = "1/1000";
    auto* sens_cmd = app.add_subcommand(
        "sensitivity", "classic Shannon excess under ±eps perturbation of a "
                       "uniform source with q = r^k symbols");
    sens_cmd->add_option("-q", sens_q, "symbol count, a power of the radix");
    sens_cmd->add_option("--radix", radix, "code radix r (default 2)");
    sens_cmd->add_option("--eps", sens_eps, "exact perturbation, e.g. 1/1000");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (entropy_cmd->parsed()) return cmd_entropy(ing, radix, json);
        if (code_cmd->parsed()) return cmd_code(ing, radix, family, json);
        if (bounds_cmd->parsed()) return cmd_bounds(ing, radix, family, json);
        if (extend_cmd->parsed())
            return cmd_extend(ing, radix, ext_n, cap, table, json);
        if (encode_cmd->parsed())
            return cmd_encode(ing.raw_path, enc_out, radix, enc_family, json);
        if (decode_cmd->parsed()) return cmd_decode(dec_in, dec_out, json);
        if (physics_cmd->parsed())
            return cmd_physics(gibbs_dist, boltzmann_omega, to_bits_value,
                               opt_bits->count() > 0, json);
        if (sens_cmd->parsed())
            return cmd_sensitivity(sens_q, radix, sens_eps, json);
    } catch (const scode::Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
