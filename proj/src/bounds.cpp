#include "scode/bounds.hpp"

#include "scode/entropy.hpp"
#include "scode/errors.hpp"
#include "scode/kernels.hpp"

#include <cmath>
#include <functional>

namespace scode {

namespace {

// Escalation threshold for 50-digit comparisons.
const BigFloat& hp_tol() {
    static const BigFloat tol{"1e-40"};
    return tol;
}

using HpFn = std::function<BigFloat()>;

// avg <= bound? bound given in double and, lazily, at high precision.
bool avg_le_bound(const Rational& avg, double bound_d, const HpFn& bound_hp,
                  bool strict) {
    const double margin = bound_d - to_double(avg);
    if (margin > kBoundTol) return true;
    if (margin < -kBoundTol) return false;
    const BigFloat m = bound_hp() - to_bigfloat(avg);
    return strict ? m > hp_tol() : m >= -hp_tol();
}

// avg >= bound?
bool avg_ge_bound(const Rational& avg, double bound_d, const HpFn& bound_hp) {
    const double margin = to_double(avg) - bound_d;
    if (margin > kBoundTol) return true;
    if (margin < -kBoundTol) return false;
    const BigFloat m = to_bigfloat(avg) - bound_hp();
    return m >= -hp_tol();
}

} // namespace

BoundReport check_code_bounding(const SourceDistribution& dist, unsigned radix,
                                CodeFamily family) {
    if (family != CodeFamily::ClassicShannon &&
        family != CodeFamily::ExtendedShannon) {
        raise(Errc::BadFamily, "code bounding applies to Shannon families");
    }
    const bool extended = family == CodeFamily::ExtendedShannon;
    const LengthProfile profile = extended ? extended_shannon_lengths(dist, radix)
                                           : classic_shannon_lengths(dist, radix);
    const Rational avg = average_length(dist, profile);
    const double h_r = entropy_radix(dist, radix).value;
    const HpFn h_hp = [&dist, radix] { return entropy_radix_hp(dist, radix); };

    BoundReport report;
    report.radix = radix;
    report.n = 1;
    report.family = family;
    report.h_r = h_r;
    report.avg_len_per_symbol = avg;
    report.lower_ok = avg_ge_bound(avg, h_r, h_hp);
    report.upper_ok = avg_le_bound(
        avg, h_r + 1.0, [&h_hp] { return h_hp() + 1; }, /*strict=*/!extended);
    report.excess = to_double(avg) - h_r;
    report.bound_gap = h_r + 1.0 - to_double(avg);
    return report;
}

BoundReport check_compression(const SourceDistribution& dist, unsigned radix,
                              unsigned n, std::uint64_t cap) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
    const auto stats =
        kernels::extension_stats(dist, n, radix, /*extended=*/true, cap);
    const Rational avg = stats.avg_len_blocks / n;
    const double h_r = entropy_radix(dist, radix).value;
    const HpFn h_hp = [&dist, radix] { return entropy_radix_hp(dist, radix); };
    const Rational inv_n(1, n);

    BoundReport report;
    report.radix = radix;
    report.n = n;
    report.family = CodeFamily::ExtendedShannon;
    report.h_r = h_r;
    report.avg_len_per_symbol = avg;
    report.lower_ok = avg_ge_bound(avg, h_r, h_hp);
    report.upper_ok = avg_le_bound(
        avg, h_r + to_double(inv_n),
        [&h_hp, n] { return h_hp() + BigFloat(1) / n; }, /*strict=*/false);
    report.excess = to_double(avg) - h_r;
    report.bound_gap = h_r + to_double(inv_n) - to_double(avg);
    return report;
}

ConvergenceTable convergence_table(const SourceDistribution& dist,
                                   unsigned radix, unsigned n_max,
                                   std::uint64_t cap) {
    if (n_max < 1) raise(Errc::BadShape, "n_max must be >= 1");
    // fail before any work if the deepest extension is over the cap
    std::uint64_t count = 1;
    for (unsigned k = 0; k < n_max; ++k) {
        if (dist.size() != 0 && count > cap / dist.size()) {
            raise(Errc::ExtensionTooLarge,
                  "q^n_max exceeds tuple cap of " + std::to_string(cap));
        }
        count *= dist.size();
    }
    ConvergenceTable table;
    table.rows.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        table.rows.push_back(check_compression(dist, radix, n, cap));
    }
    return table;
}

SensitivityReport excess_sensitivity(unsigned q, unsigned radix,
                                     const Rational& epsilon) {
    if (radix < 2) raise(Errc::BadRadix, "radix must be >= 2");
    // q must be a power of the radix
    BigInt v = 1;
    while (v < q) v *= radix;
    if (v != q) {
        raise(Errc::BadShape, "q must be a power of the radix");
    }
    const Rational uniform(1, q);
    if (epsilon < 0 || epsilon >= uniform * uniform) {
        raise(Errc::BadShape, "epsilon must lie in [0, 1/q^2)");
    }

    auto build = [q](const Rational& bulk, const Rational& last) {
        std::vector<std::string> labels;
        std::vector<Rational> probs;
        for (unsigned i = 0; i < q; ++i) {
            labels.push_back("s" + std::to_string(i));
            probs.push_back(i + 1 < q ? bulk : last);
        }
        return SourceDistribution::create(std::move(labels), std::move(probs));
    };

    const auto over = build(uniform + epsilon, uniform - (q - 1) * epsilon);
    const auto under = build(uniform - epsilon, uniform + (q - 1) * epsilon);

    SensitivityReport report;
    report.q = q;
    report.radix = radix;
    report.epsilon = epsilon;
    report.avg_just_over = average_length(over, classic_shannon_lengths(over, radix));
    report.avg_just_under =
        average_length(under, classic_shannon_lengths(under, radix));
    report.h_just_over = entropy_radix(over, radix).value;
    report.h_just_under = entropy_radix(under, radix).value;
    report.excess_just_over = to_double(report.avg_just_over) - report.h_just_over;
    report.excess_just_under =
        to_double(report.avg_just_under) - report.h_just_under;
    return report;
}

GoodCodeBoundReport good_code_bound_check(const SourceDistribution& dist,
                                          unsigned radix,
                                          const LengthProfile& profile) {
    if (profile.radix != radix) {
        raise(Errc::ShapeMismatch, "profile radix does not match");
    }
    const Rational avg = average_length(dist, profile);
    const double h_r = entropy_radix(dist, radix).value;
    const HpFn h_hp = [&dist, radix] { return entropy_radix_hp(dist, radix); };
    const double k_logq = std::log2(static_cast<double>(dist.size())) /
                          std::log2(static_cast<double>(radix));

    GoodCodeBoundReport report;
    report.is_good = is_good_code(dist, profile).good;
    report.k_logq = k_logq;
    const bool lower = avg_ge_bound(avg, h_r, h_hp);
    report.holds_logq =
        lower && avg_le_bound(avg, h_r + k_logq,
                              [&h_hp, &dist, radix] {
                                  return h_hp() + log(BigFloat(dist.size())) /
                                                      log(BigFloat(radix));
                              },
                              /*strict=*/false);
    const Rational avg_extended =
        average_length(dist, extended_shannon_lengths(dist, radix));
    report.k1_applicable = avg <= avg_extended;
    report.holds_one =
        report.k1_applicable &&
        lower &&
        avg_le_bound(avg, h_r + 1.0, [&h_hp] { return h_hp() + 1; },
                     /*strict=*/false);
    return report;
}

SourceDistribution random_distribution(std::mt19937_64& rng, std::size_t q) {
    std::uniform_int_distribution<unsigned> weight(1, 1000);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, q - 1);

    std::vector<unsigned long> weights(q);
    for (auto& w : weights) w = weight(rng);

    const double c = coin(rng);
    if (c < 0.1) {
        // certain event
        const std::size_t i = pick(rng);
        for (std::size_t j = 0; j < q; ++j) weights[j] = j == i ? 1 : 0;
    } else if (c < 0.2 && q >= 2) {
        weights[pick(rng)] = 0;
    }

    unsigned long total = 0;
    for (auto w : weights) total += w;

    std::vector<std::string> labels;
    std::vector<Rational> probs;
    for (std::size_t i = 0; i < q; ++i) {
        labels.push_back("s" + std::to_string(i));
        probs.emplace_back(weights[i], total);
    }
    return SourceDistribution::create(std::move(labels), std::move(probs));
}

std::vector<BoundReport> check_many(std::span<const SourceDistribution> dists,
                                    unsigned radix, CodeFamily family) {
    std::vector<BoundReport> reports(dists.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dists.size()); ++i) {
        reports[static_cast<std::size_t>(i)] =
            check_code_bounding(dists[static_cast<std::size_t>(i)], radix, family);
    }
    return reports;
}

} // namespace scode
