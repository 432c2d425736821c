#pragma once

#include "scode/coding.hpp"
#include "scode/rational.hpp"
#include "scode/source_model.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace scode {

/// Float tolerance for comparisons that mix an exact rational with an
/// entropy; below this margin the comparison escalates to 50-digit floats.
inline constexpr double kBoundTol = 1e-9;

/// One checked (distribution, code, radix, n). avg_len_per_symbol is
/// exact: L̄ for n = 1, L̄(S^n)/n otherwise.
struct BoundReport {
    unsigned radix = 2;
    unsigned n = 1;
    CodeFamily family = CodeFamily::ExtendedShannon;
    double h_r = 0;
    Rational avg_len_per_symbol;
    bool lower_ok = false; // H_r <= avg
    bool upper_ok = false; // avg <= H_r + 1/n (strict < for classic Shannon)
    double excess = 0;     // avg - H_r
    double bound_gap = 0;  // H_r + 1/n - avg
};

inline bool bounds_hold(const BoundReport& r) { return r.lower_ok && r.upper_ok; }

/// Code Bounding check for classic or extended Shannon coding of S.
/// The classic upper bound is strict; the extended one admits equality.
BoundReport check_code_bounding(const SourceDistribution& dist, unsigned radix,
                                CodeFamily family);

/// Code Compression check: extended-Shannon coding of S^n, per-symbol
/// average against H_r(S) + 1/n.
BoundReport check_compression(const SourceDistribution& dist, unsigned radix,
                              unsigned n,
                              std::uint64_t cap = kDefaultExtensionCap);

struct ConvergenceTable {
    std::vector<BoundReport> rows; // n = 1..n_max
};

ConvergenceTable convergence_table(const SourceDistribution& dist,
                                   unsigned radix, unsigned n_max,
                                   std::uint64_t cap = kDefaultExtensionCap);

/// Classic-Shannon excess L̄ - H_r for near-uniform sources with q = r^k
/// symbols, perturbed by ±ε both ways. "Just over": q-1 symbols at
/// 1/q + ε; "just under": q-1 symbols at 1/q - ε.
struct SensitivityReport {
    unsigned q = 0;
    unsigned radix = 2;
    Rational epsilon;
    double excess_just_over = 0;
    double excess_just_under = 0;
    Rational avg_just_over;
    Rational avg_just_under;
    double h_just_over = 0;
    double h_just_under = 0;
};

SensitivityReport excess_sensitivity(unsigned q, unsigned radix,
                                     const Rational& epsilon);

/// Good Code Bounding check: H_r <= L̄ <= H_r + k with k = log_r q, plus
/// the tighter k = 1 form whenever L̄ <= L̄ of the extended Shannon code.
struct GoodCodeBoundReport {
    bool is_good = false;
    double k_logq = 0;
    bool holds_logq = false;
    bool k1_applicable = false;
    bool holds_one = false;
};

GoodCodeBoundReport good_code_bound_check(const SourceDistribution& dist,
                                          unsigned radix,
                                          const LengthProfile& profile);

/// Suite generator: q weights in [1,1000] normalized; with probability
/// 0.1 a certain event, with probability 0.1 one weight zeroed. Boundary
/// cases are sampled, not hoped for.
SourceDistribution random_distribution(std::mt19937_64& rng, std::size_t q);

/// Code Bounding checks over independent inputs, evaluated in parallel.
std::vector<BoundReport> check_many(std::span<const SourceDistribution> dists,
                                    unsigned radix, CodeFamily family);

} // namespace scode
