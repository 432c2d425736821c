#include "scode/kernels.hpp"

#include "scode/errors.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scode::kernels {

namespace {

struct KahanSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// num/den as a double; magnitude-safe for integers beyond double range.
double ratio_to_double(const BigInt& num, const BigInt& den) {
    if (boost::multiprecision::msb(den) < 1000 &&
        (num == 0 || boost::multiprecision::msb(num) < 1000)) {
        return num.convert_to<double>() / den.convert_to<double>();
    }
    return std::exp2(log2_bigint(num) - log2_bigint(den));
}

double entropy_term(const Rational& p) {
    const BigInt& num = numerator(p);
    const BigInt& den = denominator(p);
    if (num == 0 || num == den) return 0;
    // p * lg(1/p) with the log taken as lg(den) - lg(num)
    return ratio_to_double(num, den) * (log2_bigint(den) - log2_bigint(num));
}

int pick_threads(std::uint64_t count) {
#ifdef _OPENMP
    const std::uint64_t per_thread_min = 1024;
    const std::uint64_t cap = std::max<std::uint64_t>(1, count / per_thread_min);
    return static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(omp_get_max_threads()), cap));
#else
    (void)count;
    return 1;
#endif
}

std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t count,
                                                    int parts, int id) {
    const auto p = static_cast<std::uint64_t>(parts);
    const auto i = static_cast<std::uint64_t>(id);
    return {count * i / p, count * (i + 1) / p};
}

std::uint64_t checked_pow_count(std::size_t q, unsigned n) {
    std::uint64_t count = 1;
    for (unsigned k = 0; k < n; ++k) {
        if (q != 0 && count > (std::uint64_t{1} << 62) / q) {
            raise(Errc::ExtensionTooLarge, "q^n does not fit in 64 bits");
        }
        count *= q;
    }
    return count;
}

void index_to_digits(std::uint64_t t, std::size_t q, unsigned n,
                     std::uint32_t* digits) {
    for (unsigned k = n; k-- > 0;) {
        digits[k] = static_cast<std::uint32_t>(t % q);
        t /= q;
    }
}

} // namespace

bool parallel_available() {
#ifdef _OPENMP
    return omp_get_max_threads() > 1;
#else
    return false;
#endif
}

// --- entropy accumulation ----------------------------------------------------

double entropy_bits_sum_serial(std::span<const Rational> probs) {
    KahanSum acc;
    for (const auto& p : probs) acc.add(entropy_term(p));
    return std::max(acc.sum, 0.0);
}

double entropy_bits_sum_parallel(std::span<const Rational> probs) {
#ifdef _OPENMP
    const auto count = static_cast<std::uint64_t>(probs.size());
    const int threads = pick_threads(count);
    std::vector<KahanSum> parts(threads);
#pragma omp parallel num_threads(threads)
    {
        const int id = omp_get_thread_num();
        const auto [t0, t1] = chunk_range(count, threads, id);
        KahanSum local;
        for (std::uint64_t t = t0; t < t1; ++t) local.add(entropy_term(probs[t]));
        parts[id] = local;
    }
    KahanSum acc;
    for (const auto& part : parts) acc.add(part.sum);
    return std::max(acc.sum, 0.0);
#else
    return entropy_bits_sum_serial(probs);
#endif
}

double entropy_bits_sum(std::span<const Rational> probs, ExecMode mode) {
    const bool go_parallel =
        mode == ExecMode::Parallel ||
        (mode == ExecMode::Auto && parallel_available() &&
         probs.size() >= kParallelThreshold);
    return go_parallel ? entropy_bits_sum_parallel(probs)
                       : entropy_bits_sum_serial(probs);
}

// --- Shannon length assignment ------------------------------------------------

std::uint32_t shannon_symbol_length(const BigInt& num, const BigInt& den,
                                    unsigned radix, bool extended) {
    if (num == 0) return 0;
    if (num == den) return extended ? 1 : 0;
    std::uint32_t l = 0;
    BigInt v = num;
    while (v < den) {
        v *= radix;
        ++l;
    }
    return l;
}

std::vector<std::uint32_t> shannon_lengths_serial(std::span<const Rational> probs,
                                                  unsigned radix, bool extended) {
    std::vector<std::uint32_t> lengths(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        lengths[i] = shannon_symbol_length(numerator(probs[i]),
                                           denominator(probs[i]), radix, extended);
    }
    return lengths;
}

std::vector<std::uint32_t> shannon_lengths_parallel(std::span<const Rational> probs,
                                                    unsigned radix, bool extended) {
#ifdef _OPENMP
    std::vector<std::uint32_t> lengths(probs.size());
    const auto count = static_cast<std::int64_t>(probs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        lengths[i] = shannon_symbol_length(numerator(probs[i]),
                                           denominator(probs[i]), radix, extended);
    }
    return lengths;
#else
    return shannon_lengths_serial(probs, radix, extended);
#endif
}

std::vector<std::uint32_t> shannon_lengths(std::span<const Rational> probs,
                                           unsigned radix, bool extended,
                                           ExecMode mode) {
    const bool go_parallel =
        mode == ExecMode::Parallel ||
        (mode == ExecMode::Auto && parallel_available() &&
         probs.size() >= kParallelThreshold);
    return go_parallel ? shannon_lengths_parallel(probs, radix, extended)
                       : shannon_lengths_serial(probs, radix, extended);
}

// --- exact weighted length ------------------------------------------------------

Rational weighted_length_sum_serial(std::span<const Rational> probs,
                                    std::span<const std::uint32_t> lengths) {
    if (probs.size() != lengths.size()) {
        raise(Errc::ShapeMismatch, "probability and length counts differ");
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (lengths[i] != 0) sum += probs[i] * lengths[i];
    }
    return sum;
}

Rational weighted_length_sum_parallel(std::span<const Rational> probs,
                                      std::span<const std::uint32_t> lengths) {
#ifdef _OPENMP
    if (probs.size() != lengths.size()) {
        raise(Errc::ShapeMismatch, "probability and length counts differ");
    }
    const auto count = static_cast<std::uint64_t>(probs.size());
    const int threads = pick_threads(count);
    std::vector<Rational> parts(threads);
#pragma omp parallel num_threads(threads)
    {
        const int id = omp_get_thread_num();
        const auto [t0, t1] = chunk_range(count, threads, id);
        Rational local = 0;
        for (std::uint64_t t = t0; t < t1; ++t) {
            if (lengths[t] != 0) local += probs[t] * lengths[t];
        }
        parts[id] = std::move(local);
    }
    Rational sum = 0;
    for (const auto& part : parts) sum += part;
    return sum;
#else
    return weighted_length_sum_serial(probs, lengths);
#endif
}

Rational weighted_length_sum(std::span<const Rational> probs,
                             std::span<const std::uint32_t> lengths,
                             ExecMode mode) {
    const bool go_parallel =
        mode == ExecMode::Parallel ||
        (mode == ExecMode::Auto && parallel_available() &&
         probs.size() >= kParallelThreshold);
    return go_parallel ? weighted_length_sum_parallel(probs, lengths)
                       : weighted_length_sum_serial(probs, lengths);
}

// --- implicit nth-extension pass --------------------------------------------------

namespace {

struct ExtensionContext {
    std::size_t q = 0;
    unsigned n = 0;
    std::uint64_t count = 0;
    std::vector<BigInt> nums; // scaled numerators a_i, p_i = a_i / D
    BigInt den_pow;           // D^n
    double lg_den_pow = 0;
    double lg_radix = 0;
    unsigned radix = 2;
    bool extended = true;
    std::vector<BigInt> radix_pows;
};

ExtensionContext make_extension_context(const SourceDistribution& base,
                                        unsigned n, unsigned radix,
                                        bool extended, std::uint64_t cap) {
    if (n < 1) raise(Errc::BadShape, "extension order must be >= 1");
    ExtensionContext ctx;
    ctx.q = base.size();
    ctx.n = n;
    ctx.count = checked_pow_count(ctx.q, n);
    if (ctx.count > cap) {
        raise(Errc::ExtensionTooLarge,
              "q^n exceeds tuple cap of " + std::to_string(cap));
    }
    const BigInt den = base.common_denominator();
    ctx.nums = base.scaled_numerators(den);
    ctx.den_pow = pow_uint(den, n);
    ctx.lg_den_pow = ctx.den_pow == 1 ? 0.0 : log2_bigint(ctx.den_pow);
    ctx.lg_radix = std::log2(static_cast<double>(radix));
    ctx.radix = radix;
    ctx.extended = extended;

    const auto max_len =
        static_cast<std::size_t>(ctx.lg_den_pow / ctx.lg_radix) + 4;
    ctx.radix_pows.reserve(max_len + 1);
    BigInt p = 1;
    for (std::size_t l = 0; l <= max_len; ++l) {
        ctx.radix_pows.push_back(p);
        p *= radix;
    }
    return ctx;
}

// Tuple length via a float estimate corrected by exact comparisons. The
// result satisfies num*r^l >= D^n and (l == minimal) regardless of the
// estimate's rounding.
std::uint32_t tuple_length_estimated(const ExtensionContext& ctx,
                                     const BigInt& num) {
    const double est = (ctx.lg_den_pow - log2_bigint(num)) / ctx.lg_radix;
    auto l = static_cast<std::int64_t>(std::ceil(est - 1e-9));
    l = std::clamp<std::int64_t>(l, 1,
                                 static_cast<std::int64_t>(ctx.radix_pows.size()) - 1);
    while (num * ctx.radix_pows[static_cast<std::size_t>(l)] < ctx.den_pow) ++l;
    while (l > 1 &&
           num * ctx.radix_pows[static_cast<std::size_t>(l - 1)] >= ctx.den_pow) {
        --l;
    }
    return static_cast<std::uint32_t>(l);
}

struct ExtensionPartial {
    BigInt weighted_len_num; // Σ num_t * l_t
    KahanSum entropy;
};

// Walk tuples [t0, t1) with an odometer over scaled numerators.
void extension_chunk(const ExtensionContext& ctx, std::uint64_t t0,
                     std::uint64_t t1, bool estimate_lengths,
                     ExtensionPartial& out) {
    const unsigned n = ctx.n;
    std::vector<std::uint32_t> digits(n);
    index_to_digits(t0, ctx.q, n, digits.data());
    std::vector<BigInt> prefix(n + 1);
    prefix[0] = 1;
    for (unsigned k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * ctx.nums[digits[k]];

    for (std::uint64_t t = t0; t < t1; ++t) {
        const BigInt& num = prefix[n];
        if (num != 0) {
            std::uint32_t len;
            if (num == ctx.den_pow) {
                len = ctx.extended ? 1 : 0; // the certain tuple
            } else if (estimate_lengths) {
                len = tuple_length_estimated(ctx, num);
            } else {
                len = shannon_symbol_length(num, ctx.den_pow, ctx.radix, ctx.extended);
            }
            if (len != 0) out.weighted_len_num += num * len;
            if (num != ctx.den_pow) {
                out.entropy.add(ratio_to_double(num, ctx.den_pow) *
                                (ctx.lg_den_pow - log2_bigint(num)));
            }
        }
        if (t + 1 == t1) break;
        for (unsigned k = n; k-- > 0;) {
            if (++digits[k] < ctx.q) {
                for (unsigned j = k; j < n; ++j) {
                    prefix[j + 1] = prefix[j] * ctx.nums[digits[j]];
                }
                break;
            }
            digits[k] = 0;
        }
    }
}

ExtensionStats finish_stats(const ExtensionContext& ctx, BigInt weighted_num,
                            double entropy) {
    ExtensionStats stats;
    stats.tuple_count = ctx.count;
    stats.avg_len_blocks = Rational(std::move(weighted_num), ctx.den_pow);
    stats.entropy_bits = std::max(entropy, 0.0);
    return stats;
}

} // namespace

ExtensionStats extension_stats_serial(const SourceDistribution& base, unsigned n,
                                      unsigned radix, bool extended,
                                      std::uint64_t cap) {
    auto ctx = make_extension_context(base, n, radix, extended, cap);
    ExtensionPartial part;
    extension_chunk(ctx, 0, ctx.count, /*estimate_lengths=*/false, part);
    return finish_stats(ctx, std::move(part.weighted_len_num), part.entropy.sum);
}

ExtensionStats extension_stats_parallel(const SourceDistribution& base, unsigned n,
                                        unsigned radix, bool extended,
                                        std::uint64_t cap) {
#ifdef _OPENMP
    auto ctx = make_extension_context(base, n, radix, extended, cap);
    const int threads = pick_threads(ctx.count);
    std::vector<ExtensionPartial> parts(threads);
#pragma omp parallel num_threads(threads)
    {
        const int id = omp_get_thread_num();
        const auto [t0, t1] = chunk_range(ctx.count, threads, id);
        if (t0 < t1) {
            extension_chunk(ctx, t0, t1, /*estimate_lengths=*/true, parts[id]);
        }
    }
    BigInt weighted = 0;
    KahanSum entropy;
    for (auto& part : parts) {
        weighted += part.weighted_len_num;
        entropy.add(part.entropy.sum);
    }
    return finish_stats(ctx, std::move(weighted), entropy.sum);
#else
    return extension_stats_serial(base, n, radix, extended, cap);
#endif
}

ExtensionStats extension_stats(const SourceDistribution& base, unsigned n,
                               unsigned radix, bool extended, std::uint64_t cap,
                               ExecMode mode) {
    std::uint64_t count = 1;
    bool overflow = false;
    for (unsigned k = 0; k < n && !overflow; ++k) {
        if (base.size() != 0 && count > cap / base.size()) overflow = true;
        else count *= base.size();
    }
    const bool go_parallel =
        mode == ExecMode::Parallel ||
        (mode == ExecMode::Auto && parallel_available() && !overflow &&
         count >= kParallelThreshold);
    return go_parallel ? extension_stats_parallel(base, n, radix, extended, cap)
                       : extension_stats_serial(base, n, radix, extended, cap);
}

// --- extension materialization ------------------------------------------------------

namespace {

void fill_extension_chunk(const SourceDistribution& base, unsigned n,
                          std::uint64_t t0, std::uint64_t t1,
                          std::span<std::uint32_t> indices,
                          std::span<Rational> probs) {
    const std::size_t q = base.size();
    std::vector<std::uint32_t> digits(n);
    index_to_digits(t0, q, n, digits.data());
    std::vector<Rational> prefix(n + 1);
    prefix[0] = 1;
    for (unsigned k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * base.prob(digits[k]);

    for (std::uint64_t t = t0; t < t1; ++t) {
        for (unsigned k = 0; k < n; ++k) indices[t * n + k] = digits[k];
        probs[t] = prefix[n];
        if (t + 1 == t1) break;
        for (unsigned k = n; k-- > 0;) {
            if (++digits[k] < q) {
                for (unsigned j = k; j < n; ++j) {
                    prefix[j + 1] = prefix[j] * base.prob(digits[j]);
                }
                break;
            }
            digits[k] = 0;
        }
    }
}

} // namespace

void fill_extension_serial(const SourceDistribution& base, unsigned n,
                           std::span<std::uint32_t> indices,
                           std::span<Rational> probs) {
    fill_extension_chunk(base, n, 0, probs.size(), indices, probs);
}

void fill_extension_parallel(const SourceDistribution& base, unsigned n,
                             std::span<std::uint32_t> indices,
                             std::span<Rational> probs) {
#ifdef _OPENMP
    const auto count = static_cast<std::uint64_t>(probs.size());
    const int threads = pick_threads(count);
#pragma omp parallel num_threads(threads)
    {
        const int id = omp_get_thread_num();
        const auto [t0, t1] = chunk_range(count, threads, id);
        if (t0 < t1) fill_extension_chunk(base, n, t0, t1, indices, probs);
    }
#else
    fill_extension_serial(base, n, indices, probs);
#endif
}

void fill_extension(const SourceDistribution& base, unsigned n,
                    std::span<std::uint32_t> indices, std::span<Rational> probs,
                    ExecMode mode) {
    const bool go_parallel =
        mode == ExecMode::Parallel ||
        (mode == ExecMode::Auto && parallel_available() &&
         probs.size() >= kParallelThreshold);
    if (go_parallel) fill_extension_parallel(base, n, indices, probs);
    else fill_extension_serial(base, n, indices, probs);
}

// --- G_N sequence sum ------------------------------------------------------------

namespace {

struct GnContext {
    std::size_t q = 0;
    unsigned N = 0;
    std::uint64_t count = 0;
    bool markov = false;
    std::vector<double> initial;
    std::vector<double> transition; // row-major q*q
};

GnContext make_gn_context(const SequenceModel& model, unsigned N) {
    GnContext ctx;
    ctx.q = model.alphabet_size();
    ctx.N = N;
    ctx.count = checked_pow_count(ctx.q, N);
    ctx.markov = model.is_markov();
    ctx.initial.resize(ctx.q);
    for (std::size_t i = 0; i < ctx.q; ++i) {
        ctx.initial[i] = to_double(model.initial().prob(i));
    }
    if (ctx.markov) {
        ctx.transition.resize(ctx.q * ctx.q);
        for (std::size_t a = 0; a < ctx.q; ++a) {
            for (std::size_t b = 0; b < ctx.q; ++b) {
                ctx.transition[a * ctx.q + b] = to_double(model.transition(a, b));
            }
        }
    }
    return ctx;
}

void gn_chunk(const GnContext& ctx, std::uint64_t t0, std::uint64_t t1,
              KahanSum& acc) {
    const unsigned N = ctx.N;
    std::vector<std::uint32_t> digits(N);
    index_to_digits(t0, ctx.q, N, digits.data());
    std::vector<double> prefix(N + 1);
    auto rebuild_from = [&](unsigned k) {
        for (unsigned j = k; j < N; ++j) {
            const double step = j == 0 ? ctx.initial[digits[0]]
                                       : (ctx.markov
                                              ? ctx.transition[digits[j - 1] * ctx.q + digits[j]]
                                              : ctx.initial[digits[j]]);
            prefix[j + 1] = prefix[j] * step;
        }
    };
    prefix[0] = 1;
    rebuild_from(0);

    for (std::uint64_t t = t0; t < t1; ++t) {
        const double p = prefix[N];
        if (p > 0) acc.add(p * -std::log2(p));
        if (t + 1 == t1) break;
        for (unsigned k = N; k-- > 0;) {
            if (++digits[k] < ctx.q) {
                rebuild_from(k);
                break;
            }
            digits[k] = 0;
        }
    }
}

} // namespace

double gn_sum_serial(const SequenceModel& model, unsigned N) {
    auto ctx = make_gn_context(model, N);
    KahanSum acc;
    gn_chunk(ctx, 0, ctx.count, acc);
    return std::max(acc.sum, 0.0);
}

double gn_sum_parallel(const SequenceModel& model, unsigned N) {
#ifdef _OPENMP
    auto ctx = make_gn_context(model, N);
    const int threads = pick_threads(ctx.count);
    std::vector<KahanSum> parts(threads);
#pragma omp parallel num_threads(threads)
    {
        const int id = omp_get_thread_num();
        const auto [t0, t1] = chunk_range(ctx.count, threads, id);
        if (t0 < t1) gn_chunk(ctx, t0, t1, parts[id]);
    }
    KahanSum acc;
    for (const auto& part : parts) acc.add(part.sum);
    return std::max(acc.sum, 0.0);
#else
    return gn_sum_serial(model, N);
#endif
}

double gn_sum(const SequenceModel& model, unsigned N, ExecMode mode) {
    std::uint64_t count = 1;
    bool big = false;
    for (unsigned k = 0; k < N; ++k) {
        count *= model.alphabet_size();
        if (count >= kParallelThreshold) {
            big = true;
            break;
        }
    }
    const bool go_parallel = mode == ExecMode::Parallel ||
                             (mode == ExecMode::Auto && parallel_available() && big);
    return go_parallel ? gn_sum_parallel(model, N) : gn_sum_serial(model, N);
}

} // namespace scode::kernels
