#include <omp.h>

#include "hnp/kernels.hpp"

namespace hnp::kernels::parallel {

namespace {

int resolve(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

}  // namespace

std::vector<std::uint64_t> ideal_norm_bins(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd,
                                           std::span<const std::uint8_t> level, std::size_t levels,
                                           int workers) {
    std::vector<std::uint64_t> bins(levels, 0);
    std::uint64_t* out = bins.data();
    const std::int64_t B = static_cast<std::int64_t>(level.size()) - 1;
#pragma omp parallel num_threads(resolve(workers))
    {
        std::vector<std::uint64_t> local(levels, 0);
#pragma omp for schedule(static)
        for (std::int64_t n = 1; n <= B; ++n)
            if (detail::ideal_norm_ok(spf, residue_gcd, static_cast<std::uint32_t>(n))) ++local[level[n]];
#pragma omp critical
        for (std::size_t i = 0; i < levels; ++i) out[i] += local[i];
    }
    return bins;
}

CensusCounts residue_gcd_census(std::span<const Integer> coeffs, const Integer& disc,
                                std::span<const std::uint32_t> primes, int workers) {
    std::uint64_t hits = 0, total = 0;
    const std::int64_t count = static_cast<std::int64_t>(primes.size());
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : hits, total) num_threads(resolve(workers))
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint32_t p = primes[static_cast<std::size_t>(i)];
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        ++total;
        if (detail::residue_gcd_unramified(coeffs, p) == 1) ++hits;
    }
    return {hits, total};
}

std::vector<std::uint64_t> local_pair_bins(const LocalTables& T, int workers) {
    std::vector<std::uint32_t> goods;
    for (std::uint32_t n = 1; n <= T.bound; ++n)
        if (T.good[n]) goods.push_back(n);
    const std::size_t levels = T.levels;
    std::vector<std::uint64_t> bins(levels, 0);
    std::uint64_t* out = bins.data();
    const std::int64_t count = static_cast<std::int64_t>(goods.size());
#pragma omp parallel num_threads(resolve(workers))
    {
        std::vector<std::uint64_t> local(levels, 0);
        // Each worker owns whole denominators b.
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t j = 0; j < count; ++j) {
            const std::uint32_t b = goods[static_cast<std::size_t>(j)];
            const std::uint32_t sb = T.sig[b];
            for (std::uint32_t a : goods) {
                const std::uint32_t s = T.sig[a] ^ sb;
                const unsigned hits = T.pass[s] + T.pass[s ^ T.sign_bit];
                if (hits == 0) continue;
                if (detail::binary_gcd(a, b) != 1) continue;
                local[T.level[std::max(a, b)]] += hits;
            }
        }
#pragma omp critical
        for (std::size_t i = 0; i < levels; ++i) out[i] += local[i];
    }
    return bins;
}

std::vector<std::uint64_t> local_integer_bins(const LocalTables& T, int workers) {
    const std::size_t levels = T.levels;
    std::vector<std::uint64_t> bins(levels, 0);
    std::uint64_t* out = bins.data();
    const std::int64_t B = static_cast<std::int64_t>(T.bound);
#pragma omp parallel num_threads(resolve(workers))
    {
        std::vector<std::uint64_t> local(levels, 0);
#pragma omp for schedule(static)
        for (std::int64_t n = 1; n <= B; ++n)
            if (T.good[n] && T.pass[T.sig[n]]) ++local[T.level[n]];
#pragma omp critical
        for (std::size_t i = 0; i < levels; ++i) out[i] += local[i];
    }
    return bins;
}

std::optional<ShellHit> shell_scan(const ShellProblem& P, std::int64_t s, int workers) {
    // Ordered reduction: slices are independent, the minimum key wins.
    std::vector<std::optional<ShellHit>> slices(static_cast<std::size_t>(2 * s + 1));
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve(workers))
    for (std::int64_t n0 = -s; n0 <= s; ++n0) slices[static_cast<std::size_t>(n0 + s)] = detail::shell_slice(P, s, n0);
    std::optional<ShellHit> best;
    for (const auto& hit : slices)
        if (hit && (!best || detail::key_less(*hit, *best))) best = hit;
    return best;
}

}  // namespace hnp::kernels::parallel
