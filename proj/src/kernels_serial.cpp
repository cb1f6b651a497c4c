#include <cmath>
#include <numeric>

#include "hnp/kernels.hpp"
#include "hnp/polyfp.hpp"

namespace hnp::kernels {

std::vector<std::uint8_t> level_map(std::span<const std::uint64_t> grid) {
    if (grid.empty()) throw DomainError("empty grid");
    if (grid.size() > 255) throw DomainError("grid too long");
    const std::uint64_t B = grid.back();
    std::vector<std::uint8_t> level(B + 1, 0);
    std::size_t i = 0;
    for (std::uint64_t h = 0; h <= B; ++h) {
        while (grid[i] < h) ++i;
        level[h] = static_cast<std::uint8_t>(i);
    }
    return level;
}

std::vector<std::uint64_t> cumulate(std::span<const std::uint64_t> bins) {
    std::vector<std::uint64_t> out(bins.begin(), bins.end());
    std::partial_sum(out.begin(), out.end(), out.begin());
    return out;
}

std::array<std::int64_t, 6> ShellHit::key() const {
    const std::int64_t h = std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2]), std::abs(n[3]), q});
    return {h, q, n[0], n[1], n[2], n[3]};
}

bool shell_fits_int128(const ShellProblem& P) {
    const long double c = static_cast<long double>(P.cap);
    const long double a = std::fabs(static_cast<long double>(P.a));
    const long double b = std::fabs(static_cast<long double>(P.b));
    const long double A = c * c * (1 + a + b + a * b);
    const long double Bc = 2 * c * c * (1 + b);
    long double maxw = 1, maxu = 1;
    for (const auto& [u, w] : P.targets) {
        maxw = std::max(maxw, static_cast<long double>(w));
        maxu = std::max(maxu, std::fabs(static_cast<long double>(u)));
    }
    const long double N = A * A + a * Bc * Bc;
    const long double q4 = c * c * c * c;
    return N * maxw < std::ldexp(1.0L, 125) && q4 * maxu < std::ldexp(1.0L, 125);
}

namespace detail {

int residue_gcd_unramified(std::span<const Integer> coeffs, std::uint64_t p) {
    const fp::Poly f = fp::reduce(coeffs, p);
    int g = 0;
    for (const auto& block : fp::distinct_degree(f, p)) g = std::gcd(g, block.second);
    return g;
}

bool ideal_norm_ok(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd, std::uint32_t n) {
    bool ok = true;
    spf.for_each_prime_power(n, [&](std::uint32_t p, int e) {
        if (e % residue_gcd[p] != 0) ok = false;
    });
    return ok;
}

__int128 biquad_norm(std::int64_t a, std::int64_t b, const std::array<std::int64_t, 4>& n) {
    using i128 = __int128;
    const i128 x0 = n[0], x1 = n[1], x2 = n[2], x3 = n[3];
    const i128 A = x0 * x0 + a * x1 * x1 - b * x2 * x2 - i128(a) * b * x3 * x3;
    const i128 Bv = 2 * (x0 * x1 - b * x2 * x3);
    return A * A - a * Bv * Bv;
}

bool key_less(const ShellHit& x, const ShellHit& y) { return x.key() < y.key(); }

namespace {

// Exact fourth root of m > 0, or 0 if m is not a fourth power.
std::int64_t exact_root4(__int128 m) {
    const long double approx = std::pow(static_cast<long double>(m), 0.25L);
    const std::int64_t r0 = static_cast<std::int64_t>(std::llround(approx));
    for (std::int64_t r = std::max<std::int64_t>(1, r0 - 2); r <= r0 + 2; ++r) {
        const __int128 r2 = __int128(r) * r;
        if (r2 * r2 == m) return r;
    }
    return 0;
}

std::uint64_t gcd5(const std::array<std::int64_t, 4>& n, std::int64_t q) {
    std::uint64_t g = static_cast<std::uint64_t>(q);
    for (auto x : n) g = std::gcd(g, static_cast<std::uint64_t>(std::abs(x)));
    return g;
}

}  // namespace

std::optional<ShellHit> shell_slice(const ShellProblem& P, std::int64_t s, std::int64_t n0) {
    std::optional<ShellHit> best;
    if (n0 < 0) return best;
    std::array<std::int64_t, 4> n{n0, 0, 0, 0};
    for (n[1] = -s; n[1] <= s; ++n[1]) {
        for (n[2] = -s; n[2] <= s; ++n[2]) {
            const bool on_shell = std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2])}) == s;
            const std::int64_t step = on_shell ? 1 : 2 * s;
            for (n[3] = -s; n[3] <= s; n[3] += step) {
                if (!leading_positive(n)) continue;
                const __int128 N = biquad_norm(P.a, P.b, n);
                if (N == 0) continue;
                for (std::size_t k = 0; k < P.targets.size(); ++k) {
                    const auto [u, w] = P.targets[k];
                    if ((N < 0) != (u < 0)) continue;
                    const __int128 lhs = N * w;
                    if (lhs % u != 0) continue;
                    const std::int64_t q = exact_root4(lhs / u);
                    if (q == 0 || q > P.cap) continue;
                    if (gcd5(n, q) != 1) continue;
                    ShellHit hit{n, q, k};
                    if (!best || key_less(hit, *best)) best = hit;
                }
            }
        }
    }
    return best;
}

}  // namespace detail

namespace serial {

std::vector<std::uint64_t> ideal_norm_bins(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd,
                                           std::span<const std::uint8_t> level, std::size_t levels) {
    std::vector<std::uint64_t> bins(levels, 0);
    const std::uint32_t B = static_cast<std::uint32_t>(level.size() - 1);
    for (std::uint32_t n = 1; n <= B; ++n)
        if (detail::ideal_norm_ok(spf, residue_gcd, n)) ++bins[level[n]];
    return bins;
}

CensusCounts residue_gcd_census(std::span<const Integer> coeffs, const Integer& disc,
                                std::span<const std::uint32_t> primes) {
    CensusCounts c;
    for (std::uint32_t p : primes) {
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        ++c.total;
        if (detail::residue_gcd_unramified(coeffs, p) == 1) ++c.hits;
    }
    return c;
}

std::vector<std::uint64_t> local_pair_bins(const LocalTables& T) {
    std::vector<std::uint64_t> bins(T.levels, 0);
    std::vector<std::uint32_t> goods;
    for (std::uint32_t n = 1; n <= T.bound; ++n)
        if (T.good[n]) goods.push_back(n);
    for (std::uint32_t b : goods) {
        const std::uint32_t sb = T.sig[b];
        for (std::uint32_t a : goods) {
            const std::uint32_t s = T.sig[a] ^ sb;
            const unsigned hits = T.pass[s] + T.pass[s ^ T.sign_bit];
            if (hits == 0) continue;
            if (detail::binary_gcd(a, b) != 1) continue;
            bins[T.level[std::max(a, b)]] += hits;
        }
    }
    return bins;
}

std::vector<std::uint64_t> local_integer_bins(const LocalTables& T) {
    std::vector<std::uint64_t> bins(T.levels, 0);
    for (std::uint32_t n = 1; n <= T.bound; ++n)
        if (T.good[n] && T.pass[T.sig[n]]) ++bins[T.level[n]];
    return bins;
}

std::optional<ShellHit> shell_scan(const ShellProblem& P, std::int64_t s) {
    std::optional<ShellHit> best;
    for (std::int64_t n0 = -s; n0 <= s; ++n0) {
        auto hit = detail::shell_slice(P, s, n0);
        if (hit && (!best || detail::key_less(*hit, *best))) best = hit;
    }
    return best;
}

}  // namespace serial

}  // namespace hnp::kernels
