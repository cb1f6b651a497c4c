#include "hnp/count.hpp"

#include <algorithm>
#include <unordered_set>

namespace hnp {

namespace {

constexpr std::uint64_t kMaxBound = 1ULL << 31;

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& x) const noexcept {
        return std::hash<std::int64_t>()(x.first * 0x9e3779b97f4a7c15LL ^ x.second);
    }
};

std::int64_t smallest_nonresidue(std::int64_t p) {
    for (std::int64_t u = 2;; ++u)
        if (kronecker(u, p) == -1) return u;
}

std::vector<std::uint64_t> rows_from(std::span<const std::uint64_t> bins) { return kernels::cumulate(bins); }

// Global norms N(n)/q^4 with max(|n_i|, q) <= cap and height <= B.
std::vector<std::uint64_t> searched_global_bins(const BiquadField& F, std::int64_t cap, std::uint64_t B,
                                                const kernels::LocalTables& T) {
    kernels::ShellProblem P;
    if (!mpz_fits_slong_p(F.a().get_mpz_t()) || !mpz_fits_slong_p(F.b().get_mpz_t()))
        throw ConfigError("field generators too large for the norm search");
    P.a = F.a().get_si();
    P.b = F.b().get_si();
    P.cap = cap;
    P.targets = {{1, 1}};
    if (cap < 1 || cap > 40 || !kernels::shell_fits_int128(P)) throw ConfigError("search cap out of range (1..40)");
    std::unordered_set<std::pair<std::int64_t, std::int64_t>, PairHash> found;
    std::array<std::int64_t, 4> n{};
    for (n[0] = -cap; n[0] <= cap; ++n[0])
        for (n[1] = -cap; n[1] <= cap; ++n[1])
            for (n[2] = -cap; n[2] <= cap; ++n[2])
                for (n[3] = -cap; n[3] <= cap; ++n[3]) {
                    const __int128 N = kernels::detail::biquad_norm(P.a, P.b, n);
                    if (N == 0) continue;
                    const unsigned __int128 absN = static_cast<unsigned __int128>(N < 0 ? -N : N);
                    for (std::int64_t q = 1; q <= cap; ++q) {
                        const unsigned __int128 q4 = static_cast<unsigned __int128>(q) * q * q * q;
                        unsigned __int128 x = absN, y = q4;
                        while (y) {
                            const unsigned __int128 r = x % y;
                            x = y;
                            y = r;
                        }
                        const unsigned __int128 num = absN / x, den = q4 / x;
                        if (num > B || den > B) continue;
                        const std::int64_t s = N < 0 ? -1 : 1;
                        found.emplace(s * static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
                    }
                }
    std::vector<std::uint64_t> bins(T.levels, 0);
    for (const auto& [u, w] : found) {
        const std::uint64_t h = std::max<std::uint64_t>(static_cast<std::uint64_t>(u < 0 ? -u : u), static_cast<std::uint64_t>(w));
        ++bins[T.level[h]];
    }
    return bins;
}

}  // namespace

std::vector<Rational> enumerate_heights(std::uint64_t B) {
    if (B < 1) throw DomainError("height bound must be at least 1");
    std::vector<Rational> out;
    for_each_height(B, [&](const Rational& t) { out.push_back(t); });
    return out;
}

std::uint64_t height_count_farey(std::uint64_t B) {
    if (B < 1) throw DomainError("height bound must be at least 1");
    std::vector<std::uint64_t> phi(B + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (std::uint64_t i = 2; i <= B; ++i)
        if (phi[i] == i)
            for (std::uint64_t j = i; j <= B; j += i) phi[j] -= phi[j] / i;
    std::uint64_t sum = 0;
    for (std::uint64_t b = 1; b <= B; ++b) sum += phi[b];
    return 2 * (2 * sum - 1);
}

const char* to_string(GlobMode mode) {
    switch (mode) {
        case GlobMode::HalfRule: return "half_rule";
        case GlobMode::TrivialKnot: return "trivial_knot";
        case GlobMode::SearchLowerBound: return "search_lower_bound";
    }
    return "?";
}

kernels::LocalTables build_local_tables(const BiquadField& F, std::span<const std::uint64_t> grid) {
    const std::uint64_t B = grid.back();
    if (B > kMaxBound) throw DomainError("bound exceeds the SPF table budget");
    if (!mpz_fits_slong_p(F.a().get_mpz_t()) || !mpz_fits_slong_p(F.b().get_mpz_t()))
        throw DomainError("field generators too large for the counting harness");
    const std::int64_t a = F.a().get_si(), b = F.b().get_si();

    std::vector<std::int64_t> odd_fixed;
    for (const auto& p : F.ramified_support())
        if (p != 2) odd_fixed.push_back(p.get_si());
    if (odd_fixed.size() > 9) throw DomainError("too many ramified primes for the signature table");
    // Bits: [ord_2 parity, eps, omega] + per odd p [ord_p parity, nonresidue] + sign.
    const unsigned bits = 3 + 2 * static_cast<unsigned>(odd_fixed.size()) + 1;

    kernels::LocalTables T;
    T.bound = B;
    T.levels = grid.size();
    T.level = kernels::level_map(grid);
    T.sign_bit = 1U << (bits - 1);
    T.good.assign(B + 1, 1);
    T.sig.assign(B + 1, 0);
    T.good[0] = 0;

    // Local verdicts per square class at each fixed place.
    std::vector<Rational> rep2(8);
    for (unsigned c = 0; c < 8; ++c) {
        static constexpr int unit[4] = {1, 7, 5, 3};  // index = eps + 2*omega
        rep2[c] = Rational((c & 1) ? 2 : 1) * unit[(c >> 1) & 3];
    }
    // pass_*[sign][class]: the sign flips the class at every finite place too.
    std::array<std::array<std::uint8_t, 8>, 2> pass2{};
    std::vector<std::array<std::array<std::uint8_t, 4>, 2>> pass_odd(odd_fixed.size());
    std::array<std::uint8_t, 2> pass_inf{};
    for (int neg = 0; neg < 2; ++neg) {
        const int sign = neg ? -1 : 1;
        for (unsigned c = 0; c < 8; ++c) pass2[neg][c] = is_local_norm(F, sign * rep2[c], Place::finite(2));
        for (std::size_t j = 0; j < odd_fixed.size(); ++j) {
            const std::int64_t p = odd_fixed[j], u = smallest_nonresidue(p);
            for (unsigned c = 0; c < 4; ++c) {
                const Rational rep = Rational(sign * ((c & 1) ? p : 1)) * ((c & 2) ? u : 1);
                pass_odd[j][neg][c] = is_local_norm(F, rep, Place::finite(static_cast<std::uint64_t>(p)));
            }
        }
        pass_inf[neg] = is_local_norm(F, Rational(sign), Place::infinite());
    }
    T.pass.assign(std::size_t(1) << bits, 0);
    for (std::uint32_t s = 0; s < T.pass.size(); ++s) {
        const int neg = (s & T.sign_bit) ? 1 : 0;
        bool ok = pass_inf[neg] && pass2[neg][s & 7];
        for (std::size_t j = 0; j < odd_fixed.size() && ok; ++j) ok = pass_odd[j][neg][(s >> (3 + 2 * j)) & 3];
        T.pass[s] = ok;
    }

    if (B < 2) return T;
    const SpfTable spf(static_cast<std::uint32_t>(B));
    // Unramified primes of quadratic type must divide to even order.
    std::vector<std::uint8_t> inert_type(B + 1, 0);
    for (std::uint32_t p : spf.primes()) {
        if (p == 2 || std::find(odd_fixed.begin(), odd_fixed.end(), p) != odd_fixed.end()) continue;
        inert_type[p] = !(kronecker(a, p) == 1 && kronecker(b, p) == 1);
    }
    for (std::uint32_t n = 2; n <= B; ++n) {
        std::uint32_t sig = 0;
        bool good = true;
        spf.for_each_prime_power(n, [&](std::uint32_t p, int e) {
            if (p == 2) {
                sig |= static_cast<std::uint32_t>(e & 1);
                return;
            }
            const auto it = std::find(odd_fixed.begin(), odd_fixed.end(), p);
            if (it != odd_fixed.end()) {
                sig |= static_cast<std::uint32_t>(e & 1) << (3 + 2 * (it - odd_fixed.begin()));
                return;
            }
            if (inert_type[p] && (e & 1)) good = false;
        });
        const std::uint32_t u8 = (n >> __builtin_ctz(n)) & 7;
        sig |= (u8 % 4 == 3 ? 1U : 0U) << 1;
        sig |= ((u8 == 3 || u8 == 5) ? 1U : 0U) << 2;
        // Residue bits at the odd fixed primes for the p-free part of n.
        for (std::size_t j = 0; j < odd_fixed.size(); ++j) {
            const std::int64_t p = odd_fixed[j];
            std::uint64_t m = n;
            while (m % static_cast<std::uint64_t>(p) == 0) m /= static_cast<std::uint64_t>(p);
            if (kronecker(static_cast<std::int64_t>(m % static_cast<std::uint64_t>(p)), p) == -1)
                sig |= 1U << (4 + 2 * j);
        }
        T.sig[n] = sig;
        T.good[n] = good;
    }
    return T;
}

CountSeries count_series(const BiquadField& F, const CountConfig& config) {
    const auto grid = doubling_grid(config.bound, config.levels);
    const auto T = build_local_tables(F, grid);
    const auto loc = rows_from(kernels::parallel::local_pair_bins(T, config.workers));

    CountSeries S;
    std::vector<std::uint64_t> glob;
    const KnotOrder knot = knot_order(F);
    if (knot.g == 1) {
        S.glob_mode = GlobMode::TrivialKnot;
        glob = loc;
    } else if (config.minus_one_generates) {
        if (!is_everywhere_local_norm(F, Rational(-1)).everywhere_local)
            throw ConfigError("half rule requested but -1 is not an everywhere-local norm");
        S.glob_mode = GlobMode::HalfRule;
        for (auto n : loc) {
            if (n % 2 != 0) throw InvariantViolation("odd local count under the half rule");
            glob.push_back(n / 2);
        }
    } else {
        S.glob_mode = GlobMode::SearchLowerBound;
        S.cap = config.search_cap;
        glob = rows_from(searched_global_bins(F, config.search_cap, config.bound, T));
        S.unknowns = loc.back() - glob.back();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (glob[i] > loc[i]) throw InvariantViolation("more global norms than local norms");
        S.rows.push_back({grid[i], loc[i], glob[i], loc[i] - glob[i]});
    }
    return S;
}

std::vector<GridCount> count_integer_norms_local(const BiquadField& F, std::uint64_t B, int levels, int workers) {
    const auto grid = doubling_grid(B, levels);
    const auto T = build_local_tables(F, grid);
    const auto cum = rows_from(kernels::parallel::local_integer_bins(T, workers));
    std::vector<GridCount> out;
    for (std::size_t i = 0; i < grid.size(); ++i) out.push_back({grid[i], cum[i]});
    // n = 1 is always a norm; local_integer_bins covers it through sig[1] = 0.
    return out;
}

}  // namespace hnp
