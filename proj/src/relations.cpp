#include <algorithm>
#include <map>
#include <set>

#include "hnp/certificate.hpp"
#include "hnp/kernels.hpp"

namespace hnp {

namespace {

using Vec = std::vector<std::uint8_t>;  // entries mod 4; row 0 is 2*[sign < 0]

struct Relation {
    std::array<std::int64_t, 4> n;
    Vec exps;
};

// Solves M x = y over Z/4, M given by columns. Unit pivots are eliminated
// first; the rows left over have only even entries and reduce to a system
// over F_2.
std::optional<std::vector<std::uint8_t>> solve_mod4(const std::vector<Vec>& columns, const Vec& y0) {
    const std::size_t rows = y0.size(), cols = columns.size();
    std::vector<Vec> A(rows, Vec(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) A[r][c] = columns[c][r];
    Vec y = y0;
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (;;) {
        std::size_t pr = rows, pc = cols;
        for (std::size_t c = 0; c < cols && pr == rows; ++c) {
            if (col_used[c]) continue;
            for (std::size_t r = 0; r < rows; ++r)
                if (!row_used[r] && (A[r][c] & 1)) {
                    pr = r;
                    pc = c;
                    break;
                }
        }
        if (pr == rows) break;
        const std::uint8_t inv = A[pr][pc];  // 1 and 3 are their own inverses mod 4
        for (auto& v : A[pr]) v = static_cast<std::uint8_t>((v * inv) & 3);
        y[pr] = static_cast<std::uint8_t>((y[pr] * inv) & 3);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || A[r][pc] == 0) continue;
            const unsigned f = A[r][pc];
            for (std::size_t c = 0; c < cols; ++c) A[r][c] = static_cast<std::uint8_t>((A[r][c] + 4 * 4 - f * A[pr][c]) & 3);
            y[r] = static_cast<std::uint8_t>((y[r] + 16 - f * y[pr]) & 3);
        }
        row_used[pr] = true;
        col_used[pc] = true;
        pivots.emplace_back(pr, pc);
    }

    // Remaining rows: (A/2) x = y/2 over F_2 on the free columns.
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!col_used[c]) free_cols.push_back(c);
    std::vector<std::vector<std::uint8_t>> sys;
    std::vector<std::uint8_t> rhs;
    for (std::size_t r = 0; r < rows; ++r) {
        if (row_used[r]) continue;
        if (y[r] & 1) return std::nullopt;
        std::vector<std::uint8_t> eq(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) eq[k] = static_cast<std::uint8_t>(A[r][free_cols[k]] >> 1);
        sys.push_back(std::move(eq));
        rhs.push_back(static_cast<std::uint8_t>(y[r] >> 1));
    }
    std::vector<std::uint8_t> xfree(free_cols.size(), 0);
    {
        std::vector<std::size_t> where(free_cols.size(), SIZE_MAX);
        std::size_t rank = 0;
        for (std::size_t k = 0; k < free_cols.size() && rank < sys.size(); ++k) {
            std::size_t sel = rank;
            while (sel < sys.size() && !sys[sel][k]) ++sel;
            if (sel == sys.size()) continue;
            std::swap(sys[sel], sys[rank]);
            std::swap(rhs[sel], rhs[rank]);
            for (std::size_t r = 0; r < sys.size(); ++r) {
                if (r == rank || !sys[r][k]) continue;
                for (std::size_t j = 0; j < free_cols.size(); ++j) sys[r][j] ^= sys[rank][j];
                rhs[r] ^= rhs[rank];
            }
            where[k] = rank++;
        }
        for (std::size_t r = rank; r < sys.size(); ++r)
            if (rhs[r]) return std::nullopt;
        for (std::size_t k = 0; k < free_cols.size(); ++k)
            if (where[k] != SIZE_MAX) xfree[k] = rhs[where[k]];
    }
    std::vector<std::uint8_t> x(cols, 0);
    for (std::size_t k = 0; k < free_cols.size(); ++k) x[free_cols[k]] = xfree[k];
    for (auto [r, c] : pivots) {
        int v = y[r];
        for (std::size_t k = 0; k < free_cols.size(); ++k) v -= A[r][free_cols[k]] * x[free_cols[k]];
        x[c] = static_cast<std::uint8_t>(((v % 4) + 4) % 4);
    }
    // Check against the original system.
    for (std::size_t r = 0; r < rows; ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc += columns[c][r] * x[c];
        if ((acc & 3) != y0[r]) throw InvariantViolation("mod-4 solver produced a wrong solution");
    }
    return x;
}

Coords power(const BiquadField& F, const Coords& x, int e) {
    Coords out{Rational(1), Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < e; ++i) out = multiply(F, out, x);
    return out;
}

std::optional<Integer> exact_root4(const Integer& n) {
    Integer r;
    if (n < 0 || mpz_root(r.get_mpz_t(), n.get_mpz_t(), 4) == 0) return std::nullopt;
    return r;
}

}  // namespace

std::optional<NormCertificate> relation_search(const BiquadField& F, const Rational& t, const RelationOptions& opt) {
    if (t == 0) throw DomainError("zero is not a norm of a nonzero element");
    if (opt.height < 1) throw DomainError("relation height must be at least 1");

    std::vector<std::uint32_t> base;
    for (std::uint32_t p = 2; p < opt.prime_bound; ++p)
        if (is_prime(static_cast<std::uint64_t>(p))) base.push_back(p);
    std::map<Integer, std::size_t> row_of;
    for (auto p : base) row_of.emplace(Integer(static_cast<unsigned long>(p)), 0);
    const Factorization tf = factorize(t);
    for (const auto& pp : tf.factors) row_of.emplace(pp.prime, 0);
    std::vector<Integer> primes;
    for (auto& [p, idx] : row_of) {
        idx = 1 + primes.size();
        primes.push_back(p);
    }
    const std::size_t rows = 1 + primes.size();

    Vec target(rows, 0);
    target[0] = tf.sign < 0 ? 2 : 0;
    for (const auto& [p, e] : tf.factors) target[row_of[p]] = static_cast<std::uint8_t>(((e % 4) + 4) % 4);

    auto finish = [&](const Coords& xi) -> std::optional<NormCertificate> {
        const Rational ratio = t / norm_form_eval(F, xi);
        const auto rn = exact_root4(Integer(ratio.get_num()));
        const auto rd = exact_root4(Integer(ratio.get_den()));
        if (!rn || !rd) throw InvariantViolation("relation product does not match t up to a fourth power");
        Rational r(*rn, *rd);
        r.canonicalize();
        NormCertificate cert{{xi[0] * r, xi[1] * r, xi[2] * r, xi[3] * r}, t};
        if (!cert.verify(F)) throw InvariantViolation("relation search produced a wrong certificate");
        return cert;
    };

    if (std::all_of(target.begin(), target.end(), [](std::uint8_t v) { return v == 0; }))
        return finish({Rational(1), Rational(0), Rational(0), Rational(0)});

    // Collect smooth relations in shell order; keep one per exponent class.
    std::vector<Relation> rels;
    std::set<Vec> seen;
    const bool small_fields = mpz_fits_slong_p(F.a().get_mpz_t()) && mpz_fits_slong_p(F.b().get_mpz_t()) && [&] {
        kernels::ShellProblem P;
        P.a = F.a().get_si();
        P.b = F.b().get_si();
        P.cap = opt.height;
        P.targets = {{1, 1}};
        return kernels::shell_fits_int128(P);
    }();
    std::vector<std::uint64_t> primes64;
    bool small_primes = true;
    for (const auto& p : primes) {
        if (!p.fits_ulong_p()) small_primes = false;
        else primes64.push_back(p.get_ui());
    }
    const bool small = small_fields && small_primes;
    const std::int64_t a64 = small ? F.a().get_si() : 0, b64 = small ? F.b().get_si() : 0;
    Integer rem;
    for (std::int64_t s = 1; s <= opt.height && rels.size() < opt.max_relations; ++s) {
        std::array<std::int64_t, 4> n{};
        for (n[0] = 0; n[0] <= s; ++n[0])
            for (n[1] = -s; n[1] <= s; ++n[1])
                for (n[2] = -s; n[2] <= s; ++n[2])
                    for (n[3] = -s; n[3] <= s; ++n[3]) {
                        if (std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2]), std::abs(n[3])}) != s) continue;
                        // xi and -xi have the same norm; keep the one whose first nonzero entry is positive.
                        const auto nz = std::find_if(n.begin(), n.end(), [](std::int64_t v) { return v != 0; });
                        if (*nz < 0) continue;
                        Vec v(rows, 0);
                        if (small) {
                            const __int128 N = kernels::detail::biquad_norm(a64, b64, n);
                            if (N == 0) continue;
                            v[0] = N < 0 ? 2 : 0;
                            unsigned __int128 m = static_cast<unsigned __int128>(N < 0 ? -N : N);
                            for (std::size_t k = 0; k < primes64.size() && m != 1; ++k) {
                                const std::uint64_t p = primes64[k];
                                unsigned e = 0;
                                while (m % p == 0) {
                                    m /= p;
                                    ++e;
                                }
                                v[k + 1] = static_cast<std::uint8_t>(e % 4);
                            }
                            if (m != 1) continue;
                        } else {
                            const Coords x{Rational(n[0]), Rational(n[1]), Rational(n[2]), Rational(n[3])};
                            const Rational N = norm_form_eval(F, x);
                            if (N == 0) continue;
                            rem = abs(N.get_num());
                            v[0] = N < 0 ? 2 : 0;
                            for (std::size_t k = 0; k < primes.size() && rem != 1; ++k) {
                                const long e = static_cast<long>(
                                    mpz_remove(rem.get_mpz_t(), rem.get_mpz_t(), primes[k].get_mpz_t()));
                                v[k + 1] = static_cast<std::uint8_t>(e % 4);
                            }
                            if (rem != 1) continue;
                        }
                        if (std::all_of(v.begin(), v.end(), [](std::uint8_t e) { return e == 0; })) continue;
                        if (!seen.insert(v).second) continue;
                        rels.push_back({n, std::move(v)});
                        if (rels.size() >= opt.max_relations) goto collected;
                    }
    }
collected:
    std::vector<Vec> columns;
    columns.reserve(rels.size());
    for (const auto& r : rels) columns.push_back(r.exps);
    const auto sol = solve_mod4(columns, target);
    if (!sol) return std::nullopt;
    Coords xi{Rational(1), Rational(0), Rational(0), Rational(0)};
    for (std::size_t c = 0; c < rels.size(); ++c) {
        if ((*sol)[c] == 0) continue;
        const auto& n = rels[c].n;
        const Coords x{Rational(n[0]), Rational(n[1]), Rational(n[2]), Rational(n[3])};
        xi = multiply(F, xi, power(F, x, (*sol)[c]));
    }
    return finish(xi);
}

}  // namespace hnp
