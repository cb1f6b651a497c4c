#include "hnp/certificate.hpp"

#include <algorithm>

#include "hnp/kernels.hpp"

namespace hnp {

namespace {

bool fits_i64(const Integer& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

std::uint64_t shell_size(std::int64_t s) {
    const std::uint64_t outer = static_cast<std::uint64_t>(2 * s + 1), inner = static_cast<std::uint64_t>(2 * s - 1);
    return outer * outer * outer * outer - inner * inner * inner * inner;
}

struct GenericHit {
    std::array<Integer, 4> n;
    Integer q;
    std::size_t target = 0;
};

// Arbitrary-precision fallback used when the 128-bit kernel could overflow.
std::optional<kernels::ShellHit> generic_shell(const BiquadField& F, const std::vector<Rational>& targets,
                                               std::int64_t s, std::int64_t cap) {
    std::optional<kernels::ShellHit> best;
    std::array<std::int64_t, 4> n{};
    for (n[0] = -s; n[0] <= s; ++n[0])
        for (n[1] = -s; n[1] <= s; ++n[1])
            for (n[2] = -s; n[2] <= s; ++n[2]) {
                const bool on_shell = std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2])}) == s;
                const std::int64_t step = on_shell ? 1 : 2 * s;
                for (n[3] = -s; n[3] <= s; n[3] += step) {
                    if (!kernels::detail::leading_positive(n)) continue;
                    const Coords x{Rational(n[0]), Rational(n[1]), Rational(n[2]), Rational(n[3])};
                    const Rational N = norm_form_eval(F, x);
                    if (N == 0) continue;
                    for (std::size_t k = 0; k < targets.size(); ++k) {
                        const Rational ratio = N / targets[k];
                        if (ratio <= 0 || ratio.get_den() != 1) continue;
                        Integer q;
                        if (mpz_root(q.get_mpz_t(), ratio.get_num().get_mpz_t(), 4) == 0) continue;
                        if (q > cap) continue;
                        Integer g = q;
                        for (auto c : n) g = gcd(g, Integer(c));
                        if (g != 1) continue;
                        kernels::ShellHit hit{n, q.get_si(), k};
                        if (!best || kernels::detail::key_less(hit, *best)) best = hit;
                    }
                }
            }
    return best;
}

}  // namespace

ShellSearchResult joint_shell_search(const BiquadField& F, const std::vector<Rational>& targets, std::int64_t cap,
                                     std::int64_t first_shell, std::uint64_t budget, int workers) {
    if (cap < 1) throw DomainError("certificate search cap must be at least 1");
    if (targets.empty()) throw DomainError("no search targets");
    for (const auto& t : targets)
        if (t == 0) throw DomainError("zero is not a norm of a nonzero element");
    kernels::ShellProblem P;
    bool fast = fits_i64(F.a()) && fits_i64(F.b());
    if (fast) {
        P.a = F.a().get_si();
        P.b = F.b().get_si();
        P.cap = cap;
        for (const auto& t : targets) {
            if (!fits_i64(t.get_num()) || !fits_i64(t.get_den())) fast = false;
            else P.targets.emplace_back(t.get_num().get_si(), t.get_den().get_si());
        }
        fast = fast && kernels::shell_fits_int128(P);
    }
    ShellSearchResult out;
    out.shells_scanned = first_shell - 1;
    std::optional<kernels::ShellHit> best;
    for (std::int64_t s = std::max<std::int64_t>(first_shell, 1); s <= cap; ++s) {
        // Once a hit with key h exists, only shells up to h can beat it.
        if (best && s > best->key()[0]) break;
        const std::uint64_t cost = shell_size(s);
        if (!best && budget != 0 && out.evaluations + cost > budget) break;
        auto hit = fast ? kernels::parallel::shell_scan(P, s, workers) : generic_shell(F, targets, s, cap);
        out.evaluations += cost;
        out.shells_scanned = s;
        if (hit && (!best || kernels::detail::key_less(*hit, *best))) best = hit;
    }
    out.exhausted = !best && out.shells_scanned >= cap;
    if (best) {
        const Rational q(best->q);
        NormCertificate cert{{Rational(best->n[0]) / q, Rational(best->n[1]) / q, Rational(best->n[2]) / q,
                              Rational(best->n[3]) / q},
                             targets[best->target]};
        if (!cert.verify(F)) throw InvariantViolation("shell scan returned a wrong certificate");
        out.certificate = std::move(cert);
        out.target = best->target;
    }
    return out;
}

std::optional<NormCertificate> certificate_search(const BiquadField& F, const Rational& t, std::int64_t cap,
                                                  int workers) {
    return joint_shell_search(F, {t}, cap, 1, 0, workers).certificate;
}

}  // namespace hnp
