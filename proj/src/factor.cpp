#include <algorithm>
#include <map>

#include "hnp/arith.hpp"

namespace hnp {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_u64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr unsigned kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin_mpz(const Integer& n, unsigned a) {
    Integer d = n - 1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Integer x, base = a, nm1 = n - 1;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of odd composite n.
u64 rho_u64(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

Integer rho_mpz(const Integer& n) {
    // Floyd cycle finding with a gcd per step; inputs here are desk-sized.
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, g = 1, diff;
        while (g == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = abs(x - y);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (g != n) return g;
    }
}

void split_into(const Integer& n, std::map<Integer, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d;
    if (n.fits_ulong_p())
        d = static_cast<unsigned long>(rho_u64(n.get_ui()));
    else
        d = rho_mpz(n);
    split_into(d, out);
    split_into(Integer(n / d), out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // First twelve prime bases are deterministic below 3.3e24 > 2^64.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!miller_rabin_u64(n, a)) return false;
    return true;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    for (unsigned p : kWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    static const Integer kDeterministicBound("3317044064679887385961981");
    if (n < kDeterministicBound) {
        for (unsigned a : kWitnesses)
            if (!miller_rabin_mpz(n, a)) return false;
        return true;
    }
    // Beyond the deterministic range GMP runs Baillie-PSW plus extra rounds.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const Integer& n) {
    if (n == 0) throw DomainError("factorize of zero");
    Factorization out;
    out.sign = sgn(n);
    Integer m = abs(n);
    for (std::uint32_t p : trial_primes()) {
        if (m == 1) break;
        if (Integer(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            long e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            out.factors.push_back({Integer(p), e});
        }
    }
    if (m != 1) {
        std::map<Integer, long> rest;
        split_into(m, rest);
        for (auto& [p, e] : rest) out.factors.push_back({p, e});
    }
    return out;
}

Factorization factorize(const Rational& t) {
    if (t == 0) throw DomainError("factorize of zero");
    Factorization num = factorize(Integer(t.get_num()));
    const Factorization den = factorize(Integer(t.get_den()));
    for (const auto& [p, e] : den.factors) num.factors.push_back({p, -e});
    std::sort(num.factors.begin(), num.factors.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
    return num;
}

}  // namespace hnp
