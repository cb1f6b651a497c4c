#include <doctest.h>

#include <random>

#include "hnp/polyfp.hpp"

using namespace hnp;
using fp::Poly;

namespace {

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
    return r;
}

// Brute-force irreducibility for tiny p and degree: no monic factor of degree <= deg/2.
bool irreducible_bruteforce(const Poly& f, std::uint64_t p) {
    const int n = fp::degree(f);
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) g[i] = c % p, c /= p;
            g[d] = 1;
            if (fp::mod(f, g, p).empty()) return false;
        }
    }
    return n >= 1;
}

}  // namespace

TEST_CASE("basic arithmetic") {
    const std::uint64_t p = 7;
    const Poly f{1, 2, 3}, g{6, 1};
    const auto [q, r] = fp::divmod(fp::mul(f, g, p), g, p);
    CHECK(q == f);
    CHECK(r.empty());
    CHECK(fp::add(f, fp::sub(Poly{}, f, p), p).empty());
    CHECK(fp::derivative(Poly{1, 1, 1, 1}, 3) == Poly{1, 2});
    CHECK(fp::gcd(fp::mul(f, g, p), fp::mul(g, Poly{1, 1}, p), p) == fp::monic(g, p));
    const std::vector<Integer> c{Integer(-1), Integer(0), Integer(15)};
    CHECK(fp::reduce(c, 7) == Poly{6, 0, 1});
}

TEST_CASE("factor reassembles and factors are irreducible") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL, 1000003ULL, 4611686018427387847ULL}) {
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 9);
            Poly f(n + 1);
            for (auto& c : f) c = rng() % p;
            f[n] = 1;
            const auto fs = fp::factor(f, p);
            Poly prod{1};
            int total = 0;
            for (const auto& fac : fs) {
                CHECK(fac.poly.back() == 1);
                CHECK(fp::is_irreducible(fac.poly, p));
                for (int k = 0; k < fac.multiplicity; ++k) prod = fp::mul(prod, fac.poly, p);
                total += fac.multiplicity * fp::degree(fac.poly);
            }
            CHECK(total == n);
            CHECK(prod == f);
        }
    }
}

TEST_CASE("irreducibility against exhaustive search") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
        for (int n = 1; n <= 4; ++n) {
            std::uint64_t total = 1;
            for (int i = 0; i < n; ++i) total *= p;
            for (std::uint64_t code = 0; code < total; ++code) {
                Poly f(n + 1, 0);
                std::uint64_t c = code;
                for (int i = 0; i < n; ++i) f[i] = c % p, c /= p;
                f[n] = 1;
                REQUIRE(fp::is_irreducible(f, p) == irreducible_bruteforce(f, p));
            }
        }
    }
}

TEST_CASE("linear factors match roots") {
    const std::uint64_t p = 31;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Poly f(6);
        for (auto& c : f) c = rng() % p;
        f[5] = 1;
        std::uint64_t roots = 0;
        for (std::uint64_t x = 0; x < p; ++x) roots += eval(f, x, p) == 0;
        std::uint64_t linear = 0;
        for (const auto& fac : fp::factor(f, p))
            if (fp::degree(fac.poly) == 1) ++linear;
        CHECK(linear == roots);
    }
}

TEST_CASE("factor is deterministic for a fixed seed") {
    const Poly f{3, 0, 0, 0, 0, 0, 0, 0, 1};  // x^8 + 3
    const std::uint64_t p = 1000003;
    CHECK(fp::factor(f, p, 42) == fp::factor(f, p, 42));
    CHECK(fp::factor(f, p, 1) == fp::factor(f, p, 2));  // sorted output is seed independent
}
