#include <doctest.h>

#include <random>

#include "hnp/arith.hpp"
#include "oracles.hpp"

using namespace hnp;

namespace {

Rational random_rational(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
    long n = 0;
    while (n == 0) n = num(rng);
    return oracle::frac(n, den(rng));
}

}  // namespace

TEST_CASE("factorize fixtures") {
    CHECK(factorize(Rational(1)) == Factorization{1, {}});
    const Factorization f = factorize(Rational(-45, 4));
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == PrimePower{2, -2});
    CHECK(f.factors[1] == PrimePower{3, 2});
    CHECK(f.factors[2] == PrimePower{5, 1});
    CHECK(factorize(Integer(221)).factors == std::vector<PrimePower>{{13, 1}, {17, 1}});
    CHECK_THROWS_AS(factorize(Rational(0)), DomainError);
}

TEST_CASE("factorize large and reassemble") {
    const Integer p1("1000000007"), p2("998244353"), p3("18446744073709551557");
    const Integer n = p1 * p1 * p2 * p3;
    const Factorization f = factorize(n);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == PrimePower{p2, 1});
    CHECK(f.factors[1] == PrimePower{p1, 2});
    CHECK(f.factors[2] == PrimePower{p3, 1});
    CHECK(f.value() == Rational(n));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const Rational t = random_rational(rng, 1000000);
        const Factorization g = factorize(t);
        CHECK(g.value() == t);
        for (std::size_t j = 0; j < g.factors.size(); ++j) {
            CHECK(is_prime(g.factors[j].prime));
            CHECK(g.factors[j].exponent != 0);
            if (j) CHECK(g.factors[j - 1].prime < g.factors[j].prime);
        }
    }
}

TEST_CASE("primality against a sieve") {
    const auto primes = oracle::primes_upto(100000);
    std::vector<bool> is_p(100001, false);
    for (auto p : primes) is_p[p] = true;
    for (std::uint64_t n = 0; n <= 100000; ++n) REQUIRE(is_prime(n) == is_p[n]);
    CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));
    CHECK_FALSE(is_prime(std::uint64_t{3215031751ULL}));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));
    CHECK_FALSE(is_prime(Integer("170141183460469231731687303715884105729")));
}

TEST_CASE("spf table") {
    const SpfTable t10(10);
    CHECK(t10[9] == 3);
    CHECK(t10[10] == 2);
    const SpfTable t2(2);
    CHECK(t2[2] == 2);
    CHECK_THROWS_AS(SpfTable(1), DomainError);
    const SpfTable big(800000);
    CHECK(big.factorize(720720) == factorize(Integer(720720)));
    for (std::uint32_t n = 2; n < 5000; ++n) REQUIRE(big.factorize(n) == factorize(Integer(n)));
    CHECK(big.primes().size() == oracle::primes_upto(800000).size());
}

TEST_CASE("kronecker fixtures and oracle") {
    CHECK(kronecker(Integer(17), Integer(13)) == 1);
    CHECK(kronecker(Integer(13), Integer(17)) == 1);
    CHECK(kronecker(Integer(0), Integer(9)) == 0);
    for (std::int64_t p : oracle::primes_upto(200)) {
        if (p == 2) continue;
        for (std::int64_t a = -300; a <= 300; ++a) {
            REQUIRE(kronecker(a, p) == oracle::legendre(a, p));
            REQUIRE(kronecker(Integer(a), Integer(p)) == kronecker(a, p));
        }
    }
    // (a|2) by a mod 8 and (a|-1) by sign.
    CHECK(kronecker(std::int64_t{1}, 2) == 1);
    CHECK(kronecker(std::int64_t{7}, 2) == 1);
    CHECK(kronecker(std::int64_t{3}, 2) == -1);
    CHECK(kronecker(std::int64_t{5}, 2) == -1);
    CHECK(kronecker(std::int64_t{6}, 2) == 0);
    CHECK(kronecker(std::int64_t{-3}, -1) == -1);
    CHECK(kronecker(std::int64_t{3}, -1) == 1);
    // Agreement of both flavours over a box including composite moduli.
    for (std::int64_t a = -60; a <= 60; ++a)
        for (std::int64_t n = -60; n <= 60; ++n) REQUIRE(kronecker(a, n) == kronecker(Integer(a), Integer(n)));
}

TEST_CASE("is_square_local") {
    CHECK(is_square_local(Rational(17), Place::finite(2)));
    CHECK_FALSE(is_square_local(Rational(13), Place::finite(2)));
    CHECK_FALSE(is_square_local(Rational(-4), Place::infinite()));
    CHECK(is_square_local(Rational(9, 4), Place::finite(3)));
    CHECK(is_square_local(Rational(-7), Place::finite(2)));  // -7 = 1 mod 8
    CHECK_FALSE(is_square_local(Rational(-7, 4), Place::finite(7)));
    CHECK(is_square_local(Rational(2), Place::finite(7)));
    for (std::int64_t p : {3, 5, 7, 11, 13})
        for (std::int64_t u = 1; u < p; ++u)
            CHECK(is_square_local(Rational(u), Place::finite(p)) == oracle::square_mod(u, p));
}

TEST_CASE("hilbert fixtures") {
    CHECK(hilbert(Rational(-1), Rational(-1), Place::infinite()) == -1);
    CHECK(hilbert(Rational(2), Rational(3), Place::finite(2)) == -1);
    CHECK(hilbert(Rational(5), Rational(13), Place::finite(5)) == -1);
    CHECK(hilbert(Rational(-1), Rational(-1), Place::finite(2)) == -1);
    CHECK(hilbert(Rational(2), Rational(5), Place::finite(5)) == -1);
}

TEST_CASE("hilbert agrees with local solubility search") {
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (std::int64_t a = -30; a <= 30; ++a)
            for (std::int64_t b = -30; b <= 30; ++b) {
                if (a == 0 || b == 0) continue;
                if (p == 7 && (std::abs(a) > 12 || std::abs(b) > 12)) continue;
                REQUIRE_MESSAGE(hilbert(Rational(a), Rational(b), Place::finite(p)) ==
                                    oracle::hilbert_bruteforce(a, b, p),
                                "a=" << a << " b=" << b << " p=" << p);
            }
    }
}

TEST_CASE("hilbert product formula on random pairs") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const Rational a = random_rational(rng, 10000), b = random_rational(rng, 10000);
        int prod = 1;
        for (const auto& v : hilbert_support(a, b)) prod *= hilbert(a, b, v);
        REQUIRE(prod == 1);
    }
}

TEST_CASE("hilbert bimultiplicativity, symmetry, squares") {
    std::mt19937_64 rng(2);
    const std::vector<Place> places{Place::infinite(), Place::finite(2), Place::finite(3), Place::finite(5),
                                    Place::finite(7), Place::finite(101)};
    for (int i = 0; i < 3000; ++i) {
        const Rational a = random_rational(rng, 500), a2 = random_rational(rng, 500), b = random_rational(rng, 500);
        const Rational s = random_rational(rng, 300);
        for (const auto& v : places) {
            REQUIRE(hilbert(a * a2, b, v) == hilbert(a, b, v) * hilbert(a2, b, v));
            REQUIRE(hilbert(a, b, v) == hilbert(b, a, v));
            REQUIRE(hilbert(s * s, b, v) == 1);
            if (is_square_local(a, v)) REQUIRE(hilbert(a, b, v) == 1);
        }
    }
}

TEST_CASE("place and rational parsing") {
    CHECK(Place::parse("inf").is_infinite());
    CHECK(Place::parse("13").prime() == 13);
    CHECK(Place::finite(13).to_string() == "13");
    CHECK_THROWS_AS(Place::finite(15), DomainError);
    CHECK_THROWS_AS(Place::parse("x"), DomainError);
    CHECK(parse_rational("-25") == Rational(-25));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-3/9") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("0.5"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("squarefree kernel and valuations") {
    CHECK(squarefree_kernel(Integer(-45)) == -5);
    CHECK(squarefree_kernel(Integer(221 * 4)) == 221);
    CHECK(squarefree_kernel(Integer(1)) == 1);
    Integer n(720);
    CHECK(remove_factor(n, Integer(2)) == 4);
    CHECK(n == 45);
    CHECK(factorize(Rational(-45, 4)).valuation(Integer(2)) == -2);
}
