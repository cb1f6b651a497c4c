#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hnp/errors.hpp"

namespace hnp {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    Integer prime;
    long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// sign * prod p^e, primes strictly increasing, exponents nonzero. Negative
// exponents come from the denominator of a rational.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Rational value() const;
    long valuation(const Integer& p) const;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

bool is_prime(std::uint64_t n);
bool is_prime(const Integer& n);

Factorization factorize(const Integer& n);
Factorization factorize(const Rational& t);

// Signed squarefree kernel: n = kernel * m^2 with kernel squarefree.
Integer squarefree_kernel(const Integer& n);

// Exact p-adic valuation; strips p out of n in place and returns the count.
long remove_factor(Integer& n, const Integer& p);

// Smallest-prime-factor table for 2 <= n <= limit. Read-only after
// construction, so concurrent readers are fine.
class SpfTable {
public:
    explicit SpfTable(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }
    std::uint32_t operator[](std::uint32_t n) const { return spf_[n]; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    Factorization factorize(std::uint32_t n) const;

    // Calls fn(p, e) for each prime power exactly dividing n, p increasing.
    template <class Fn>
    void for_each_prime_power(std::uint32_t n, Fn&& fn) const {
        while (n > 1) {
            const std::uint32_t p = spf_[n];
            int e = 0;
            do {
                n /= p;
                ++e;
            } while (n % p == 0);
            fn(p, e);
        }
    }

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

class Place {
public:
    static Place infinite() { return Place{}; }
    static Place finite(const Integer& p);
    static Place finite(std::uint64_t p) { return finite(Integer(static_cast<unsigned long>(p))); }

    bool is_infinite() const noexcept { return !prime_.has_value(); }
    const Integer& prime() const;

    // "inf" or the decimal prime.
    std::string to_string() const;
    static Place parse(const std::string& s);

    friend bool operator==(const Place& x, const Place& y) { return x.prime_ == y.prime_; }

private:
    Place() = default;
    std::optional<Integer> prime_;
};

// Kronecker symbol (a|n) with (a|2) by a mod 8 and (a|-1) = -1 iff a < 0.
int kronecker(const Integer& a, const Integer& n);
int kronecker(std::int64_t a, std::int64_t n);

bool is_square_local(const Rational& d, const Place& v);

// Local Hilbert symbol (a,b)_v in {+1,-1}.
int hilbert(const Rational& a, const Rational& b, const Place& v);

// Places where (a,b)_v can be -1: infinity, 2 and primes dividing num/den.
std::vector<Place> hilbert_support(const Rational& a, const Rational& b);

// Parses "a/b" or an integer, exactly. Throws DomainError on bad syntax.
Rational parse_rational(const std::string& s);

}  // namespace hnp
