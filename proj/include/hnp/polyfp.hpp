#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hnp/arith.hpp"

// Dense polynomials over the prime field F_p, p < 2^63. Coefficients are
// stored constant term first with no trailing zeros; the zero polynomial is
// the empty vector.
namespace hnp::fp {

using Poly = std::vector<std::uint64_t>;

struct Factor {
    Poly poly;  // monic irreducible
    int multiplicity = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

int degree(const Poly& f);
Poly reduce(std::span<const Integer> coeffs, std::uint64_t p);

Poly add(const Poly& f, const Poly& g, std::uint64_t p);
Poly sub(const Poly& f, const Poly& g, std::uint64_t p);
Poly mul(const Poly& f, const Poly& g, std::uint64_t p);
// Returns {quotient, remainder}; g must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, std::uint64_t p);
Poly mod(const Poly& f, const Poly& g, std::uint64_t p);
Poly gcd(Poly f, Poly g, std::uint64_t p);  // monic
Poly monic(const Poly& f, std::uint64_t p);
Poly derivative(const Poly& f, std::uint64_t p);
Poly powmod(const Poly& base, const Integer& e, const Poly& modulus, std::uint64_t p);

// Full factorization into monic irreducibles with multiplicities:
// squarefree, distinct-degree, then randomized equal-degree splitting driven
// by a generator seeded from `seed`. Output sorted by (degree, multiplicity,
// coefficients). f must be nonzero; its leading coefficient is dropped.
std::vector<Factor> factor(const Poly& f, std::uint64_t p, std::uint64_t seed = 0x5eed);

// Distinct-degree split of a squarefree monic f: (product of all irreducible
// factors of degree d, d) for each d that occurs.
std::vector<std::pair<Poly, int>> distinct_degree(Poly f, std::uint64_t p);

// True iff f is irreducible over F_p (degree >= 1).
bool is_irreducible(const Poly& f, std::uint64_t p);

}  // namespace hnp::fp
