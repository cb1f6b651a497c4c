#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference and an OpenMP version that must return bit-identical results
// for any worker count. Library entry points call the parallel versions;
// tests and the benchmark compare the two.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hnp/arith.hpp"

namespace hnp::kernels {

// For each height h in [0, B]: the smallest grid index i with grid[i] >= h.
std::vector<std::uint8_t> level_map(std::span<const std::uint64_t> grid);

// Turns per-level bins into cumulative counts along the grid.
std::vector<std::uint64_t> cumulate(std::span<const std::uint64_t> bins);

// Residue-degree gcd census over a list of unramified primes.
struct CensusCounts {
    std::uint64_t hits = 0;   // primes with residue-degree gcd 1
    std::uint64_t total = 0;  // primes examined (p not dividing disc)
};

// Fixed-place square-class signature tables for a biquadratic field.
// sig[n] packs the square class of n at 2 and at each odd prime dividing ab;
// pass[s] says whether a rational with signature s is a local norm at all of
// those places and at infinity (bit sign_bit carries the sign).
struct LocalTables {
    std::uint64_t bound = 0;
    std::vector<std::uint8_t> good;  // unramified inert-type primes to even order
    std::vector<std::uint32_t> sig;
    std::vector<std::uint8_t> pass;
    std::uint32_t sign_bit = 0;
    std::vector<std::uint8_t> level;  // from level_map
    std::size_t levels = 0;
};

// One candidate of the certificate shell scan: coords n / q with key
// (max(|n_i|, q), q, n0, n1, n2, n3) ordered lexicographically. Only n whose
// first nonzero entry is positive are scanned, since -xi has the norm of xi.
struct ShellHit {
    std::array<std::int64_t, 4> n{};
    std::int64_t q = 0;
    std::size_t target = 0;  // index into the target list

    std::array<std::int64_t, 6> key() const;
};

struct ShellProblem {
    std::int64_t a = 0, b = 0;
    // Targets u/w in lowest terms, w > 0.
    std::vector<std::pair<std::int64_t, std::int64_t>> targets;
    std::int64_t cap = 0;
};

namespace serial {

std::vector<std::uint64_t> ideal_norm_bins(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd,
                                           std::span<const std::uint8_t> level, std::size_t levels);

CensusCounts residue_gcd_census(std::span<const Integer> coeffs, const Integer& disc,
                                std::span<const std::uint32_t> primes);

// Counts t = +-a/b, gcd(a,b) = 1, a,b <= bound, that pass the local test.
std::vector<std::uint64_t> local_pair_bins(const LocalTables& T);

// Counts positive integers n <= bound passing the local test.
std::vector<std::uint64_t> local_integer_bins(const LocalTables& T);

// Scans shell s (all integral n with max|n_i| = s) for N(n) = target * q^4,
// 1 <= q <= cap, gcd(n, q) = 1, and returns the least hit by key. Requires
// the norm to fit in 128 bits (see shell_fits_int128).
std::optional<ShellHit> shell_scan(const ShellProblem& P, std::int64_t s);

}  // namespace serial

namespace parallel {

std::vector<std::uint64_t> ideal_norm_bins(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd,
                                           std::span<const std::uint8_t> level, std::size_t levels,
                                           int workers = 0);

CensusCounts residue_gcd_census(std::span<const Integer> coeffs, const Integer& disc,
                                std::span<const std::uint32_t> primes, int workers = 0);

std::vector<std::uint64_t> local_pair_bins(const LocalTables& T, int workers = 0);

std::vector<std::uint64_t> local_integer_bins(const LocalTables& T, int workers = 0);

std::optional<ShellHit> shell_scan(const ShellProblem& P, std::int64_t s, int workers = 0);

}  // namespace parallel

// Whether every norm and cross product in a scan up to `cap` fits in __int128.
bool shell_fits_int128(const ShellProblem& P);

// Shared per-element helpers, used by both kernel flavours.
namespace detail {

inline std::uint32_t binary_gcd(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = __builtin_ctz(a | b);
    a >>= __builtin_ctz(a);
    do {
        b >>= __builtin_ctz(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

int residue_gcd_unramified(std::span<const Integer> coeffs, std::uint64_t p);

bool ideal_norm_ok(const SpfTable& spf, std::span<const std::uint8_t> residue_gcd, std::uint32_t n);

__int128 biquad_norm(std::int64_t a, std::int64_t b, const std::array<std::int64_t, 4>& n);

// Best hit in shell s restricted to first coordinate n0.
std::optional<ShellHit> shell_slice(const ShellProblem& P, std::int64_t s, std::int64_t n0);

bool key_less(const ShellHit& x, const ShellHit& y);

inline bool leading_positive(const std::array<std::int64_t, 4>& n) {
    for (auto c : n)
        if (c != 0) return c > 0;
    return false;
}

}  // namespace detail

}  // namespace hnp::kernels
