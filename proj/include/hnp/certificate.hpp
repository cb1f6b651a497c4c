#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hnp/biquad.hpp"

namespace hnp {

struct NormCertificate {
    Coords coords;
    Rational value;  // norm_form_eval(coords)

    // Recomputes the norm exactly.
    bool verify(const BiquadField& F) const { return norm_form_eval(F, coords) == value; }
};

struct ShellSearchResult {
    std::optional<NormCertificate> certificate;
    std::size_t target = 0;            // which target matched
    std::int64_t shells_scanned = 0;   // highest shell completed
    bool exhausted = false;            // all shells up to cap were scanned
    std::uint64_t evaluations = 0;     // norm evaluations spent
};

// Enumerates coords (n0, n1, n2, n3) / q with max(|n_i|, q) <= cap and
// gcd(n, q) = 1 and first nonzero n_i positive, in increasing
// max(|n_i|, q) order with ties broken by (q, n0, n1, n2, n3), and returns the
// first whose norm is t. NotFound is not
// a proof of non-membership.
std::optional<NormCertificate> certificate_search(const BiquadField& F, const Rational& t, std::int64_t cap,
                                                  int workers = 0);

// Same scan for several targets at once; each norm is computed once. Stops at
// the first shell containing a hit, or after `max_shell`, or when the next
// shell would push total evaluations past `budget` (0 = unlimited).
ShellSearchResult joint_shell_search(const BiquadField& F, const std::vector<Rational>& targets, std::int64_t cap,
                                     std::int64_t first_shell = 1, std::uint64_t budget = 0, int workers = 0);

struct RelationOptions {
    std::int64_t height = 12;       // integral elements with max|n_i| <= height
    std::uint32_t prime_bound = 80;  // factor base: primes below this, plus primes of t
    std::size_t max_relations = 4000;
};

// Builds t as a product of small elements whose norms factor over a factor
// base, times a rational scalar. Works in the exponent group modulo fourth
// powers, so it does not depend on the enumeration order of the shell scan.
// NotFound proves nothing.
std::optional<NormCertificate> relation_search(const BiquadField& F, const Rational& t, const RelationOptions& opt);

struct GlobalConfig {
    std::vector<std::int64_t> caps{100, 1000, 10000};
    bool minus_one_generates = false;
    bool witness_for_trivial_knot = false;
    std::uint64_t shell_budget = 1ULL << 28;  // norm evaluations for shell scanning, total
    bool use_relations = true;
    std::vector<RelationOptions> relation_stages{{10, 60, 4000}, {16, 120, 6000}, {24, 250, 8000}};
    int workers = 0;
};

struct GlobalNorm {
    std::optional<NormCertificate> certificate;  // absent only for trivial knot without witness search
    std::string justification;
};

struct GlobalNotNorm {
    std::optional<NormCertificate> partner_certificate;  // certificate for -t (pairing rule)
    std::optional<LocalReport> local_failure;             // set when t is not everywhere local
    std::string justification;
};

struct GlobalUnknown {
    std::int64_t cap = 0;
    std::string justification;
};

using GlobalDecision = std::variant<GlobalNorm, GlobalNotNorm, GlobalUnknown>;

GlobalDecision decide_global(const BiquadField& F, const Rational& t, const GlobalConfig& config);

// Certificate search on t and -t with the shell scan and relation stages of
// `config`; returns which (if either) was found first.
struct PairResolution {
    std::optional<NormCertificate> for_t;
    std::optional<NormCertificate> for_minus_t;
    std::int64_t cap_used = 0;
};

PairResolution resolve_pair(const BiquadField& F, const Rational& t, const GlobalConfig& config, bool pair);

}  // namespace hnp
