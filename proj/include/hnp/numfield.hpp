#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hnp/arith.hpp"

namespace hnp {

// (ramification index e, residue degree f) of one prime above p.
using RamificationPair = std::pair<int, int>;

struct SplittingData {
    Integer prime;
    std::vector<RamificationPair> pairs;  // sorted
    bool reliable = false;

    int residue_gcd() const;
    bool unramified() const;
    int total_degree() const;  // sum of e*f

    friend bool operator==(const SplittingData&, const SplittingData&) = default;
};

// Per-prime replacement splitting data. Text format, one prime per line:
//   p e1 f1 e2 f2 ...
// Blank lines and anything after '#' are ignored.
using SplittingOverride = std::map<Integer, std::vector<RamificationPair>>;

SplittingOverride parse_splitting_override(std::istream& in);
std::string format_splitting_override(const SplittingOverride& table);

// K = Q[x]/(f) for a monic irreducible integer polynomial f.
class NumberField {
public:
    // Coefficients constant term first. Throws DomainError unless f is monic,
    // of degree >= 2 and certified irreducible.
    explicit NumberField(std::vector<Integer> coeffs, SplittingOverride overrides = {});

    static NumberField from_string(const std::string& csv);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
    const Integer& discriminant() const noexcept { return disc_; }
    const SplittingOverride& overrides() const noexcept { return overrides_; }

    // Replaces the override table; entries are validated against the degree.
    NumberField with_overrides(SplittingOverride overrides) const;

    std::string to_string() const;

private:
    std::vector<Integer> coeffs_;
    Integer disc_;
    SplittingOverride overrides_;
};

// Discriminant of a monic integer polynomial via the Sylvester resultant.
Integer poly_discriminant(const std::vector<Integer>& coeffs);

// Splitting of p in K by Dedekind's theorem on the reduction of f mod p.
// Overrides take precedence. Quadratic fields are handled exactly through the
// fundamental discriminant.
SplittingData splitting_data(const NumberField& K, const Integer& p);

// Membership in the group of ideal norms: t > 0 and for each p the gcd of the
// residue degrees above p divides ord_p(t).
bool is_ideal_norm(const NumberField& K, const Rational& t);

// Membership of an unramified prime in the set of primes with residue-degree gcd 1.
bool in_P_K(const NumberField& K, const Integer& p);

struct DensityEstimate {
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    Rational estimate;

    double value() const { return estimate.get_d(); }
};

// Proportion of primes p <= X with p not dividing disc(f) and residue-degree
// gcd 1. workers <= 0 uses the OpenMP default.
DensityEstimate delta_K_estimate(const NumberField& K, std::uint64_t X, int workers = 0);

struct GridCount {
    std::uint64_t bound = 0;
    std::uint64_t count = 0;

    friend bool operator==(const GridCount&, const GridCount&) = default;
};

// Doubling grid B >> (levels-1), ..., B >> 1, B (ascending, positive entries only).
std::vector<std::uint64_t> doubling_grid(std::uint64_t B, int levels);

// #{n <= B_i : n an ideal norm} on the doubling grid.
std::vector<GridCount> count_ideal_norms(const NumberField& K, std::uint64_t B, int levels = 1,
                                         int workers = 0);

}  // namespace hnp
