#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hnp/biquad.hpp"
#include "hnp/kernels.hpp"
#include "hnp/numfield.hpp"

namespace hnp {

// Calls fn(t) for every nonzero t = a/b in lowest terms with |a|, b <= B,
// ordered by denominator b, then |a|, then sign (+ before -).
template <class Fn>
void for_each_height(std::uint64_t B, Fn&& fn) {
    for (std::uint64_t b = 1; b <= B; ++b)
        for (std::uint64_t a = 1; a <= B; ++a) {
            if (std::gcd(a, b) != 1) continue;
            const Integer num(static_cast<unsigned long>(a)), den(static_cast<unsigned long>(b));
            fn(Rational(num, den));
            fn(Rational(Integer(-num), den));
        }
}

std::vector<Rational> enumerate_heights(std::uint64_t B);

// 2 * (2 * sum_{b <= B} phi(b) - 1).
std::uint64_t height_count_farey(std::uint64_t B);

enum class GlobMode { HalfRule, TrivialKnot, SearchLowerBound };

const char* to_string(GlobMode mode);

struct CountRow {
    std::uint64_t bound = 0;
    std::uint64_t n_loc = 0;
    std::uint64_t n_glob = 0;
    std::uint64_t n_ce = 0;

    double ratio_ce_loc() const { return n_loc == 0 ? 0.0 : static_cast<double>(n_ce) / static_cast<double>(n_loc); }

    friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct CountSeries {
    std::vector<CountRow> rows;
    GlobMode glob_mode = GlobMode::TrivialKnot;
    std::int64_t cap = 0;          // SearchLowerBound only
    std::uint64_t unknowns = 0;    // SearchLowerBound only, at the top bound
};

struct CountConfig {
    std::uint64_t bound = 1024;
    int levels = 1;
    bool minus_one_generates = false;
    std::int64_t search_cap = 6;
    int workers = 0;
};

// Signature tables for the fast path; exposed for tests and the benchmark.
kernels::LocalTables build_local_tables(const BiquadField& F, std::span<const std::uint64_t> grid);

CountSeries count_series(const BiquadField& F, const CountConfig& config);

// #{1 <= n <= B_i : n an everywhere-local norm} on the doubling grid.
std::vector<GridCount> count_integer_norms_local(const BiquadField& F, std::uint64_t B, int levels = 1,
                                                 int workers = 0);

struct FitResult {
    double c_hat = 0;
    double e_hat = 0;
    double residual = 0;
};

enum class FitTarget { Local, Global };

// Least squares for log(count) = log c + 2 log B - e log log B.
FitResult fit_exponent(std::span<const std::uint64_t> bounds, std::span<const std::uint64_t> counts);
FitResult fit_exponent(const CountSeries& S, FitTarget which);

}  // namespace hnp
