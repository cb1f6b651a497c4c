#include <cmath>

#include "hnp/count.hpp"

namespace hnp {

FitResult fit_exponent(std::span<const std::uint64_t> bounds, std::span<const std::uint64_t> counts) {
    if (bounds.size() != counts.size()) throw DomainError("bounds and counts differ in length");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (bounds[i] < 32) continue;
        if (counts[i] == 0) throw DomainError("zero count in the fitting range");
        const double lb = std::log(static_cast<double>(bounds[i]));
        xs.push_back(std::log(lb));
        ys.push_back(std::log(static_cast<double>(counts[i])) - 2.0 * lb);
    }
    if (xs.size() < 4) throw DomainError("need at least 4 grid points with B >= 32");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0) throw DomainError("degenerate grid");
    const double slope = sxy / sxx, intercept = my - slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        rss += r * r;
    }
    return {std::exp(intercept), -slope, std::sqrt(rss / n)};
}

FitResult fit_exponent(const CountSeries& S, FitTarget which) {
    std::vector<std::uint64_t> bounds, counts;
    for (const auto& row : S.rows) {
        bounds.push_back(row.bound);
        counts.push_back(which == FitTarget::Local ? row.n_loc : row.n_glob);
    }
    return fit_exponent(bounds, counts);
}

}  // namespace hnp
