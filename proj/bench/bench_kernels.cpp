// Serial reference vs OpenMP kernels. Prints one line per kernel with both
// timings and whether the results agree.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "hnp/count.hpp"
#include "hnp/kernels.hpp"

using namespace hnp;

namespace {

template <class Fn>
double seconds(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(const char* name, double serial, double parallel, bool same) {
    std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t B = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : (1u << 14);
    const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
    std::printf("B = %llu, workers = %d\n", static_cast<unsigned long long>(B), workers);

    const BiquadField F(13, 17);
    const auto grid = doubling_grid(B, 5);
    const auto T = build_local_tables(F, grid);

    std::vector<std::uint64_t> s, p;
    double ts = seconds([&] { s = kernels::serial::local_pair_bins(T); });
    double tp = seconds([&] { p = kernels::parallel::local_pair_bins(T, workers); });
    line("local_pair_bins", ts, tp, s == p);

    ts = seconds([&] { s = kernels::serial::local_integer_bins(T); });
    tp = seconds([&] { p = kernels::parallel::local_integer_bins(T, workers); });
    line("local_integer_bins", ts, tp, s == p);

    const NumberField K = F.number_field();
    const SpfTable spf(static_cast<std::uint32_t>(std::max<std::uint64_t>(B * 16, 100)));
    kernels::CensusCounts cs, cp;
    ts = seconds([&] { cs = kernels::serial::residue_gcd_census(K.coefficients(), K.discriminant(), spf.primes()); });
    tp = seconds([&] {
        cp = kernels::parallel::residue_gcd_census(K.coefficients(), K.discriminant(), spf.primes(), workers);
    });
    line("residue_gcd_census", ts, tp, cs.hits == cp.hits && cs.total == cp.total);

    // -1 is not a global norm here, so every shell up to 12 is scanned in full.
    kernels::ShellProblem P{13, 17, {{-1, 1}}, 12};
    std::optional<kernels::ShellHit> hs, hp;
    ts = seconds([&] {
        for (std::int64_t sh = 1; sh <= 12 && !hs; ++sh) hs = kernels::serial::shell_scan(P, sh);
    });
    tp = seconds([&] {
        for (std::int64_t sh = 1; sh <= 12 && !hp; ++sh) hp = kernels::parallel::shell_scan(P, sh, workers);
    });
    line("shell_scan", ts, tp, hs.has_value() == hp.has_value() && (!hs || hs->key() == hp->key()));
    return 0;
}
