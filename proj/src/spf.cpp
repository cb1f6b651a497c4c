#include "hnp/arith.hpp"

namespace hnp {

SpfTable::SpfTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 2) throw DomainError("SPF table limit must be at least 2");
    spf_.assign(std::size_t(limit) + 1, 0);
    // Linear sieve: each composite is written exactly once by its least prime.
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            const std::uint64_t ip = std::uint64_t(i) * p;
            if (p > spf_[i] || ip > limit) break;
            spf_[ip] = p;
        }
    }
}

Factorization SpfTable::factorize(std::uint32_t n) const {
    if (n == 0) throw DomainError("factorize of zero");
    if (n > limit_) throw DomainError("value exceeds SPF table limit");
    Factorization out;
    for_each_prime_power(n, [&](std::uint32_t p, int e) {
        out.factors.push_back({Integer(static_cast<unsigned long>(p)), e});
    });
    return out;
}

}  // namespace hnp
