#include "hnp/polyfp.hpp"

#include <algorithm>
#include <random>

namespace hnp::fp {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }
u64 addm(u64 a, u64 b, u64 p) {
    const u64 s = a + b;
    return (s >= p || s < a) ? s - p : s;
}
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 powm(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, b, p);
        b = mulm(b, b, p);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

const Poly kOne{1};
const Poly kX{0, 1};

std::vector<Factor> squarefree(const Poly& f, u64 p);

Poly pth_root(const Poly& f, u64 p) {
    Poly out;
    for (std::size_t i = 0; i < f.size(); i += p) out.push_back(f[i]);
    trim(out);
    return out;
}

}  // namespace

std::vector<std::pair<Poly, int>> distinct_degree(Poly f, std::uint64_t p) {
    std::vector<std::pair<Poly, int>> out;
    Poly h = kX;
    const Integer pe = static_cast<unsigned long>(p);
    for (int i = 1; 2 * i <= degree(f); ++i) {
        h = powmod(h, pe, f, p);
        Poly g = gcd(sub(h, kX, p), f, p);
        if (degree(g) > 0) {
            out.emplace_back(g, i);
            f = divmod(f, g, p).first;
            h = mod(h, f, p);
        }
    }
    if (degree(f) > 0) out.emplace_back(f, degree(f));
    return out;
}

namespace {

void equal_degree(const Poly& f, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = degree(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    Integer half;
    if (p != 2) {
        Integer q;
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
        half = (q - 1) / 2;
    }
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    for (;;) {
        Poly a(static_cast<std::size_t>(n));
        for (auto& c : a) c = coeff(rng);
        trim(a);
        if (degree(a) < 1) continue;
        Poly b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)) hits F_2 on every factor.
            Poly term = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                term = mod(mul(term, term, p), f, p);
                b = add(b, term, p);
            }
        } else {
            b = sub(powmod(a, half, f, p), kOne, p);
        }
        Poly g = gcd(b, f, p);
        const int dg = degree(g);
        if (dg > 0 && dg < n) {
            equal_degree(g, d, p, rng, out);
            equal_degree(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

std::vector<Factor> squarefree(const Poly& f, u64 p) {
    std::vector<Factor> out;
    Poly c = gcd(f, derivative(f, p), p);
    Poly w = divmod(f, c, p).first;
    int i = 1;
    while (degree(w) > 0) {
        Poly y = gcd(w, c, p);
        Poly fac = divmod(w, y, p).first;
        if (degree(fac) > 0) out.push_back({fac, i});
        w = y;
        c = divmod(c, y, p).first;
        ++i;
    }
    if (degree(c) > 0) {
        for (auto& [g, j] : squarefree(pth_root(c, p), p))
            out.push_back({g, static_cast<int>(j * static_cast<long long>(p))});
    }
    return out;
}

}  // namespace

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly reduce(std::span<const Integer> coeffs, std::uint64_t p) {
    Poly out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        out.push_back(r.get_ui());
    }
    trim(out);
    return out;
}

Poly add(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly out(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = addm(out[i], g[i], p);
    trim(out);
    return out;
}

Poly sub(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly out(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = subm(out[i], g[i], p);
    trim(out);
    return out;
}

Poly mul(const Poly& f, const Poly& g, std::uint64_t p) {
    if (f.empty() || g.empty()) return {};
    Poly out(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = addm(out[i + j], mulm(f[i], g[j], p), p);
    }
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, std::uint64_t p) {
    if (g.empty()) throw DomainError("polynomial division by zero");
    Poly r = f;
    const int dg = degree(g);
    if (degree(r) < dg) return {{}, r};
    Poly q(static_cast<std::size_t>(degree(r) - dg + 1), 0);
    const u64 inv = invm(g.back(), p);
    for (int i = degree(r); i >= dg; --i) {
        const u64 c = mulm(r[static_cast<std::size_t>(i)], inv, p);
        q[static_cast<std::size_t>(i - dg)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - dg + j)];
            slot = subm(slot, mulm(c, g[static_cast<std::size_t>(j)], p), p);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly mod(const Poly& f, const Poly& g, std::uint64_t p) { return divmod(f, g, p).second; }

Poly monic(const Poly& f, std::uint64_t p) {
    if (f.empty()) return f;
    const u64 inv = invm(f.back(), p);
    Poly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = mulm(f[i], inv, p);
    return out;
}

Poly gcd(Poly f, Poly g, std::uint64_t p) {
    while (!g.empty()) {
        Poly r = mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f, p);
}

Poly derivative(const Poly& f, std::uint64_t p) {
    Poly out;
    for (std::size_t i = 1; i < f.size(); ++i) out.push_back(mulm(f[i], i % p, p));
    trim(out);
    return out;
}

Poly powmod(const Poly& base, const Integer& e, const Poly& modulus, std::uint64_t p) {
    Poly result = mod(kOne, modulus, p);
    Poly b = mod(base, modulus, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mod(mul(result, result, p), modulus, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b, p), modulus, p);
    }
    return result;
}

std::vector<Factor> factor(const Poly& f, std::uint64_t p, std::uint64_t seed) {
    if (f.empty()) throw DomainError("factor of the zero polynomial");
    std::vector<Factor> out;
    if (degree(f) == 0) return out;
    std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
    for (const auto& [part, mult] : squarefree(monic(f, p), p)) {
        for (const auto& [block, d] : distinct_degree(part, p)) {
            std::vector<Poly> pieces;
            equal_degree(block, d, p, rng, pieces);
            for (auto& g : pieces) out.push_back({std::move(g), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
        if (x.poly.size() != y.poly.size()) return x.poly.size() < y.poly.size();
        if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
        return x.poly < y.poly;
    });
    return out;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
    if (degree(f) < 1) return false;
    const auto fs = factor(f, p);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace hnp::fp
