#include "hnp/arith.hpp"

#include <algorithm>
#include <cctype>

namespace hnp {

namespace {

// Replaces a rational by an integer in the same square class: n/d ~ n*d.
Integer square_class_rep(const Rational& q) {
    return Integer(q.get_num() * q.get_den());
}

int legendre(const Integer& u, const Integer& p) {
    return mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
}

unsigned mod8(const Integer& u) {
    return static_cast<unsigned>(mpz_fdiv_ui(u.get_mpz_t(), 8));
}

}  // namespace

Rational Factorization::value() const {
    Integer num = 1, den = 1;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e > 0 ? e : -e));
        (e > 0 ? num : den) *= pe;
    }
    Rational q(sign * num, den);
    q.canonicalize();
    return q;
}

long Factorization::valuation(const Integer& p) const {
    for (const auto& pp : factors)
        if (pp.prime == p) return pp.exponent;
    return 0;
}

long remove_factor(Integer& n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero");
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Integer squarefree_kernel(const Integer& n) {
    if (n == 0) throw DomainError("squarefree kernel of zero");
    Integer k = sgn(n);
    for (const auto& [p, e] : factorize(n).factors)
        if (e % 2 != 0) k *= p;
    return k;
}

Place Place::finite(const Integer& p) {
    if (!is_prime(p)) throw DomainError("place " + p.get_str() + " is not a prime");
    Place v;
    v.prime_ = p;
    return v;
}

const Integer& Place::prime() const {
    if (!prime_) throw DomainError("the infinite place has no prime");
    return *prime_;
}

std::string Place::to_string() const { return prime_ ? prime_->get_str() : std::string("inf"); }

Place Place::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinite();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw DomainError("bad place '" + s + "'");
    return finite(Integer(s));
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // Work with unsigned magnitudes; the sign of a only matters through (a|2)
    // and reciprocity, both of which need a mod 8 / mod 4 of the signed value.
    std::uint64_t un = static_cast<std::uint64_t>(n);
    int v = __builtin_ctzll(un);
    un >>= v;
    if (v > 0) {
        if (a % 2 == 0) return 0;
        const std::int64_t r = ((a % 8) + 8) % 8;
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    // now un odd; reduce a mod un into [0, un)
    std::int64_t am = a % static_cast<std::int64_t>(un);
    if (am < 0) am += static_cast<std::int64_t>(un);
    std::uint64_t x = static_cast<std::uint64_t>(am), m = un;
    while (x != 0) {
        const int t = __builtin_ctzll(x);
        x >>= t;
        if ((t & 1) && ((m & 7) == 3 || (m & 7) == 5)) result = -result;
        if ((x & 3) == 3 && (m & 3) == 3) result = -result;
        std::swap(x, m);
        x %= m;
    }
    return m == 1 ? result : 0;
}

bool is_square_local(const Rational& d, const Place& v) {
    if (d == 0) throw DomainError("is_square_local of zero");
    if (v.is_infinite()) return d > 0;
    Integer u = square_class_rep(d);
    const Integer& p = v.prime();
    if (remove_factor(u, p) % 2 != 0) return false;
    if (p == 2) return mod8(u) == 1;
    return legendre(u, p) == 1;
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw DomainError("Hilbert symbol of zero");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    Integer u = square_class_rep(a), w = square_class_rep(b);
    const Integer& p = v.prime();
    const long alpha = remove_factor(u, p);
    const long beta = remove_factor(w, p);
    if (p == 2) {
        const unsigned u8 = mod8(u), w8 = mod8(w);
        const int eps_u = (u8 % 4 == 3), eps_w = (w8 % 4 == 3);
        const int om_u = (u8 == 3 || u8 == 5), om_w = (w8 == 3 || w8 == 5);
        const long e = eps_u * eps_w + alpha * om_w + beta * om_u;
        return (e % 2 == 0) ? 1 : -1;
    }
    int s = 1;
    // (-1)^(alpha*beta*(p-1)/2)
    if ((alpha & beta & 1) && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
    if (beta & 1) s *= legendre(u, p);
    if (alpha & 1) s *= legendre(w, p);
    return s;
}

std::vector<Place> hilbert_support(const Rational& a, const Rational& b) {
    std::vector<Integer> primes{2};
    for (const Rational* q : {&a, &b})
        for (const auto& pp : factorize(*q).factors) primes.push_back(pp.prime);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Place> out{Place::infinite()};
    for (const auto& p : primes) out.push_back(Place::finite(p));
    return out;
}

Rational parse_rational(const std::string& s) {
    auto valid_int = [](const std::string& x, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < x.size() && (x[i] == '-' || x[i] == '+')) ++i;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw DomainError("bad rational '" + s + "'");
    Integer n(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0) throw DomainError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace hnp
