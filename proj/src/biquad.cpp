#include "hnp/biquad.hpp"

#include <algorithm>

namespace hnp {

namespace {

bool is_unit_one_mod4(const Integer& d) { return mpz_fdiv_ui(d.get_mpz_t(), 4) == 1; }

}  // namespace

BiquadField::BiquadField(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) throw DomainError("biquadratic generators must be nonzero");
    a_ = squarefree_kernel(a);
    b_ = squarefree_kernel(b);
    if (a_ == 1 || b_ == 1) throw DomainError("degenerate biquadratic field: a generator is a square");
    if (a_ == b_) throw DomainError("degenerate biquadratic field: a*b is a square");
    Integer g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    d3_ = (a_ / g) * (b_ / g);
    support_.push_back(2);
    for (const Integer* x : {&a_, &b_})
        for (const auto& pp : factorize(*x).factors) support_.push_back(pp.prime);
    std::sort(support_.begin(), support_.end());
    support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
    fixed_.push_back(Place::infinite());
    for (const auto& p : support_) fixed_.push_back(Place::finite(p));
}

std::vector<Integer> BiquadField::defining_polynomial() const {
    const Integer c = a_ - b_;
    return {Integer(c * c), Integer(0), Integer(-2 * (a_ + b_)), Integer(0), Integer(1)};
}

SplittingData BiquadField::local_splitting(const Integer& p) const {
    const LocalType lt = local_type(*this, Place::finite(p));
    SplittingData sd{p, {}, true};
    switch (lt.kind) {
        case LocalKind::Split: sd.pairs = {{1, 1}, {1, 1}, {1, 1}, {1, 1}}; break;
        case LocalKind::Quadratic: {
            const bool unramified = (p == 2) ? is_unit_one_mod4(lt.d)
                                             : !mpz_divisible_p(lt.d.get_mpz_t(), p.get_mpz_t());
            sd.pairs = unramified ? std::vector<RamificationPair>{{1, 2}, {1, 2}}
                                  : std::vector<RamificationPair>{{2, 1}, {2, 1}};
            break;
        }
        case LocalKind::Biquadratic: {
            // The compositum is unramified over Q_v only in degree <= 2, so e >= 2;
            // f = 2 exactly when one of the three quadratic subfields is unramified.
            bool has_unramified = false;
            for (const Integer* d : {&a_, &b_, &d3_}) {
                if (p == 2 ? is_unit_one_mod4(*d) : !mpz_divisible_p(d->get_mpz_t(), p.get_mpz_t()))
                    has_unramified = true;
            }
            sd.pairs = has_unramified ? std::vector<RamificationPair>{{2, 2}} : std::vector<RamificationPair>{{4, 1}};
            break;
        }
    }
    return sd;
}

NumberField BiquadField::number_field() const {
    SplittingOverride table;
    for (const auto& p : support_) table.emplace(p, local_splitting(p).pairs);
    return NumberField(defining_polynomial(), std::move(table));
}

std::string BiquadField::to_string() const { return "Q(sqrt(" + a_.get_str() + "), sqrt(" + b_.get_str() + "))"; }

const char* to_string(LocalKind kind) {
    switch (kind) {
        case LocalKind::Split: return "split";
        case LocalKind::Quadratic: return "quadratic";
        case LocalKind::Biquadratic: return "biquadratic";
    }
    return "?";
}

LocalType local_type(const BiquadField& F, const Place& v) {
    int squares = 0;
    std::optional<Integer> nonsquare;
    for (const Integer* d : {&F.a(), &F.b(), &F.d3()}) {
        if (is_square_local(Rational(*d), v))
            ++squares;
        else if (!nonsquare)
            nonsquare = *d;
    }
    switch (squares) {
        case 3: return {LocalKind::Split, Integer(0), 4};
        case 1: return {LocalKind::Quadratic, *nonsquare, 2};
        case 0: return {LocalKind::Biquadratic, Integer(0), 1};
        default:
            throw InvariantViolation("two of a, b, ab are local squares at " + v.to_string() + " but the third is not");
    }
}

KnotOrder knot_order(const BiquadField& F) {
    for (const auto& v : F.fixed_places()) {
        if (local_type(F, v).kind == LocalKind::Biquadratic) {
            return {1, v,
                    "g_v = 1 at v = " + v.to_string() + " (local degree 4), so the gcd of all g_v is 1"};
        }
    }
    return {2, std::nullopt,
            "g_v in {2, 4} at every place of {inf} + {p | 2ab}; away from 2ab the three unit square classes "
            "multiply to a square, so g_v in {2, 4} there too, and both values occur by Chebotarev"};
}

bool is_local_norm(const BiquadField& F, const Rational& t, const Place& v) {
    if (t == 0) throw DomainError("local norm test of zero");
    const LocalType lt = local_type(F, v);
    switch (lt.kind) {
        case LocalKind::Split: return true;
        case LocalKind::Quadratic: return hilbert(t, Rational(lt.d), v) == 1;
        case LocalKind::Biquadratic:
            return hilbert(t, Rational(F.a()), v) == 1 && hilbert(t, Rational(F.b()), v) == 1;
    }
    return false;
}

std::optional<Place> LocalReport::failing_place() const {
    for (const auto& pv : places)
        if (!pv.local_norm) return pv.place;
    return std::nullopt;
}

LocalReport is_everywhere_local_norm(const BiquadField& F, const Rational& t) {
    if (t == 0) throw DomainError("local norm test of zero");
    std::vector<Integer> primes = F.ramified_support();
    for (const auto& pp : factorize(t).factors) primes.push_back(pp.prime);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    LocalReport report{t, {}, true};
    std::vector<Place> places{Place::infinite()};
    for (const auto& p : primes) places.push_back(Place::finite(p));
    for (const auto& v : places) {
        const bool ok = is_local_norm(F, t, v);
        report.places.push_back({v, local_type(F, v), ok});
        report.everywhere_local = report.everywhere_local && ok;
    }
    return report;
}

Rational norm_form_eval(const BiquadField& F, const Coords& x) {
    const Rational a(F.a()), b(F.b());
    // eta = (x0 + x1 sqrt a)^2 - b (x2 + x3 sqrt a)^2 = A + B sqrt a
    const Rational A = x[0] * x[0] + a * x[1] * x[1] - b * (x[2] * x[2] + a * x[3] * x[3]);
    const Rational B = 2 * x[0] * x[1] - 2 * b * x[2] * x[3];
    return A * A - a * B * B;
}

Coords multiply(const BiquadField& F, const Coords& x, const Coords& y) {
    const Rational a(F.a()), b(F.b()), ab = a * b;
    return {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] + ab * x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + b * (x[2] * y[3] + x[3] * y[2]),
            x[0] * y[2] + x[2] * y[0] + a * (x[1] * y[3] + x[3] * y[1]),
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1]};
}

Coords inverse(const BiquadField& F, const Coords& x) {
    const Rational n = norm_form_eval(F, x);
    if (n == 0) throw DomainError("inverse of zero");
    // Product of the three nontrivial Galois conjugates.
    Coords c = multiply(F, Coords{x[0], -x[1], x[2], -x[3]}, Coords{x[0], x[1], -x[2], -x[3]});
    c = multiply(F, c, Coords{x[0], -x[1], -x[2], x[3]});
    for (auto& ci : c) ci /= n;
    return c;
}

}  // namespace hnp
