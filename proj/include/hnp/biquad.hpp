#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hnp/arith.hpp"
#include "hnp/numfield.hpp"

namespace hnp {

// K = Q(sqrt a, sqrt b) with Galois group (Z/2)^2. a and b are stored as
// squarefree kernels; d3 is the squarefree kernel of a*b.
class BiquadField {
public:
    // Throws DomainError if a, b or ab is a square (K would not be quartic).
    BiquadField(const Integer& a, const Integer& b);

    const Integer& a() const noexcept { return a_; }
    const Integer& b() const noexcept { return b_; }
    const Integer& d3() const noexcept { return d3_; }
    // Primes dividing 2ab, increasing.
    const std::vector<Integer>& ramified_support() const noexcept { return support_; }
    const std::vector<Place>& fixed_places() const noexcept { return fixed_; }

    // Minimal polynomial of sqrt a + sqrt b: x^4 - 2(a+b)x^2 + (a-b)^2.
    std::vector<Integer> defining_polynomial() const;

    // Exact (e, f) data at p from the local square classes.
    SplittingData local_splitting(const Integer& p) const;

    // The quartic as a NumberField, with exact splitting overrides at 2ab.
    NumberField number_field() const;

    std::string to_string() const;

private:
    Integer a_, b_, d3_;
    std::vector<Integer> support_;
    std::vector<Place> fixed_;
};

enum class LocalKind { Split, Quadratic, Biquadratic };

const char* to_string(LocalKind kind);

// Isomorphism class of K tensor Q_v. d is set for Quadratic: K_v = Q_v(sqrt d)^2.
struct LocalType {
    LocalKind kind = LocalKind::Split;
    Integer d;
    int g_v = 4;  // number of places of K above v

    friend bool operator==(const LocalType&, const LocalType&) = default;
};

LocalType local_type(const BiquadField& F, const Place& v);

struct KnotOrder {
    int g = 2;
    std::optional<Place> witness;  // a place with g_v = 1 when g = 1
    std::string justification;
};

KnotOrder knot_order(const BiquadField& F);

bool is_local_norm(const BiquadField& F, const Rational& t, const Place& v);

struct PlaceVerdict {
    Place place;
    LocalType type;
    bool local_norm = false;
};

struct LocalReport {
    Rational t;
    std::vector<PlaceVerdict> places;
    bool everywhere_local = false;

    // First place where t fails to be a local norm.
    std::optional<Place> failing_place() const;
};

// Tests the finite set {inf, 2} + {p | ab} + {p | t}; elsewhere the completion
// is unramified and t a unit, so the symbols are trivial.
LocalReport is_everywhere_local_norm(const BiquadField& F, const Rational& t);

// x0 + x1 sqrt a + x2 sqrt b + x3 sqrt(ab).
using Coords = std::array<Rational, 4>;

Rational norm_form_eval(const BiquadField& F, const Coords& x);
Coords multiply(const BiquadField& F, const Coords& x, const Coords& y);
Coords inverse(const BiquadField& F, const Coords& x);

}  // namespace hnp
