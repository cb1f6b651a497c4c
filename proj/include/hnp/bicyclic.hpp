#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hnp {

using Residue = std::pair<long, long>;  // (i mod m, j mod n)

class BicyclicGroup {
public:
    BicyclicGroup(long m, long n);

    long m() const noexcept { return m_; }
    long n() const noexcept { return n_; }
    long order() const noexcept { return m_ * n_; }

    // Closure of the generating set; throws DomainError on out-of-range residues.
    std::vector<Residue> generate(const std::vector<Residue>& gens) const;
    long element_order(const Residue& x) const;

private:
    long m_, n_;
};

struct DecompositionSpec {
    std::vector<std::vector<Residue>> subgroups;  // generating sets
    std::string label;
};

struct BicyclicKnot {
    long g = 1;
    long witness_index = 0;               // an index achieving a gcd step
    std::vector<Residue> witness_generators;
    std::vector<long> indices;            // distinct indices considered, increasing
};

// gcd of [G : D] over all cyclic subgroups D and every supplied subgroup.
BicyclicKnot knot_bicyclic(const BicyclicGroup& G, const DecompositionSpec& extra);

// "i:j,i:j" -> generators.
std::vector<Residue> parse_generators(const std::string& text);

}  // namespace hnp
