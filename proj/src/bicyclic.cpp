#include "hnp/bicyclic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "hnp/errors.hpp"

namespace hnp {

BicyclicGroup::BicyclicGroup(long m, long n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw DomainError("bicyclic group needs m, n >= 1");
    if (m * n > 1'000'000) throw DomainError("bicyclic group too large for enumeration");
}

std::vector<Residue> BicyclicGroup::generate(const std::vector<Residue>& gens) const {
    for (const auto& [i, j] : gens)
        if (i < 0 || i >= m_ || j < 0 || j >= n_)
            throw DomainError("residue (" + std::to_string(i) + ":" + std::to_string(j) + ") out of range for Z/" +
                              std::to_string(m_) + " x Z/" + std::to_string(n_));
    std::vector<char> seen(static_cast<std::size_t>(m_ * n_), 0);
    std::vector<Residue> elems{{0, 0}}, frontier{{0, 0}};
    seen[0] = 1;
    while (!frontier.empty()) {
        std::vector<Residue> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                const Residue y{(x.first + g.first) % m_, (x.second + g.second) % n_};
                auto& flag = seen[static_cast<std::size_t>(y.first * n_ + y.second)];
                if (!flag) {
                    flag = 1;
                    elems.push_back(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

long BicyclicGroup::element_order(const Residue& x) const {
    return std::lcm(m_ / std::gcd(x.first, m_), n_ / std::gcd(x.second, n_));
}

BicyclicKnot knot_bicyclic(const BicyclicGroup& G, const DecompositionSpec& extra) {
    BicyclicKnot out;
    out.g = 0;
    std::set<long> indices;
    auto consider = [&](long index, std::vector<Residue> gens) {
        indices.insert(index);
        const long g = std::gcd(out.g, index);
        if (out.g == 0 || g != out.g) {
            out.witness_index = index;
            out.witness_generators = std::move(gens);
        }
        out.g = g;
    };
    for (long i = 0; i < G.m(); ++i)
        for (long j = 0; j < G.n(); ++j) consider(G.order() / G.element_order({i, j}), {{i, j}});
    for (const auto& gens : extra.subgroups) consider(G.order() / static_cast<long>(G.generate(gens).size()), gens);
    out.indices.assign(indices.begin(), indices.end());
    return out;
}

std::vector<Residue> parse_generators(const std::string& text) {
    std::vector<Residue> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw DomainError("generator '" + tok + "' is not of the form i:j");
        try {
            std::size_t u1 = 0, u2 = 0;
            const std::string si = tok.substr(0, colon), sj = tok.substr(colon + 1);
            const long i = std::stol(si, &u1), j = std::stol(sj, &u2);
            if (u1 != si.size() || u2 != sj.size()) throw std::invalid_argument(tok);
            out.emplace_back(i, j);
        } catch (const std::logic_error&) {
            throw DomainError("generator '" + tok + "' is not of the form i:j");
        }
    }
    if (out.empty()) throw DomainError("empty generator list");
    return out;
}

}  // namespace hnp
