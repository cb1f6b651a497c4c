#include "hnp/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hnp/kernels.hpp"
#include "hnp/polyfp.hpp"

namespace hnp {

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zmul(const ZPoly& f, const ZPoly& g) {
    if (f.empty() || g.empty()) return {};
    ZPoly out(f.size() + g.size() - 1, Integer(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    ztrim(out);
    return out;
}

// Exact division by a monic g; nullopt if g does not divide f over Z.
std::optional<ZPoly> zdiv_exact(ZPoly r, const ZPoly& g) {
    const int dg = static_cast<int>(g.size()) - 1;
    const int df = static_cast<int>(r.size()) - 1;
    if (df < dg) return std::nullopt;
    ZPoly q(static_cast<std::size_t>(df - dg + 1));
    for (int i = df; i >= dg; --i) {
        const Integer c = r[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i - dg)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(i - dg + j)] -= c * g[static_cast<std::size_t>(j)];
    }
    ztrim(r);
    if (!r.empty()) return std::nullopt;
    return q;
}

ZPoly lift(const fp::Poly& f) {
    ZPoly out;
    for (auto c : f) out.emplace_back(static_cast<unsigned long>(c));
    return out;
}

// Fraction-free (Bareiss) determinant.
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= limit; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// All subset sums of the factor degrees, i.e. degrees of possible factors.
std::vector<bool> subset_degrees(const std::vector<fp::Factor>& fs, int n) {
    std::vector<bool> can(static_cast<std::size_t>(n) + 1, false);
    can[0] = true;
    for (const auto& f : fs) {
        const int d = fp::degree(f.poly);
        for (int m = 0; m < f.multiplicity; ++m)
            for (int s = n; s >= d; --s)
                if (can[static_cast<std::size_t>(s - d)]) can[static_cast<std::size_t>(s)] = true;
    }
    return can;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> out{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = out.size();
        Integer pk = 1;
        for (long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

constexpr std::uint64_t kSearchBudget = 20'000'000;

// Searches monic integer factors of degree d within the Mignotte bound.
bool has_integer_factor_of_degree(const ZPoly& f, int d) {
    const int n = static_cast<int>(f.size()) - 1;
    long double norm2 = 0;
    for (const auto& c : f) norm2 += static_cast<long double>(c.get_d()) * c.get_d();
    const long double norm = std::sqrt(norm2);
    std::vector<Integer> bound(static_cast<std::size_t>(d));
    long double volume = 1;
    for (int i = 1; i < d; ++i) {
        long double binom = 1;
        for (int k = 0; k < i; ++k) binom = binom * (d - k) / (k + 1);
        bound[static_cast<std::size_t>(i)] = Integer(static_cast<double>(std::floor(binom * norm)) + 1);
        volume *= 2 * bound[static_cast<std::size_t>(i)].get_d() + 1;
    }
    const auto consts = divisors(abs(f[0]));
    volume *= 2.0L * consts.size();
    if (volume > kSearchBudget)
        throw DomainError("irreducibility could not be certified within the factor-search budget");
    // Fast rejection mod a prime before exact division.
    const std::uint64_t p = 1'000'003;
    const fp::Poly fbar = fp::reduce(f, p);
    ZPoly g(static_cast<std::size_t>(d) + 1, Integer(0));
    g[static_cast<std::size_t>(d)] = 1;
    std::vector<Integer> idx(static_cast<std::size_t>(d));
    for (const auto& c0 : consts) {
        for (int sgn0 : {1, -1}) {
            g[0] = sgn0 * c0;
            for (int i = 1; i < d; ++i) g[static_cast<std::size_t>(i)] = -bound[static_cast<std::size_t>(i)];
            for (;;) {
                if (fp::mod(fbar, fp::reduce(g, p), p).empty() && zdiv_exact(f, g)) return true;
                int i = 1;
                while (i < d) {
                    auto& gi = g[static_cast<std::size_t>(i)];
                    if (gi < bound[static_cast<std::size_t>(i)]) {
                        ++gi;
                        break;
                    }
                    gi = -bound[static_cast<std::size_t>(i)];
                    ++i;
                }
                if (i >= d) break;
            }
        }
    }
    (void)n;
    return false;
}

void certify_irreducible(const ZPoly& f, const Integer& disc) {
    const int n = static_cast<int>(f.size()) - 1;
    if (f[0] == 0) throw DomainError("polynomial is divisible by x");
    std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
    int tried = 0;
    for (std::uint64_t p : small_primes(400)) {
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        const auto fs = fp::factor(fp::reduce(f, p), p);
        if (fs.size() == 1) return;
        const auto can = subset_degrees(fs, n);
        for (int d = 1; d < n; ++d)
            if (!can[static_cast<std::size_t>(d)]) possible[static_cast<std::size_t>(d)] = false;
        if (++tried >= 40) break;
    }
    for (int d = 1; 2 * d <= n; ++d) {
        // A degree-d factor implies a degree n-d cofactor.
        if (!possible[static_cast<std::size_t>(d)] || !possible[static_cast<std::size_t>(n - d)]) continue;
        if (has_integer_factor_of_degree(f, d))
            throw DomainError("polynomial is reducible (has a factor of degree " + std::to_string(d) + ")");
    }
}

SplittingData quadratic_splitting(const ZPoly& f, const Integer& p) {
    const Integer D = f[1] * f[1] - 4 * f[0];
    const Integer k = squarefree_kernel(D);
    const Integer dk = (mpz_fdiv_ui(k.get_mpz_t(), 4) == 1) ? k : Integer(4 * k);
    SplittingData sd{p, {}, true};
    switch (kronecker(dk, p)) {
        case 1: sd.pairs = {{1, 1}, {1, 1}}; break;
        case -1: sd.pairs = {{1, 2}}; break;
        default: sd.pairs = {{2, 1}}; break;
    }
    return sd;
}

// Dedekind's criterion: Z[theta] is p-maximal iff gcd(F, G, H) = 1 mod p,
// where G = prod g_i, H = prod g_i^(e_i - 1), F = (G H - f) / p.
bool dedekind_p_maximal(const ZPoly& f, const std::vector<fp::Factor>& fs, std::uint64_t p) {
    ZPoly G{Integer(1)}, H{Integer(1)};
    fp::Poly Gbar{1}, Hbar{1};
    for (const auto& fac : fs) {
        const ZPoly gi = lift(fac.poly);
        G = zmul(G, gi);
        Gbar = fp::mul(Gbar, fac.poly, p);
        for (int k = 1; k < fac.multiplicity; ++k) {
            H = zmul(H, gi);
            Hbar = fp::mul(Hbar, fac.poly, p);
        }
    }
    ZPoly F = zmul(G, H);
    F.resize(std::max(F.size(), f.size()), Integer(0));
    for (std::size_t i = 0; i < f.size(); ++i) F[i] -= f[i];
    for (auto& c : F) {
        if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p)))
            throw InvariantViolation("Dedekind lift not divisible by p");
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    }
    ztrim(F);
    const fp::Poly Fbar = fp::reduce(F, p);
    const fp::Poly g = fp::gcd(fp::gcd(Fbar, Gbar, p), Hbar, p);
    return fp::degree(g) == 0;
}

void validate_override(const SplittingOverride& table, int degree) {
    for (const auto& [p, pairs] : table) {
        if (!is_prime(p)) throw DomainError("override entry " + p.get_str() + " is not prime");
        int total = 0;
        for (auto [e, f] : pairs) {
            if (e < 1 || f < 1) throw DomainError("override for " + p.get_str() + " has nonpositive e or f");
            total += e * f;
        }
        if (total != degree)
            throw DomainError("override for " + p.get_str() + " has sum e*f = " + std::to_string(total) +
                              ", expected " + std::to_string(degree));
    }
}

}  // namespace

int SplittingData::residue_gcd() const {
    int g = 0;
    for (auto [e, f] : pairs) g = std::gcd(g, f);
    return g;
}

bool SplittingData::unramified() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const RamificationPair& x) { return x.first == 1; });
}

int SplittingData::total_degree() const {
    int t = 0;
    for (auto [e, f] : pairs) t += e * f;
    return t;
}

SplittingOverride parse_splitting_override(std::istream& in) {
    SplittingOverride table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string ptok;
        if (!(ss >> ptok)) continue;
        Integer p;
        try {
            p = Integer(ptok);
        } catch (const std::invalid_argument&) {
            throw DomainError("override line " + std::to_string(lineno) + ": bad prime '" + ptok + "'");
        }
        if (!is_prime(p)) throw DomainError("override line " + std::to_string(lineno) + ": " + ptok + " is not prime");
        std::vector<RamificationPair> pairs;
        std::vector<long> nums;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                nums.push_back(std::stol(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw DomainError("override line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
        }
        if (nums.empty() || nums.size() % 2 != 0)
            throw DomainError("override line " + std::to_string(lineno) + ": expected pairs 'e f'");
        for (std::size_t i = 0; i < nums.size(); i += 2) {
            if (nums[i] < 1 || nums[i + 1] < 1 || nums[i] > 1000 || nums[i + 1] > 1000)
                throw DomainError("override line " + std::to_string(lineno) + ": e and f must be positive");
            pairs.emplace_back(static_cast<int>(nums[i]), static_cast<int>(nums[i + 1]));
        }
        std::sort(pairs.begin(), pairs.end());
        if (table.count(p)) throw DomainError("override line " + std::to_string(lineno) + ": duplicate prime");
        table.emplace(p, std::move(pairs));
    }
    return table;
}

std::string format_splitting_override(const SplittingOverride& table) {
    std::ostringstream out;
    out << "# p e1 f1 e2 f2 ...\n";
    for (const auto& [p, pairs] : table) {
        out << p.get_str();
        for (auto [e, f] : pairs) out << ' ' << e << ' ' << f;
        out << '\n';
    }
    return out.str();
}

Integer poly_discriminant(const std::vector<Integer>& f) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1) throw DomainError("discriminant of a constant");
    if (f.back() != 1) throw DomainError("discriminant expects a monic polynomial");
    ZPoly df;
    for (int i = 1; i <= n; ++i) df.push_back(f[static_cast<std::size_t>(i)] * i);
    const int m = n - 1;
    const std::size_t size = static_cast<std::size_t>(n + m);
    std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, Integer(0)));
    // Rows hold coefficients from the leading one down.
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f[static_cast<std::size_t>(n - i)];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            syl[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + i)] = df[static_cast<std::size_t>(m - i)];
    const Integer res = bareiss_det(std::move(syl));
    return ((n * (n - 1) / 2) % 2 == 0) ? res : Integer(-res);
}

NumberField::NumberField(std::vector<Integer> coeffs, SplittingOverride overrides)
    : coeffs_(std::move(coeffs)), overrides_(std::move(overrides)) {
    ztrim(coeffs_);
    if (coeffs_.size() < 3) throw DomainError("defining polynomial must have degree at least 2");
    if (coeffs_.back() != 1) throw DomainError("defining polynomial must be monic");
    disc_ = poly_discriminant(coeffs_);
    if (disc_ == 0) throw DomainError("defining polynomial is not squarefree");
    certify_irreducible(coeffs_, disc_);
    validate_override(overrides_, degree());
}

NumberField NumberField::from_string(const std::string& csv) {
    std::vector<Integer> coeffs;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
        try {
            coeffs.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw DomainError("bad polynomial coefficient '" + tok + "'");
        }
    }
    return NumberField(std::move(coeffs));
}

NumberField NumberField::with_overrides(SplittingOverride overrides) const {
    validate_override(overrides, degree());
    NumberField copy = *this;
    copy.overrides_ = std::move(overrides);
    return copy;
}

std::string NumberField::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += coeffs_[i].get_str();
    }
    return out;
}

SplittingData splitting_data(const NumberField& K, const Integer& p) {
    if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
    if (auto it = K.overrides().find(p); it != K.overrides().end()) return {p, it->second, true};
    const auto& f = K.coefficients();
    if (K.degree() == 2) return quadratic_splitting(f, p);
    if (!p.fits_ulong_p() || p.get_ui() >= (1ULL << 63))
        throw UnsupportedPrime(p.get_str(), "prime too large for the F_p kernel");
    const std::uint64_t pu = p.get_ui();
    const auto fs = fp::factor(fp::reduce(f, pu), pu);
    SplittingData sd{p, {}, false};
    bool squarefree = true;
    for (const auto& fac : fs) {
        sd.pairs.emplace_back(fac.multiplicity, fp::degree(fac.poly));
        if (fac.multiplicity > 1) squarefree = false;
    }
    std::sort(sd.pairs.begin(), sd.pairs.end());
    const Integer p2 = p * p;
    const bool p2_divides = mpz_divisible_p(K.discriminant().get_mpz_t(), p2.get_mpz_t()) != 0;
    sd.reliable = squarefree || !p2_divides || dedekind_p_maximal(f, fs, pu);
    return sd;
}

bool is_ideal_norm(const NumberField& K, const Rational& t) {
    if (t <= 0) throw DomainError("ideal norms are positive; got " + t.get_str());
    for (const auto& [p, e] : factorize(t).factors) {
        const SplittingData sd = splitting_data(K, p);
        if (!sd.reliable) throw UnsupportedPrime(p.get_str(), "Dedekind's criterion fails; supply an override");
        if (e % sd.residue_gcd() != 0) return false;
    }
    return true;
}

bool in_P_K(const NumberField& K, const Integer& p) {
    const SplittingData sd = splitting_data(K, p);
    if (!sd.reliable) throw DomainError("splitting at " + p.get_str() + " is not certified");
    if (!sd.unramified()) throw DomainError(p.get_str() + " is ramified");
    return sd.residue_gcd() == 1;
}

DensityEstimate delta_K_estimate(const NumberField& K, std::uint64_t X, int workers) {
    if (X < 100) throw DomainError("density estimate needs X >= 100");
    if (X > 0xffffffffULL) throw DomainError("density bound exceeds 2^32");
    const SpfTable table(static_cast<std::uint32_t>(X));
    const auto counts = kernels::parallel::residue_gcd_census(K.coefficients(), K.discriminant(), table.primes(), workers);
    DensityEstimate out{counts.hits, counts.total, Rational(0)};
    if (counts.total > 0) {
        out.estimate = Rational(Integer(static_cast<unsigned long>(counts.hits)),
                                Integer(static_cast<unsigned long>(counts.total)));
        out.estimate.canonicalize();
    }
    return out;
}

std::vector<std::uint64_t> doubling_grid(std::uint64_t B, int levels) {
    if (B < 1) throw DomainError("bound must be positive");
    if (levels < 1) throw DomainError("grid needs at least one level");
    std::vector<std::uint64_t> grid;
    for (int k = levels - 1; k >= 0; --k) {
        const std::uint64_t b = k >= 64 ? 0 : (B >> k);
        if (b >= 1 && (grid.empty() || grid.back() != b)) grid.push_back(b);
    }
    return grid;
}

std::vector<GridCount> count_ideal_norms(const NumberField& K, std::uint64_t B, int levels, int workers) {
    const auto grid = doubling_grid(B, levels);
    if (B > (1ULL << 31)) throw DomainError("bound exceeds the SPF table budget");
    std::vector<std::uint8_t> gcds(B + 1, 1);
    std::optional<SpfTable> spf;
    if (B >= 2) {
        spf.emplace(static_cast<std::uint32_t>(B));
        for (std::uint32_t p : spf->primes()) {
            const SplittingData sd = splitting_data(K, Integer(static_cast<unsigned long>(p)));
            if (!sd.reliable) throw UnsupportedPrime(std::to_string(p), "Dedekind's criterion fails; supply an override");
            gcds[p] = static_cast<std::uint8_t>(sd.residue_gcd());
        }
    }
    const auto level = kernels::level_map(grid);
    std::vector<std::uint64_t> bins(grid.size(), 0);
    if (spf)
        bins = kernels::parallel::ideal_norm_bins(*spf, gcds, level, grid.size(), workers);
    else
        bins[0] = 1;  // B = 1: only n = 1
    const auto cum = kernels::cumulate(bins);
    std::vector<GridCount> out;
    for (std::size_t i = 0; i < grid.size(); ++i) out.push_back({grid[i], cum[i]});
    return out;
}

}  // namespace hnp
