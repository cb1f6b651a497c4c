#include "hnp/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "hnp/io.hpp"

namespace hnp::cli {

namespace {

using io::json;

struct FieldArgs {
    std::string a, b;
    BiquadField field() const { return BiquadField(Integer(a), Integer(b)); }
};

void add_field(CLI::App* cmd, FieldArgs& f) {
    cmd->add_option("--a", f.a, "first generator (squarefree kernel is taken)")->required();
    cmd->add_option("--b", f.b, "second generator")->required();
}

CLI::Option* add_format(CLI::App* cmd, std::string& format) {
    return cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
}

std::string coords_string(const Coords& x) {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + x[i].get_str();
    return s + ")";
}

NumberField load_field(const std::string& poly, const std::string& override_path) {
    NumberField K = NumberField::from_string(poly);
    if (override_path.empty()) return K;
    std::ifstream in(override_path);
    if (!in) throw DomainError("cannot read override file " + override_path);
    return K.with_overrides(parse_splitting_override(in));
}

std::uint64_t naive_local_count(const BiquadField& F, std::uint64_t B) {
    std::uint64_t n = 0;
    for_each_height(B, [&](const Rational& t) { n += is_everywhere_local_norm(F, t).everywhere_local; });
    return n;
}

int selftest(std::ostream& out) {
    bool all = true;
    auto report = [&](const char* name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        all = all && ok;
    };

    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> d(-10000, 10000), den(1, 10000);
    bool product = true;
    for (int i = 0; i < 2000 && product; ++i) {
        long n1 = 0, n2 = 0;
        while (n1 == 0) n1 = d(rng);
        while (n2 == 0) n2 = d(rng);
        Rational x(n1, den(rng)), y(n2, den(rng));
        x.canonicalize();
        y.canonicalize();
        int prod = 1;
        for (const auto& v : hilbert_support(Rational(x), Rational(y))) prod *= hilbert(x, y, v);
        product = prod == 1;
    }
    report("hilbert product formula (2000 random pairs)", product);

    const BiquadField F(13, 17);
    report("knot order of Q(sqrt13, sqrt17) is 2", knot_order(F).g == 2);
    report("25 is an everywhere-local norm", is_everywhere_local_norm(F, Rational(25)).everywhere_local);
    report("5 fails at v = 5", is_everywhere_local_norm(F, Rational(5)).failing_place() == Place::finite(5));

    CountConfig cfg;
    cfg.bound = 120;
    cfg.levels = 3;
    cfg.minus_one_generates = true;
    const CountSeries S = count_series(F, cfg);
    bool oracle = true;
    for (const auto& row : S.rows) oracle = oracle && row.n_loc == naive_local_count(F, row.bound);
    report("count_series matches the naive recount (B = 120)", oracle);

    const auto ideal = count_ideal_norms(NumberField({1, 0, 1}), 100);
    report("ideal norms of Q(i) up to 100 number 43", ideal.back().count == 43);
    return all ? Ok : DomainFailure;
}

}  // namespace

std::vector<long long> escalation_caps(long long cap) {
    if (cap < 1) throw ConfigError("--cap must be positive");
    std::vector<long long> caps;
    for (long long c = 100; c < cap; c *= 10) caps.push_back(c);
    caps.push_back(cap);
    return caps;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local and global norms for biquadratic and general number fields"};
    app.require_subcommand(1);
    app.name("hnp");

    std::string format = "text";
    int workers = 0;
    FieldArgs field;
    std::string t_text, poly, override_path, input, which = "loc", v_text;
    std::uint64_t B = 1024, X = 100000;
    int levels = 1;
    long long cap = 1000, search_cap = 6;
    bool minus_one = false, witness = false, no_relations = false;
    long m = 2, n = 2;
    std::vector<std::string> extra;

    auto* knot = app.add_subcommand("knot", "knot group order of Q(sqrt a, sqrt b)");
    add_field(knot, field);
    add_format(knot, format);

    auto* knotb = app.add_subcommand("knot-bicyclic", "knot group of a Z/m x Z/n extension");
    knotb->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    knotb->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    knotb->add_option("--extra", extra, "non-cyclic decomposition group generators \"i:j,i:j\" (repeatable)");
    add_format(knotb, format);

    auto* local = app.add_subcommand("local", "everywhere-local norm test with per-place report");
    add_field(local, field);
    local->add_option("--t", t_text, "rational a/b")->required();
    local->add_option("--v", v_text, "restrict to one place (\"inf\" or a prime)");
    add_format(local, format);

    auto* global = app.add_subcommand("global", "global norm decision by certificate search");
    add_field(global, field);
    global->add_option("--t", t_text)->required();
    global->add_option("--cap", cap, "largest certificate height; escalates through powers of 10")
        ->capture_default_str();
    global->add_flag("--minus-one-generates", minus_one, "the class of -1 generates the knot group");
    global->add_flag("--witness", witness, "search a certificate even when the knot group is trivial");
    global->add_flag("--no-relations", no_relations, "shell scan only");
    global->add_option("--workers", workers);
    add_format(global, format);

    auto* ideal = app.add_subcommand("ideal-norm", "ideal-norm test, or the ideal-norm count with --B");
    ideal->add_option("--poly", poly, "coefficients, constant term first: c0,c1,...,1")->required();
    auto* ideal_t = ideal->add_option("--t", t_text);
    auto* ideal_B = ideal->add_option("--B", B);
    ideal->add_option("--levels", levels);
    ideal->add_option("--override", override_path, "splitting override table");
    ideal->add_option("--workers", workers);
    add_format(ideal, format);

    auto* delta = app.add_subcommand("delta", "density of primes with residue-degree gcd 1");
    delta->add_option("--poly", poly)->required();
    delta->add_option("--X", X)->capture_default_str();
    delta->add_option("--override", override_path);
    delta->add_option("--workers", workers);
    add_format(delta, format);

    auto* count = app.add_subcommand("count", "N_loc, N_glob, N_ce on a doubling grid");
    add_field(count, field);
    count->add_option("--B", B)->capture_default_str();
    count->add_option("--levels", levels)->capture_default_str();
    count->add_flag("--minus-one-generates", minus_one);
    count->add_option("--search-cap", search_cap, "certificate height for the lower bound mode")
        ->capture_default_str();
    count->add_option("--workers", workers);
    add_format(count, format);

    auto* count_int = app.add_subcommand("count-integers", "everywhere-local norms among integers n <= B");
    add_field(count_int, field);
    count_int->add_option("--B", B)->capture_default_str();
    count_int->add_option("--levels", levels)->capture_default_str();
    count_int->add_option("--workers", workers);
    add_format(count_int, format);

    auto* fit = app.add_subcommand("fit", "fit log count = log c + 2 log B - e log log B");
    fit->add_option("--input", input, "CSV from `count`");
    fit->add_option("--a", field.a);
    fit->add_option("--b", field.b);
    fit->add_option("--B", B);
    fit->add_option("--levels", levels);
    fit->add_flag("--minus-one-generates", minus_one);
    fit->add_option("--which", which)->check(CLI::IsMember({"loc", "glob"}));
    fit->add_option("--workers", workers);
    add_format(fit, format);

    auto* self = app.add_subcommand("selftest", "product formula and oracle checks");

    std::vector<std::string> argv_store{"hnp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (knot->parsed()) {
            const BiquadField F = field.field();
            const KnotOrder k = knot_order(F);
            if (format == "json") {
                out << io::to_json(k).dump() << '\n';
            } else {
                out << "knot group: " << (k.g == 1 ? "trivial" : "Z/" + std::to_string(k.g) + "Z") << '\n';
                if (k.witness) out << "witness place: " << k.witness->to_string() << '\n';
            }
        } else if (knotb->parsed()) {
            const BicyclicGroup G(m, n);
            DecompositionSpec spec;
            spec.label = "cli";
            for (const auto& e : extra) spec.subgroups.push_back(parse_generators(e));
            const BicyclicKnot k = knot_bicyclic(G, spec);
            if (format == "json") {
                out << io::to_json(k).dump() << '\n';
            } else {
                out << "knot group: " << (k.g == 1 ? "trivial" : "Z/" + std::to_string(k.g) + "Z") << '\n';
                out << "witness index: " << k.witness_index << '\n';
            }
        } else if (local->parsed()) {
            const BiquadField F = field.field();
            const Rational t = parse_rational(t_text);
            if (t == 0) throw DomainError("t must be nonzero");
            if (!v_text.empty()) {
                const Place v = Place::parse(v_text);
                const bool ok = is_local_norm(F, t, v);
                if (format == "json")
                    out << json{{"t", t.get_str()}, {"v", v.to_string()}, {"type", to_string(local_type(F, v).kind)},
                                {"local_norm", ok}}
                               .dump()
                        << '\n';
                else
                    out << "local_norm: " << (ok ? "true" : "false") << '\n';
                return Ok;
            }
            const LocalReport r = is_everywhere_local_norm(F, t);
            if (format == "json") {
                out << io::to_json(r).dump() << '\n';
            } else {
                for (const auto& pv : r.places)
                    out << "v=" << pv.place.to_string() << " type=" << to_string(pv.type.kind)
                        << " local_norm=" << (pv.local_norm ? "true" : "false") << '\n';
                out << "everywhere_local: " << (r.everywhere_local ? "true" : "false") << '\n';
            }
        } else if (global->parsed()) {
            const BiquadField F = field.field();
            const Rational t = parse_rational(t_text);
            GlobalConfig cfg;
            cfg.caps.clear();
            for (long long c : escalation_caps(cap)) cfg.caps.push_back(c);
            cfg.minus_one_generates = minus_one;
            cfg.witness_for_trivial_knot = witness;
            cfg.use_relations = !no_relations;
            cfg.workers = workers;
            const GlobalDecision d = decide_global(F, t, cfg);
            if (format == "json") {
                out << io::to_json(d).dump() << '\n';
            } else if (const auto* g = std::get_if<GlobalNorm>(&d)) {
                out << "Norm\n";
                if (g->certificate) out << "certificate: " << coords_string(g->certificate->coords) << '\n';
                out << "justification: " << g->justification << '\n';
            } else if (const auto* nn = std::get_if<GlobalNotNorm>(&d)) {
                out << "NotNorm\n";
                if (nn->partner_certificate)
                    out << "certificate for " << nn->partner_certificate->value.get_str() << ": "
                        << coords_string(nn->partner_certificate->coords) << '\n';
                out << "justification: " << nn->justification << '\n';
            } else {
                const auto& u = std::get<GlobalUnknown>(d);
                out << "Unknown (cap " << u.cap << ")\njustification: " << u.justification << '\n';
            }
            return std::holds_alternative<GlobalUnknown>(d) ? Unknown : Ok;
        } else if (ideal->parsed()) {
            const NumberField K = load_field(poly, override_path);
            if (ideal_B->count() > 0) {
                const auto counts = count_ideal_norms(K, B, levels, workers);
                if (format == "json") {
                    out << io::to_json(counts).dump() << '\n';
                } else {
                    out << "B,count\n";
                    for (const auto& c : counts) out << c.bound << ',' << c.count << '\n';
                }
            } else if (ideal_t->count() > 0) {
                const bool ok = is_ideal_norm(K, parse_rational(t_text));
                if (format == "json")
                    out << json{{"t", parse_rational(t_text).get_str()}, {"ideal_norm", ok}}.dump() << '\n';
                else
                    out << "ideal_norm: " << (ok ? "true" : "false") << '\n';
            } else {
                throw ConfigError("ideal-norm needs --t or --B");
            }
        } else if (delta->parsed()) {
            const NumberField K = load_field(poly, override_path);
            const DensityEstimate e = delta_K_estimate(K, X, workers);
            if (format == "json")
                out << io::to_json(e).dump() << '\n';
            else
                out << "hits=" << e.hits << " total=" << e.total << " estimate=" << e.value() << '\n';
        } else if (count->parsed()) {
            CountConfig cfg{B, levels, minus_one, search_cap, workers};
            const CountSeries S = count_series(field.field(), cfg);
            if (format == "json") {
                const json echo = {{"a", field.a}, {"b", field.b}, {"B", B}, {"levels", levels},
                                   {"minus_one_generates", minus_one}, {"search_cap", search_cap}};
                out << io::to_json(S, echo).dump() << '\n';
            } else {
                out << io::to_csv(S);
            }
        } else if (count_int->parsed()) {
            const auto counts = count_integer_norms_local(field.field(), B, levels, workers);
            if (format == "json") {
                out << io::to_json(counts).dump() << '\n';
            } else {
                out << "B,count\n";
                for (const auto& c : counts) out << c.bound << ',' << c.count << '\n';
            }
        } else if (fit->parsed()) {
            CountSeries S;
            if (!input.empty()) {
                std::ifstream in(input);
                if (!in) throw DomainError("cannot read " + input);
                S = io::count_series_from_csv(in);
            } else if (!field.a.empty() && !field.b.empty()) {
                S = count_series(field.field(), CountConfig{B, levels, minus_one, 6, workers});
            } else {
                throw ConfigError("fit needs --input or --a/--b");
            }
            const FitResult r = fit_exponent(S, which == "glob" ? FitTarget::Global : FitTarget::Local);
            if (format == "json")
                out << io::to_json(r).dump() << '\n';
            else
                out << "c_hat=" << r.c_hat << " e_hat=" << r.e_hat << " residual=" << r.residual << '\n';
        } else if (self->parsed()) {
            return selftest(out);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return Usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return DomainFailure;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return DomainFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return DomainFailure;
    }
    return Ok;
}

}  // namespace hnp::cli
