#include "hnp/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

namespace hnp::io {

namespace {

LocalKind kind_from_string(const std::string& s) {
    if (s == "split") return LocalKind::Split;
    if (s == "quadratic") return LocalKind::Quadratic;
    if (s == "biquadratic") return LocalKind::Biquadratic;
    throw DomainError("unknown local type '" + s + "'");
}

int g_v_of(LocalKind kind) {
    switch (kind) {
        case LocalKind::Split: return 4;
        case LocalKind::Quadratic: return 2;
        case LocalKind::Biquadratic: return 1;
    }
    return 0;
}

GlobMode glob_mode_from_string(const std::string& s) {
    for (GlobMode m : {GlobMode::HalfRule, GlobMode::TrivialKnot, GlobMode::SearchLowerBound})
        if (s == to_string(m)) return m;
    throw DomainError("unknown glob mode '" + s + "'");
}

std::optional<NormCertificate> optional_certificate(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return certificate_from_json(j.at(key));
}

}  // namespace

std::string rational_string(const Rational& t) { return t.get_str(); }

json to_json(const LocalReport& r) {
    json places = json::array();
    for (const auto& pv : r.places) {
        json p = {{"v", pv.place.to_string()}, {"type", to_string(pv.type.kind)}, {"local_norm", pv.local_norm}};
        if (pv.type.kind == LocalKind::Quadratic) p["d"] = pv.type.d.get_str();
        places.push_back(std::move(p));
    }
    return {{"t", rational_string(r.t)}, {"places", std::move(places)}, {"everywhere_local", r.everywhere_local}};
}

LocalReport local_report_from_json(const json& j) {
    LocalReport r;
    r.t = parse_rational(j.at("t").get<std::string>());
    for (const auto& p : j.at("places")) {
        LocalType type;
        type.kind = kind_from_string(p.at("type").get<std::string>());
        type.g_v = g_v_of(type.kind);
        if (p.contains("d")) type.d = Integer(p.at("d").get<std::string>());
        r.places.push_back({Place::parse(p.at("v").get<std::string>()), type, p.at("local_norm").get<bool>()});
    }
    r.everywhere_local = j.at("everywhere_local").get<bool>();
    return r;
}

json to_json(const KnotOrder& k) {
    json j = {{"g", k.g}, {"justification", k.justification}};
    j["witness"] = k.witness ? json(k.witness->to_string()) : json(nullptr);
    return j;
}

json to_json(const BicyclicKnot& k) {
    json gens = json::array();
    for (const auto& [i, jj] : k.witness_generators) gens.push_back(std::to_string(i) + ":" + std::to_string(jj));
    return {{"g", k.g}, {"witness_index", k.witness_index}, {"witness_generators", gens}, {"indices", k.indices}};
}

json to_json(const NormCertificate& c) {
    json coords = json::array();
    for (const auto& x : c.coords) coords.push_back(rational_string(x));
    return {{"coords", coords}, {"norm", rational_string(c.value)}};
}

NormCertificate certificate_from_json(const json& j) {
    NormCertificate c;
    const auto& coords = j.at("coords");
    if (coords.size() != 4) throw DomainError("certificate needs four coordinates");
    for (std::size_t i = 0; i < 4; ++i) c.coords[i] = parse_rational(coords[i].get<std::string>());
    c.value = parse_rational(j.at("norm").get<std::string>());
    return c;
}

json to_json(const GlobalDecision& d) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            json j;
            if constexpr (std::is_same_v<T, GlobalNorm>) {
                j["decision"] = "norm";
                j["certificate"] = x.certificate ? to_json(*x.certificate) : json(nullptr);
            } else if constexpr (std::is_same_v<T, GlobalNotNorm>) {
                j["decision"] = "not_norm";
                j["partner_certificate"] = x.partner_certificate ? to_json(*x.partner_certificate) : json(nullptr);
                j["local_failure"] = x.local_failure ? to_json(*x.local_failure) : json(nullptr);
            } else {
                j["decision"] = "unknown";
                j["cap"] = x.cap;
            }
            j["justification"] = x.justification;
            return j;
        },
        d);
}

GlobalDecision decision_from_json(const json& j) {
    const auto kind = j.at("decision").get<std::string>();
    const auto why = j.value("justification", std::string{});
    if (kind == "norm") return GlobalNorm{optional_certificate(j, "certificate"), why};
    if (kind == "not_norm") {
        GlobalNotNorm n{optional_certificate(j, "partner_certificate"), std::nullopt, why};
        if (j.contains("local_failure") && !j.at("local_failure").is_null())
            n.local_failure = local_report_from_json(j.at("local_failure"));
        return n;
    }
    if (kind == "unknown") return GlobalUnknown{j.at("cap").get<std::int64_t>(), why};
    throw DomainError("unknown decision '" + kind + "'");
}

std::string to_csv(const CountSeries& S) {
    std::ostringstream out;
    out << "B,n_loc,n_glob,n_ce,ratio_ce_loc\n";
    char ratio[32];
    for (const auto& r : S.rows) {
        std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio_ce_loc());
        out << r.bound << ',' << r.n_loc << ',' << r.n_glob << ',' << r.n_ce << ',' << ratio << '\n';
    }
    return out.str();
}

json to_json(const CountSeries& S, const json& config_echo) {
    json rows = json::array();
    for (const auto& r : S.rows)
        rows.push_back({{"B", r.bound}, {"n_loc", r.n_loc}, {"n_glob", r.n_glob}, {"n_ce", r.n_ce},
                        {"ratio_ce_loc", r.ratio_ce_loc()}});
    json j = {{"rows", rows}, {"glob_mode", to_string(S.glob_mode)}, {"config", config_echo}};
    if (S.glob_mode == GlobMode::SearchLowerBound) {
        j["cap"] = S.cap;
        j["unknowns"] = S.unknowns;
    }
    return j;
}

CountSeries count_series_from_json(const json& j) {
    CountSeries S;
    S.glob_mode = glob_mode_from_string(j.at("glob_mode").get<std::string>());
    for (const auto& r : j.at("rows"))
        S.rows.push_back({r.at("B").get<std::uint64_t>(), r.at("n_loc").get<std::uint64_t>(),
                          r.at("n_glob").get<std::uint64_t>(), r.at("n_ce").get<std::uint64_t>()});
    S.cap = j.value("cap", std::int64_t{0});
    S.unknowns = j.value("unknowns", std::uint64_t{0});
    return S;
}

CountSeries count_series_from_csv(std::istream& in) {
    CountSeries S;
    std::string line;
    if (!std::getline(in, line) || line.rfind("B,n_loc,n_glob,n_ce", 0) != 0)
        throw DomainError("missing CSV header B,n_loc,n_glob,n_ce,...");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        CountRow r;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> r.bound >> c1 >> r.n_loc >> c2 >> r.n_glob >> c3 >> r.n_ce) || c1 != ',' || c2 != ',' || c3 != ',')
            throw DomainError("malformed CSV row '" + line + "'");
        S.rows.push_back(r);
    }
    return S;
}

json to_json(const FitResult& f) { return {{"c_hat", f.c_hat}, {"e_hat", f.e_hat}, {"residual", f.residual}}; }

json to_json(const DensityEstimate& d) {
    return {{"hits", d.hits}, {"total", d.total}, {"estimate", rational_string(d.estimate)}, {"value", d.value()}};
}

json to_json(const std::vector<GridCount>& counts) {
    json rows = json::array();
    for (const auto& c : counts) rows.push_back({{"B", c.bound}, {"count", c.count}});
    return rows;
}

}  // namespace hnp::io
