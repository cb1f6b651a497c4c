#include "hnp/certificate.hpp"

namespace hnp {

PairResolution resolve_pair(const BiquadField& F, const Rational& t, const GlobalConfig& config, bool pair) {
    if (config.caps.empty()) throw ConfigError("at least one certificate cap is required");
    std::vector<Rational> targets{t};
    if (pair) targets.push_back(-t);
    PairResolution out;
    std::int64_t scanned = 0;
    std::uint64_t spent = 0;
    auto record = [&](std::size_t which, NormCertificate cert) {
        (which == 0 ? out.for_t : out.for_minus_t) = std::move(cert);
    };
    for (std::size_t stage = 0; stage < config.caps.size(); ++stage) {
        const std::int64_t cap = config.caps[stage];
        out.cap_used = cap;
        if (scanned < cap && (config.shell_budget == 0 || spent < config.shell_budget)) {
            const std::uint64_t left = config.shell_budget == 0 ? 0 : config.shell_budget - spent;
            auto res = joint_shell_search(F, targets, cap, scanned + 1, left, config.workers);
            spent += res.evaluations;
            scanned = res.shells_scanned;
            if (res.certificate) {
                record(res.target, std::move(*res.certificate));
                return out;
            }
        }
        if (config.use_relations && stage < config.relation_stages.size()) {
            for (std::size_t k = 0; k < targets.size(); ++k) {
                if (auto cert = relation_search(F, targets[k], config.relation_stages[stage])) {
                    record(k, std::move(*cert));
                    return out;
                }
            }
        }
    }
    return out;
}

GlobalDecision decide_global(const BiquadField& F, const Rational& t, const GlobalConfig& config) {
    if (t == 0) throw DomainError("zero is not in the multiplicative group");
    LocalReport report = is_everywhere_local_norm(F, t);
    if (!report.everywhere_local) {
        const std::string v = report.failing_place()->to_string();
        return GlobalNotNorm{std::nullopt, std::move(report), "not a local norm at v = " + v};
    }
    const KnotOrder knot = knot_order(F);
    if (knot.g == 1) {
        GlobalNorm out{std::nullopt, "knot group is trivial, so every everywhere-local norm is a global norm"};
        if (config.witness_for_trivial_knot) out.certificate = resolve_pair(F, t, config, false).for_t;
        return out;
    }
    const bool pairing = config.minus_one_generates && is_everywhere_local_norm(F, -t).everywhere_local;
    const PairResolution res = resolve_pair(F, t, config, pairing);
    if (res.for_t) return GlobalNorm{res.for_t, "certificate found"};
    if (res.for_minus_t) {
        return GlobalNotNorm{res.for_minus_t, std::nullopt,
                             "-t is a global norm; the class of -1 spans the knot group Z/2, so t and -t lie in "
                             "different classes"};
    }
    return GlobalUnknown{res.cap_used, pairing ? "no certificate for t or -t within the caps"
                                               : "no certificate for t within the caps; non-membership is not provable "
                                                 "without the -1 generation hypothesis"};
}

}  // namespace hnp
