#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hnp/bicyclic.hpp"
#include "hnp/certificate.hpp"
#include "hnp/count.hpp"

namespace hnp::io {

using nlohmann::json;

std::string rational_string(const Rational& t);

json to_json(const LocalReport& r);
LocalReport local_report_from_json(const json& j);

json to_json(const KnotOrder& k);
json to_json(const BicyclicKnot& k);

json to_json(const NormCertificate& c);
NormCertificate certificate_from_json(const json& j);

json to_json(const GlobalDecision& d);
GlobalDecision decision_from_json(const json& j);

// CSV: header "B,n_loc,n_glob,n_ce,ratio_ce_loc", ratio with 6 decimals.
std::string to_csv(const CountSeries& S);
json to_json(const CountSeries& S, const json& config_echo = json::object());
CountSeries count_series_from_json(const json& j);
// Reads the CSV layout back (the ratio column is recomputed, not trusted).
CountSeries count_series_from_csv(std::istream& in);

json to_json(const FitResult& f);
json to_json(const DensityEstimate& d);
json to_json(const std::vector<GridCount>& counts);

}  // namespace hnp::io
