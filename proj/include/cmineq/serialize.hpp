#pragma once

#include <string>

#include "json.hpp"

#include "cmineq/verifier.hpp"

namespace cmineq {

/// The infinities have no JSON literal; they serialize as the strings
/// "inf" and "-inf", finite values as numbers.
nlohmann::json to_json(const ExtendedReal& e);

nlohmann::json to_json(const SandwichResult& r);
nlohmann::json to_json(const GenInequalityResult& r);

nlohmann::json config_json(const TrialCampaignConfig& config);
nlohmann::json summary_json(const CampaignSummary& summary);

/// Full campaign report: {config, trials, summary}. Sandwich campaigns put
/// the sandwich records in "trials"; gen campaigns the gen records.
nlohmann::json report_json(const VerificationReport& report);

nlohmann::json cm_report_json(const CatalogFunction& fn, const CmClassReport& report);
nlohmann::json divdiff_json(const CatalogFunction& fn, const NodeSet& nodes,
                            const DividedDifferenceResult& r);
nlohmann::json mvt_json(const CatalogFunction& fn, const NodeSet& nodes, const MvtResult& r);
nlohmann::json catalog_listing_json();

/// Canonical dump used everywhere JSON leaves the process: 2-space indent,
/// sorted keys (nlohmann's default object ordering), shortest round-trip
/// numbers, trailing newline.
std::string dump_json(const nlohmann::json& j);

/// Shortest round-trip decimal rendering of a double (same rendering JSON
/// output uses); infinities become "inf"/"-inf".
std::string number_string(double v);

std::string report_csv(const VerificationReport& report);
std::string report_human(const VerificationReport& report);
std::string cm_report_human(const CatalogFunction& fn, const CmClassReport& report);

}  // namespace cmineq
