#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "formspan/bounds.hpp"
#include "formspan/counting.hpp"
#include "formspan/enumeration.hpp"
#include "formspan/sampling.hpp"

namespace formspan::report {

using Json = nlohmann::ordered_json;

// rationals are serialized as exact "p/q" strings plus a lossy decimal twin
void put_rational(Json& j, const std::string& key, const Rat& value);
std::string sign_text(Sign s);  // "+", "-", "o"
Sign sign_from_text(const std::string& s);

Json context_json(const SpanContext& ctx);

Json phi_exact_json(const PhiExact& result);
Json phi_estimate_json(const PhiEstimate& est);
Json bound_report_json(const bounds::BoundReport& r);
Json verify_run_json(const bounds::VerifyRun& run);
Json witnesses_json(const std::string& suite, const std::vector<bounds::Witness>& w);
Json double_count_json(const DoubleCountCheck& c);
Json inclusion_exclusion_json(const InclusionExclusionReport& r);
Json table1_json();
Json q2_report_json(const Q2Report& rep);

// RFC-4180: CRLF row endings, quoting only where needed
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

std::string verify_run_csv(const bounds::VerifyRun& run);
std::string table1_csv();
std::string q2_report_csv(const Q2Report& rep);

// write to stdout when path is empty
void emit(const std::string& text, const std::string& path);

}  // namespace formspan::report
