#pragma once

// JSON encoding shared by the CLI, the HTTP service and the bundled configs.
// Objects keep key order (ordered_json) so echoed inputs re-serialize to the
// same bytes. Decoding is strict: unknown keys and wrongly typed values raise
// ConfigError; range checks are left to each type's validate().

#include <string>
#include <vector>

#include <json.hpp>

#include "selecta/decision.hpp"
#include "selecta/freq_sg.hpp"
#include "selecta/oc_eval.hpp"
#include "selecta/sample_size.hpp"

namespace selecta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "selecta/1";

/// Parses text, mapping syntax errors to ConfigError.
Json parse_json_text(const std::string& text);

Json to_json(const BetaParams& p);
Json to_json(const ArmData& a);
Json to_json(const DecisionInputs& in);
Json to_json(const DecisionReport& r);
Json to_json(const DesignSpec& s);
Json to_json(const CurvePoint& p);
Json to_json(const std::vector<CurvePoint>& curve);
Json to_json(const SampleSizeResult& r);
Json to_json(const OcScenario& s);
Json to_json(const OcResult& r);
Json to_json(const OcGridRow& r);
Json to_json(const FreqDesign& f);
Json to_json(const FreqEvaluation& e);

/// Strict decoders. `path` prefixes field names in error messages. Absent
/// optional fields keep the type's defaults.
template <class T>
T decode(const Json& j, const std::string& path = "");

template <> BetaParams decode<BetaParams>(const Json&, const std::string&);
template <> ArmData decode<ArmData>(const Json&, const std::string&);
template <> DecisionInputs decode<DecisionInputs>(const Json&, const std::string&);
template <> DecisionReport decode<DecisionReport>(const Json&, const std::string&);
template <> DesignSpec decode<DesignSpec>(const Json&, const std::string&);
template <> CurvePoint decode<CurvePoint>(const Json&, const std::string&);
template <> SampleSizeResult decode<SampleSizeResult>(const Json&, const std::string&);
template <> OcScenario decode<OcScenario>(const Json&, const std::string&);
template <> OcResult decode<OcResult>(const Json&, const std::string&);
template <> OcGridRow decode<OcGridRow>(const Json&, const std::string&);
template <> FreqDesign decode<FreqDesign>(const Json&, const std::string&);
template <> FreqEvaluation decode<FreqEvaluation>(const Json&, const std::string&);

/// Recursively overlays `patch` onto `base` (objects merge, everything else
/// replaces). Used for "defaults" blocks and --set overrides.
Json merge_objects(Json base, const Json& patch);

/// Expands a grid document into one object per row:
///   {"defaults": {...}, "rows": [{...}, ...], "vary": {"key": [v1, v2], ...}}
/// Each row is defaults overlaid with the row, then crossed with every "vary"
/// key in document order (first key outermost). A document without "rows" is
/// a single row.
std::vector<Json> expand_grid(const Json& doc, const std::string& path = "");

/// Machine-readable error body: {"error": {"type", "message", "fields"}}.
Json error_json(const std::string& type, const std::string& message,
                const std::vector<FieldError>& fields = {});

}  // namespace selecta
