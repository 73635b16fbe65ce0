#pragma once

// Request-level operations shared by the CLI and the HTTP service. Each takes
// one decoded JSON request object and returns {"input": ..., "result": ...},
// where "input" is the fully defaulted spec that was actually run.

#include <optional>
#include <string>
#include <vector>

#include "selecta/json_io.hpp"
#include "selecta/report.hpp"

namespace selecta::service {

/// DesignSpec fields plus optional "method": "deterministic" | "simulated".
Json sample_size(const Json& request, SizingMethod default_method);

/// DecisionInputs fields.
Json analyze(const Json& request);

/// DesignSpec fields plus "n_from", "n_to" (default: the design's n_lo, n_hi)
/// and optional "method": "deterministic" | "simulated".
Json curve(const Json& request);

/// OcScenario fields.
Json oc(const Json& request);

/// FreqDesign fields plus optional "n". With "n" the result is the evaluation
/// at that n; without it, the sample-size search.
Json freq(const Json& request);

/// {"template": name, "design" | "analysis" | "oc": {...}}. "design" accepts
/// the sample-size request fields (including "method"). Result carries the
/// rendered "text".
Json report(const Json& request);

/// Decoded report subject, exposed so callers can compare against direct
/// library calls.
ReportSubject report_subject(const Json& request);

/// Work estimate for a request, in simulated trial replicates. Deterministic
/// requests cost zero.
double simulated_replicates(const std::string& endpoint, const Json& request);

}  // namespace selecta::service
