#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "selecta/decision.hpp"
#include "selecta/errors.hpp"
#include "selecta/oc_eval.hpp"
#include "selecta/sample_size.hpp"

namespace selecta {

enum class ReportTemplate { Protocol, Sap, Summary };

std::string_view to_string(ReportTemplate t) noexcept;
ReportTemplate parse_report_template(std::string_view name);

struct DesignSubject {
  DesignSpec spec;
  SampleSizeResult result;
};

struct AnalysisSubject {
  DecisionInputs inputs;
  DecisionReport report;
};

struct OcSubject {
  OcScenario scenario;
  OcResult result;
};

using ReportSubject = std::variant<DesignSubject, AnalysisSubject, OcSubject>;

/// Raised when a template cannot be rendered from the given subject.
class TemplateMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Fills the named template from the subject. Protocol and SAP text need a
/// Bayesian design; the summary template takes any subject. Output depends
/// only on the arguments.
std::string generate_report_text(const ReportSubject& subject, ReportTemplate tmpl);

/// Replaces every {{key}} in `text` from `values`; throws TemplateMismatch if
/// a placeholder has no value.
std::string fill_template(std::string_view text,
                          const std::vector<std::pair<std::string, std::string>>& values);

}  // namespace selecta
