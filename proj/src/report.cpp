#include "selecta/report.hpp"

#include <cstdio>

namespace selecta {

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string beta_text(const BetaParams& p) { return "Beta(" + num(p.alpha) + ", " + num(p.beta) + ")"; }

constexpr std::string_view kDecisionRule =
    "Let P_corr be the posterior probability that the response rate of arm A exceeds that of "
    "arm B by more than d, and P_amb the posterior probability that the two rates differ by at "
    "most d. The trial statistic is lambda* = P_corr + rho * P_amb. If lambda* > theta, arm A is "
    "selected for further study on efficacy grounds. If lambda* <= theta, efficacy alone does "
    "not separate the arms and the choice is made on other factors such as safety and cost.";

constexpr std::string_view kProtocol =
    "SAMPLE SIZE AND DECISION RULE\n"
    "\n"
    "Patients will be randomized in equal numbers to arm A ({{arm_a}}) and arm B ({{arm_b}}). "
    "The primary endpoint is binary response. For planning, the response rates are assumed to "
    "be {{pi_tilde_a}} on arm A and {{pi_tilde_b}} on arm B.\n"
    "\n"
    "Prior distributions: {{prior_a}} for the response rate of arm A and {{prior_b}} for arm B.\n"
    "Design parameters: clinically meaningful difference d = {{d}}; ambiguity weight rho = "
    "{{rho}}; design threshold gamma* = {{gamma_star}}; decision threshold theta = {{theta}}.\n"
    "\n"
    "{{sizing_sentence}} {{sizing_method_sentence}} "
    "The trial will enrol {{n_per_group}} patients per group ({{n_total}} in total).\n"
    "\n"
    "Decision rule. {{decision_rule}}\n";

constexpr std::string_view kSap =
    "STATISTICAL ANALYSIS PLAN: PRIMARY ANALYSIS\n"
    "\n"
    "Analysis population: all randomized patients, {{n_per_group}} per group.\n"
    "Endpoint: number of responders in each arm, S_A and S_B.\n"
    "\n"
    "Model. The response rate of arm A has prior {{prior_a}} and that of arm B has prior "
    "{{prior_b}}. With S_i responders among n_i patients the posterior for arm i is "
    "Beta(alpha_i + S_i, beta_i + n_i - S_i), and the two posteriors are independent.\n"
    "\n"
    "Computation. P_corr and P_amb are evaluated by adaptive numerical integration of the "
    "product of one posterior density and the other posterior distribution function, with "
    "d = {{d}}, rho = {{rho}} and theta = {{theta}}.\n"
    "\n"
    "Decision rule. {{decision_rule}}\n"
    "\n"
    "Reporting. P_corr, P_amb, lambda* and both posterior distributions will be reported to two "
    "decimals together with the resulting decision.\n";

constexpr std::string_view kDesignSummary =
    "Design summary ({{method}}): arm A {{prior_a}}, assumed rate {{pi_tilde_a}}; arm B "
    "{{prior_b}}, assumed rate {{pi_tilde_b}}; d = {{d}}, rho = {{rho}}, gamma* = {{gamma_star}}. "
    "Required sample size: {{n_min_text}}. Score at n_hi = {{n_hi}}: {{value_at_n_hi}}.\n";

constexpr std::string_view kAnalysisSummary =
    "Analysis summary: arm A {{s_a}}/{{n_a}} responders, posterior {{post_a}}; arm B "
    "{{s_b}}/{{n_b}} responders, posterior {{post_b}}. P_corr = {{p_correct}}, P_amb = "
    "{{p_ambiguous}}, lambda* = {{lambda_star}} (rho = {{rho}}, theta = {{theta}}, d = {{d}}). "
    "Decision: {{decision}}.\n";

constexpr std::string_view kOcSummary =
    "Operating characteristics{{label_part}}: true rates {{true_pi_a}} (A) and {{true_pi_b}} "
    "(B), priors {{prior_a}} and {{prior_b}}, n = {{n}} per arm, d = {{d}}, rho = {{rho}}, "
    "theta = {{theta}}. Selection of A on efficacy (xi): {{xi_pct}}%. Deferral to other factors "
    "(nu): {{nu_pct}}%. Monte-Carlo SE {{se_pp}} percentage points over {{m}} replicates "
    "(seed {{seed}}).\n";

void check_design(const DesignSubject& s) {
  const auto& r = s.result;
  if (r.method == SizingMethod::Frequentist)
    throw TemplateMismatch("result.method", "a Bayesian sizing result is required");
  if (r.threshold != s.spec.gamma_star || r.n_lo != s.spec.n_lo || r.n_hi != s.spec.n_hi)
    throw TemplateMismatch("result", "was not produced from this design");
  if (!r.n_min && !r.under_lower_bound)
    throw TemplateMismatch("result", "has neither n_min nor the under-lower-bound flag");
}

void check_analysis(const AnalysisSubject& s) {
  const auto& in = s.inputs;
  const auto& r = s.report;
  if (!(r.posterior_a == posterior_update(in.prior_a, in.data_a)) ||
      !(r.posterior_b == posterior_update(in.prior_b, in.data_b)) || r.rho != in.rho ||
      r.theta != in.theta)
    throw TemplateMismatch("report", "was not produced from these inputs");
}

void check_oc(const OcSubject& s) {
  if (s.result.replicates_used != s.scenario.m)
    throw TemplateMismatch("result", "was not produced from this scenario");
}

Values design_values(const DesignSubject& s) {
  const auto& spec = s.spec;
  const auto& r = s.result;
  const int n_group = r.n_min ? *r.n_min : r.n_lo;
  const bool simulated = r.method == SizingMethod::Simulated;
  std::string sizing;
  if (r.n_min) {
    sizing = "The " + std::string(simulated ? "simulated mean score" : "score") +
             " computed at the assumed response rates exceeds gamma* at every sample size from " +
             std::to_string(*r.n_min) + " to " + std::to_string(r.n_hi) + " per group.";
  } else {
    sizing = "The criterion is met at every sample size from the search lower bound " +
             std::to_string(r.n_lo) + " to " + std::to_string(r.n_hi) +
             " per group, so the lower bound is used.";
  }
  const std::string method_sentence =
      simulated ? "Responder counts were simulated from binomial distributions at the assumed "
                  "rates (m = " + std::to_string(spec.m) + " replicates, seed " +
                  std::to_string(spec.seed) + ")."
                : "Responder counts were fixed at the expected number of responders in each arm.";
  const double tail = r.curve.empty() ? 0.0 : r.curve.back().value;
  return {{"arm_a", "experimental"},
          {"arm_b", "comparator"},
          {"pi_tilde_a", num(spec.pi_tilde_a)},
          {"pi_tilde_b", num(spec.pi_tilde_b)},
          {"prior_a", beta_text(spec.prior_a)},
          {"prior_b", beta_text(spec.prior_b)},
          {"d", num(spec.d)},
          {"rho", num(spec.rho)},
          {"gamma_star", num(spec.gamma_star)},
          {"theta", num(spec.theta)},
          {"sizing_sentence", sizing},
          {"sizing_method_sentence", method_sentence},
          {"n_per_group", std::to_string(n_group)},
          {"n_total", std::to_string(2 * n_group)},
          {"decision_rule", std::string(kDecisionRule)},
          {"method", std::string(to_string(r.method))},
          {"n_min_text", r.n_min ? std::to_string(*r.n_min) + " per group"
                                 : "below " + std::to_string(r.n_lo) + " per group"},
          {"n_hi", std::to_string(r.n_hi)},
          {"value_at_n_hi", fixed(tail, 4)}};
}

Values analysis_values(const AnalysisSubject& s) {
  const auto& in = s.inputs;
  const auto& r = s.report;
  return {{"s_a", std::to_string(in.data_a.responders)},
          {"n_a", std::to_string(in.data_a.n)},
          {"s_b", std::to_string(in.data_b.responders)},
          {"n_b", std::to_string(in.data_b.n)},
          {"post_a", beta_text(r.posterior_a)},
          {"post_b", beta_text(r.posterior_b)},
          {"p_correct", fixed(r.p_correct, 2)},
          {"p_ambiguous", fixed(r.p_ambiguous, 2)},
          {"lambda_star", fixed(r.lambda_star, 2)},
          {"rho", num(in.rho)},
          {"theta", num(in.theta)},
          {"d", num(in.d)},
          {"decision", std::string(to_string(r.decision))}};
}

Values oc_values(const OcSubject& s) {
  const auto& sc = s.scenario;
  const auto& r = s.result;
  return {{"label_part", sc.label.empty() ? "" : " for " + sc.label},
          {"true_pi_a", num(sc.true_pi_a)},
          {"true_pi_b", num(sc.true_pi_b)},
          {"prior_a", beta_text(sc.prior_a)},
          {"prior_b", beta_text(sc.prior_b)},
          {"n", std::to_string(sc.n_per_arm)},
          {"d", num(sc.d)},
          {"rho", num(sc.rho)},
          {"theta", num(sc.theta)},
          {"xi_pct", fixed(100.0 * r.xi, 1)},
          {"nu_pct", fixed(100.0 * r.nu, 1)},
          {"se_pp", fixed(100.0 * r.mc_standard_error, 2)},
          {"m", std::to_string(r.replicates_used)},
          {"seed", std::to_string(sc.seed)}};
}

}  // namespace

std::string_view to_string(ReportTemplate t) noexcept {
  switch (t) {
    case ReportTemplate::Protocol: return "protocol";
    case ReportTemplate::Sap: return "sap";
    case ReportTemplate::Summary: return "summary";
  }
  return "unknown";
}

ReportTemplate parse_report_template(std::string_view name) {
  if (name == "protocol") return ReportTemplate::Protocol;
  if (name == "sap") return ReportTemplate::Sap;
  if (name == "summary") return ReportTemplate::Summary;
  throw DomainError("template", "unknown template '" + std::string(name) +
                                    "' (expected protocol, sap or summary)");
}

std::string fill_template(std::string_view text, const Values& values) {
  std::string out;
  out.reserve(text.size() * 2);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw TemplateMismatch("template", "unterminated placeholder");
    out.append(text.substr(pos, open - pos));
    const std::string_view key = text.substr(open + 2, close - open - 2);
    bool found = false;
    for (const auto& [k, v] : values) {
      if (k == key) {
        out += v;
        found = true;
        break;
      }
    }
    if (!found) throw TemplateMismatch("template", "no value for placeholder '" + std::string(key) + "'");
    pos = close + 2;
  }
  return out;
}

std::string generate_report_text(const ReportSubject& subject, ReportTemplate tmpl) {
  if (const auto* d = std::get_if<DesignSubject>(&subject)) {
    check_design(*d);
    const auto values = design_values(*d);
    switch (tmpl) {
      case ReportTemplate::Protocol: return fill_template(kProtocol, values);
      case ReportTemplate::Sap: return fill_template(kSap, values);
      case ReportTemplate::Summary: return fill_template(kDesignSummary, values);
    }
  }
  if (tmpl != ReportTemplate::Summary)
    throw TemplateMismatch("template", std::string(to_string(tmpl)) +
                                           " text needs a sample-size design and its result");
  if (const auto* a = std::get_if<AnalysisSubject>(&subject)) {
    check_analysis(*a);
    return fill_template(kAnalysisSummary, analysis_values(*a));
  }
  const auto& o = std::get<OcSubject>(subject);
  check_oc(o);
  return fill_template(kOcSummary, oc_values(o));
}

}  // namespace selecta
