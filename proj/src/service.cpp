#include "selecta/service.hpp"

#include <algorithm>

#include "selecta/errors.hpp"

namespace selecta::service {

namespace {

// Removes `key` from `obj` and returns its value, if present.
std::optional<Json> take(Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
  Json v = obj[key];
  obj.erase(key);
  return v;
}

std::string take_string(Json& obj, const char* key) {
  auto v = take(obj, key);
  if (!v) return {};
  if (!v->is_string()) throw ConfigError(key, "expected a string");
  return v->get<std::string>();
}

int take_int(Json& obj, const char* key, int fallback) {
  auto v = take(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(key, "expected an integer");
  return v->get<int>();
}

SizingMethod sizing_method(const std::string& name, SizingMethod fallback) {
  if (name.empty()) return fallback;
  if (name == "deterministic") return SizingMethod::Deterministic;
  if (name == "simulated") return SizingMethod::Simulated;
  throw ConfigError("method", "unknown value '" + name + "' (expected deterministic or simulated)");
}

void require_object(const Json& request) {
  if (!request.is_object()) throw ConfigError("", "request body must be a JSON object");
}

struct SizingRequest {
  DesignSpec spec;
  SizingMethod method;
};

SizingRequest decode_sizing(const Json& request, SizingMethod default_method) {
  require_object(request);
  Json body = request;
  const auto method = sizing_method(take_string(body, "method"), default_method);
  return {decode<DesignSpec>(body), method};
}

SampleSizeResult run_sizing(const SizingRequest& r) {
  return r.method == SizingMethod::Simulated ? min_sample_size_simulated(r.spec)
                                             : min_sample_size_deterministic(r.spec);
}

Json sizing_input(const SizingRequest& r) {
  Json in = to_json(r.spec);
  in["method"] = std::string(to_string(r.method));
  return in;
}

}  // namespace

Json sample_size(const Json& request, SizingMethod default_method) {
  const auto r = decode_sizing(request, default_method);
  return {{"input", sizing_input(r)}, {"result", to_json(run_sizing(r))}};
}

Json analyze(const Json& request) {
  require_object(request);
  const auto in = decode<DecisionInputs>(request);
  return {{"input", to_json(in)}, {"result", to_json(analyze_trial(in))}};
}

Json curve(const Json& request) {
  require_object(request);
  Json body = request;
  const int n_from_raw = take_int(body, "n_from", -1);
  const int n_to_raw = take_int(body, "n_to", -1);
  const auto method = sizing_method(take_string(body, "method"), SizingMethod::Deterministic);
  const auto spec = decode<DesignSpec>(body);
  const int n_from = n_from_raw < 0 ? spec.n_lo : n_from_raw;
  const int n_to = n_to_raw < 0 ? spec.n_hi : n_to_raw;
  const auto pts = lambda_curve(
      spec, n_from, n_to,
      method == SizingMethod::Simulated ? CurveMethod::Simulated : CurveMethod::Deterministic);
  Json in = to_json(spec);
  in["n_from"] = n_from;
  in["n_to"] = n_to;
  in["method"] = std::string(to_string(method));
  return {{"input", in}, {"result", {{"curve", to_json(pts)}}}};
}

Json oc(const Json& request) {
  require_object(request);
  const auto s = decode<OcScenario>(request);
  return {{"input", to_json(s)}, {"result", to_json(estimate_xi(s))}};
}

Json freq(const Json& request) {
  require_object(request);
  Json body = request;
  const auto n = take(body, "n");
  const auto f = decode<FreqDesign>(body);
  Json in = to_json(f);
  if (n) {
    if (!n->is_number_integer()) throw ConfigError("n", "expected an integer");
    f.validate();
    in["n"] = *n;
    return {{"input", in}, {"result", to_json(evaluate_freq(n->get<int>(), f))}};
  }
  return {{"input", in}, {"result", to_json(min_sample_size_freq(f))}};
}

ReportSubject report_subject(const Json& request) {
  require_object(request);
  Json body = request;
  take(body, "template");
  auto design = take(body, "design");
  auto analysis = take(body, "analysis");
  auto oc_req = take(body, "oc");
  if (!body.empty()) throw ConfigError(body.begin().key(), "unknown field");
  const int given = (design ? 1 : 0) + (analysis ? 1 : 0) + (oc_req ? 1 : 0);
  if (given != 1) throw ConfigError("", "exactly one of \"design\", \"analysis\" or \"oc\" is required");
  if (design) {
    const auto r = decode_sizing(*design, SizingMethod::Deterministic);
    return DesignSubject{r.spec, run_sizing(r)};
  }
  if (analysis) {
    const auto in = decode<DecisionInputs>(*analysis, "analysis");
    return AnalysisSubject{in, analyze_trial(in)};
  }
  const auto s = decode<OcScenario>(*oc_req, "oc");
  return OcSubject{s, estimate_xi(s)};
}

Json report(const Json& request) {
  require_object(request);
  if (!request.contains("template") || !request["template"].is_string())
    throw ConfigError("template", "is required (protocol, sap or summary)");
  const auto tmpl = parse_report_template(request["template"].get<std::string>());
  const auto subject = report_subject(request);
  Json in = Json::object();
  in["template"] = std::string(to_string(tmpl));
  if (const auto* d = std::get_if<DesignSubject>(&subject)) {
    in["design"] = to_json(d->spec);
    in["design"]["method"] = std::string(to_string(d->result.method));
  } else if (const auto* a = std::get_if<AnalysisSubject>(&subject)) {
    in["analysis"] = to_json(a->inputs);
  } else {
    in["oc"] = to_json(std::get<OcSubject>(subject).scenario);
  }
  return {{"input", in},
          {"result", {{"template", std::string(to_string(tmpl))},
                      {"text", generate_report_text(subject, tmpl)}}}};
}

double simulated_replicates(const std::string& endpoint, const Json& request) {
  if (!request.is_object()) return 0.0;
  auto num = [&](const Json& obj, const char* key, double fallback) {
    return obj.contains(key) && obj[key].is_number() ? obj[key].get<double>() : fallback;
  };
  auto simulated = [](const Json& obj) {
    return obj.contains("method") && obj["method"] == "simulated";
  };
  const DesignSpec defaults;
  if (endpoint == "oc") return num(request, "m", static_cast<double>(OcScenario{}.m));
  if (endpoint == "sample-size" || endpoint == "curve") {
    if (!simulated(request)) return 0.0;
    const double lo = num(request, endpoint == "curve" ? "n_from" : "n_lo",
                          num(request, "n_lo", defaults.n_lo));
    const double hi = num(request, endpoint == "curve" ? "n_to" : "n_hi",
                          num(request, "n_hi", defaults.n_hi));
    return num(request, "m", static_cast<double>(defaults.m)) * std::max(1.0, hi - lo + 1.0);
  }
  if (endpoint == "report") {
    if (request.contains("oc")) return simulated_replicates("oc", request["oc"]);
    if (request.contains("design")) return simulated_replicates("sample-size", request["design"]);
  }
  return 0.0;
}

}  // namespace selecta::service
