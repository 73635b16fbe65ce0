#include "selecta/api.hpp"

#include <chrono>
#include <cstdio>

#include "selecta/errors.hpp"
#include "selecta/service.hpp"

namespace selecta::api {

namespace {

using Clock = std::chrono::steady_clock;

Json envelope() { return {{"schema_version", kSchemaVersion}}; }

Json error_body(const std::string& type, const std::string& message,
                const std::vector<FieldError>& fields = {}) {
  Json doc = envelope();
  doc.update(error_json(type, message, fields));
  return doc;
}

Json beta_schema() {
  return {{"type", "object"},
          {"required", {"alpha", "beta"}},
          {"properties", {{"alpha", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                          {"beta", {{"type", "number"}, {"exclusiveMinimum", 0}}}}}};
}

Json num(double lo, double hi, double def) {
  return {{"type", "number"}, {"minimum", lo}, {"maximum", hi}, {"default", def}};
}

Json integer(long long lo, long long def) {
  return {{"type", "integer"}, {"minimum", lo}, {"default", def}};
}

Json design_props() {
  const DesignSpec d;
  return {{"prior_a", beta_schema()},
          {"prior_b", beta_schema()},
          {"pi_tilde_a", num(0, 1, d.pi_tilde_a)},
          {"pi_tilde_b", num(0, 1, d.pi_tilde_b)},
          {"d", num(0, 1, d.d)},
          {"rho", num(0, 1, d.rho)},
          {"gamma_star", num(0, 1, d.gamma_star)},
          {"theta", num(0, 1, d.theta)},
          {"n_lo", integer(1, d.n_lo)},
          {"n_hi", integer(1, d.n_hi)},
          {"m", integer(1, d.m)},
          {"seed", integer(0, static_cast<long long>(d.seed))},
          {"rounding", {{"enum", {"half_even", "ceiling"}}, {"default", "half_even"}}},
          {"method", {{"enum", {"deterministic", "simulated"}}, {"default", "deterministic"}}}};
}

Json analysis_props() {
  const Json arm = {{"type", "object"},
                    {"required", {"n", "responders"}},
                    {"properties", {{"n", integer(0, 0)}, {"responders", integer(0, 0)}}}};
  const DecisionInputs in;
  return {{"prior_a", beta_schema()}, {"prior_b", beta_schema()}, {"data_a", arm},
          {"data_b", arm},           {"d", num(0, 1, in.d)},     {"rho", num(0, 1, in.rho)},
          {"theta", num(0, 1, in.theta)}};
}

Json oc_props() {
  const OcScenario s;
  return {{"label", {{"type", "string"}}},
          {"true_pi_a", num(0, 1, s.true_pi_a)},
          {"true_pi_b", num(0, 1, s.true_pi_b)},
          {"prior_a", beta_schema()},
          {"prior_b", beta_schema()},
          {"d", num(0, 1, s.d)},
          {"rho", num(0, 1, s.rho)},
          {"theta", num(0, 1, s.theta)},
          {"n_per_arm", integer(1, s.n_per_arm)},
          {"m", integer(1, s.m)},
          {"seed", integer(0, static_cast<long long>(s.seed))}};
}

Json freq_props() {
  const FreqDesign f;
  return {{"pi_a", num(0, 1, f.pi_a)},
          {"pi_b", num(0, 1, f.pi_b)},
          {"d", num(0, 1, f.d)},
          {"rho", num(0, 1, f.rho)},
          {"gamma", num(0, 1, f.gamma)},
          {"method", {{"enum", {"exact", "normal"}}, {"default", "exact"}}},
          {"n_lo", integer(1, f.n_lo)},
          {"n_hi", integer(1, f.n_hi)},
          {"n", {{"type", "integer"}, {"minimum", 1}}}};
}

Json object_schema(Json props) {
  return {{"type", "object"}, {"additionalProperties", false}, {"properties", std::move(props)}};
}

Json operation(const std::string& summary, Json request) {
  return {{"post",
           {{"summary", summary},
            {"requestBody", {{"content", {{"application/json", {{"schema", std::move(request)}}}}}}},
            {"responses",
             {{"200", {{"description", "result with echoed request"}}},
              {"202", {{"description", "simulation budget exceeded; run through the CLI"}}},
              {"400", {{"description", "malformed body or invalid field values"}}},
              {"422", {{"description", "criterion not attained at n_hi"}}},
              {"500", {{"description", "numerical failure"}}}}}}}};
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& routes() {
  static const std::vector<std::pair<std::string, std::string>> r = {
      {"POST", "/v1/sample-size"}, {"POST", "/v1/analyze"}, {"POST", "/v1/curve"},
      {"POST", "/v1/oc"},          {"POST", "/v1/freq"},    {"POST", "/v1/report"},
      {"GET", "/v1/schema"}};
  return r;
}

std::string ApiResponse::header(const std::string& name) const {
  for (const auto& [k, v] : headers)
    if (k == name) return v;
  return "";
}

Json ApiService::schema() const {
  Json curve = design_props();
  curve["n_from"] = {{"type", "integer"}, {"minimum", 1}};
  curve["n_to"] = {{"type", "integer"}, {"minimum", 1}};
  Json design_req = object_schema(design_props());
  const Json report_req = {
      {"type", "object"},
      {"required", {"template"}},
      {"properties",
       {{"template", {{"enum", {"protocol", "sap", "summary"}}}},
        {"design", design_req},
        {"analysis", object_schema(analysis_props())},
        {"oc", object_schema(oc_props())}}}};
  Json paths = Json::object();
  paths["/v1/sample-size"] = operation("Minimum sample size per group", design_req);
  paths["/v1/analyze"] = operation("Posterior selection probabilities and decision",
                                   object_schema(analysis_props()));
  paths["/v1/curve"] = operation("Score against n", object_schema(curve));
  paths["/v1/oc"] = operation("Operating characteristics by simulation", object_schema(oc_props()));
  paths["/v1/freq"] = operation("Frequentist design: evaluation at n or sample size",
                                object_schema(freq_props()));
  paths["/v1/report"] = operation("Protocol, SAP or summary text", report_req);
  paths["/v1/schema"] = {{"get", {{"summary", "This document"}}}};
  return {{"openapi", "3.0.3"},
          {"info",
           {{"title", "selecta"},
            {"version", kSchemaVersion},
            {"description",
             "Responses wrap results as {schema_version, endpoint, request, input, result}. "
             "Wall time is reported in the X-Wall-Time-Ms header. No authentication."}}},
          {"x-limits",
           {{"max_oc_replicates", limits_.max_oc_replicates},
            {"max_simulated_replicates", limits_.max_simulated_replicates}}},
          {"paths", paths}};
}

ApiResponse ApiService::handle(const std::string& method, const std::string& path,
                               const std::string& body) const {
  const auto start = Clock::now();
  ApiResponse resp;
  Json doc;

  const bool known_path = [&] {
    for (const auto& [m, p] : routes())
      if (p == path) return true;
    return false;
  }();

  if (method == "OPTIONS" && known_path) {
    resp.status = 204;
  } else if (!known_path) {
    resp.status = 404;
    doc = error_body("not_found", "no route for " + path);
  } else {
    std::string allowed;
    for (const auto& [m, p] : routes())
      if (p == path) allowed = m;
    if (method != allowed) {
      resp.status = 405;
      resp.headers.push_back({"Allow", allowed + ", OPTIONS"});
      doc = error_body("method_not_allowed", method + " is not supported on " + path);
    } else if (path == "/v1/schema") {
      doc = schema();
    } else {
      const std::string endpoint = path.substr(4);
      try {
        const Json request = parse_json_text(body);
        const double work = service::simulated_replicates(endpoint, request);
        const double oc_m = endpoint == "oc" ? work : 0.0;
        if (oc_m > static_cast<double>(limits_.max_oc_replicates)) {
          resp.status = 202;
          doc = error_body("too_large",
                           "m exceeds the interactive limit of " +
                               std::to_string(limits_.max_oc_replicates) +
                               "; lower m or run `selecta oc-sim` from the command line");
        } else if (endpoint != "oc" && work > limits_.max_simulated_replicates) {
          resp.status = 202;
          doc = error_body("too_large",
                           "simulation budget exceeded (m times scanned n > " +
                               Json(limits_.max_simulated_replicates).dump() +
                               "); narrow the n range, lower m, or use the command line");
        } else {
          Json out;
          if (endpoint == "sample-size") out = service::sample_size(request, SizingMethod::Deterministic);
          else if (endpoint == "analyze") out = service::analyze(request);
          else if (endpoint == "curve") out = service::curve(request);
          else if (endpoint == "oc") out = service::oc(request);
          else if (endpoint == "freq") out = service::freq(request);
          else out = service::report(request);
          doc = envelope();
          doc["endpoint"] = path;
          doc["request"] = request;
          doc["input"] = out["input"];
          doc["result"] = out["result"];
          if (endpoint == "oc") doc["m_used"] = out["result"]["replicates_used"];
        }
      } catch (const ConfigError& e) {
        resp.status = 400;
        std::vector<FieldError> fields;
        if (!e.field().empty()) fields.push_back({e.field(), e.what()});
        doc = error_body("config_error", e.what(), fields);
      } catch (const NotAttained& e) {
        resp.status = 422;
        doc = error_body("not_attained", e.what());
      } catch (const DomainError& e) {
        resp.status = 400;
        doc = error_body("validation_error", e.what(), e.fields());
      } catch (const NumericError& e) {
        resp.status = 500;
        doc = error_body("numeric_error", e.what());
      } catch (const std::exception& e) {
        resp.status = 500;
        doc = error_body("internal_error", e.what());
      }
    }
  }

  if (!doc.is_null()) {
    resp.body = doc.dump() + "\n";
    resp.headers.push_back({"Content-Type", "application/json"});
  }
  resp.headers.push_back({"Access-Control-Allow-Origin", limits_.cors_origin});
  resp.headers.push_back({"Access-Control-Allow-Methods", "GET, POST, OPTIONS"});
  resp.headers.push_back({"Access-Control-Allow-Headers", "Content-Type"});
  resp.headers.push_back({"Access-Control-Expose-Headers", "X-Wall-Time-Ms"});
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  resp.headers.push_back({"X-Wall-Time-Ms", format_ms(ms)});
  return resp;
}

}  // namespace selecta::api
